#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lzsim/optimizer.hpp"

using namespace lz;

namespace {

SystemParams make_system(double delta) {
    SystemParams s;
    s.delta = delta;
    return s;
}

}  // namespace

TEST_CASE("no decoherence is flagged as the monotone regime") {
    OptimizeConfig config;
    config.v_min = 0.1;
    config.v_max = 10.0;
    const OptimumReport r = find_optimal_sweep(make_system(1.0), LindbladModel{0.0}, config);
    CHECK(r.monotone_regime);
    CHECK(r.v_opt_numeric == config.v_min);
    CHECK(r.p_max_numeric == doctest::Approx(lz_success_probability(1.0, 0.1)).epsilon(0.01));

    NoiseSpec none;
    const OptimumReport r2 = find_optimal_sweep(make_system(1.0), none, config);
    CHECK(r2.monotone_regime);
    CHECK(r2.v_opt_numeric == config.v_min);
}

TEST_CASE("intermediate dephasing has an interior maximum") {
    OptimizeConfig config;
    config.v_min = 0.01;
    config.v_max = 10.0;
    config.coarse_grid_points = 11;
    config.refine_iterations = 8;
    const double gamma = 1.0 / 20.0;
    const OptimumReport r = find_optimal_sweep(make_system(1.0), LindbladModel{gamma}, config);

    CHECK_FALSE(r.monotone_regime);
    CHECK_FALSE(r.resolution_insufficient);
    CHECK(r.p_max_numeric < 1.0);
    CHECK(r.v_opt_numeric > config.v_min);
    CHECK(r.v_opt_numeric < config.v_max);

    // strictly better than the slow-sweep plateau at v_min
    const double p_slow = r.landscape.front().p;
    CHECK(r.p_max_numeric > p_slow + 0.01);

    // local-maximum contract: the log-grid neighbors in the landscape are
    // lower by more than one combined error
    const auto& pts = r.landscape;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].v == r.v_opt_numeric) {
            if (i > 0) CHECK(pts[i - 1].p < r.p_max_numeric);
            if (i + 1 < pts.size()) CHECK(pts[i + 1].p < r.p_max_numeric);
        }
    }
}

TEST_CASE("refinement stays inside the coarse bracket") {
    OptimizeConfig config;
    config.v_min = 0.01;
    config.v_max = 10.0;
    config.coarse_grid_points = 9;
    config.refine_iterations = 10;
    const OptimumReport r = find_optimal_sweep(make_system(1.0), LindbladModel{0.05}, config);
    for (const auto& pt : r.landscape) {
        CHECK(pt.v >= config.v_min - 1e-12);
        CHECK(pt.v <= config.v_max + 1e-12);
    }
}

TEST_CASE("flat landscapes are reported as unresolved") {
    // strong dephasing saturates p at 0.5 over a slow-sweep-only range
    OptimizeConfig config;
    config.v_min = 0.002;
    config.v_max = 0.01;
    config.coarse_grid_points = 5;
    config.refine_iterations = 4;
    config.lindblad_error_floor = 5e-3;
    const OptimumReport r = find_optimal_sweep(make_system(1.0), LindbladModel{10.0}, config);
    CHECK(r.resolution_insufficient);
}

TEST_CASE("ensemble-backed optimization is deterministic and compares to the estimate") {
    NoiseSpec noise;
    noise.model = NoiseModel::OrnsteinUhlenbeck;
    noise.amplitude = 0.2;
    noise.tau = 0.1;  // omega_max = 10

    OptimizeConfig config;
    config.v_min = 0.05;
    config.v_max = 2.0;
    config.coarse_grid_points = 7;
    config.refine_iterations = 4;
    config.ensemble.n_trajectories = 400;
    config.ensemble.master_seed = 31;

    const OptimumReport a = find_optimal_sweep(make_system(1.0), noise, config);
    const OptimumReport b = find_optimal_sweep(make_system(1.0), noise, config);
    CHECK(a.v_opt_numeric == b.v_opt_numeric);
    CHECK(a.p_max_numeric == b.p_max_numeric);

    REQUIRE(a.v_opt_analytic.has_value());
    CHECK(*a.v_opt_analytic == doctest::Approx(1.0 / std::log(250.0)).epsilon(1e-9));
    REQUIRE(a.ratio_numeric_to_analytic.has_value());
    CHECK(*a.ratio_numeric_to_analytic ==
          doctest::Approx(a.v_opt_numeric / *a.v_opt_analytic).epsilon(1e-12));
    CHECK(a.v_plateau_lo <= a.v_opt_numeric);
    CHECK(a.v_plateau_hi >= a.v_opt_numeric);
}

TEST_CASE("thermal floor rule switches exactly at the occupation boundary") {
    const ThermalParams thermal{0.5};  // occupation = 0.11920

    OptimumReport report;
    report.v_opt_numeric = 0.2;
    report.p_max_numeric = 0.99;

    // below: p_failure = 1e-3 -> unchanged
    report.p_failure_analytic = 1e-3;
    OptimumReport below = apply_thermal_floor(report, 1.0, thermal);
    CHECK_FALSE(below.thermal_floor_applied);
    CHECK_FALSE(below.success_ceiling.has_value());

    // above: p_failure = 0.3 -> slow-sweep recommendation with the ceiling
    report.p_failure_analytic = 0.3;
    OptimumReport above = apply_thermal_floor(report, 1.0, thermal);
    CHECK(above.thermal_floor_applied);
    REQUIRE(above.success_ceiling.has_value());
    CHECK(*above.success_ceiling == doctest::Approx(0.880797077977882444).epsilon(1e-12));
    CHECK(above.recommendation.has_value());

    // cold limit: the occupation vanishes, so any failure estimate binds and
    // the ceiling approaches one
    report.p_failure_analytic = 1e-3;
    const OptimumReport cold = apply_thermal_floor(report, 1.0, ThermalParams{0.05});
    CHECK(cold.thermal_floor_applied);
    REQUIRE(cold.success_ceiling.has_value());
    CHECK(*cold.success_ceiling > 0.999999);

    // no analytic estimate available -> unchanged
    OptimumReport blank;
    const OptimumReport untouched = apply_thermal_floor(blank, 1.0, thermal);
    CHECK_FALSE(untouched.thermal_floor_applied);
}

TEST_CASE("optimal sweep rate trends downward as the amplitude shrinks") {
    // within-error-bars version of the logarithmic trend; full statistics in
    // the acceptance suite
    OptimizeConfig config;
    config.v_min = 0.05;
    config.v_max = 1.0;
    config.coarse_grid_points = 6;
    config.refine_iterations = 4;
    config.ensemble.n_trajectories = 500;
    config.ensemble.master_seed = 37;

    NoiseSpec strong;
    strong.model = NoiseModel::OrnsteinUhlenbeck;
    strong.amplitude = 0.3;
    strong.tau = 0.1;
    NoiseSpec weak = strong;
    weak.amplitude = 0.1;

    const OptimumReport r_strong = find_optimal_sweep(make_system(1.0), strong, config);
    const OptimumReport r_weak = find_optimal_sweep(make_system(1.0), weak, config);
    // the weak-noise optimum's plateau must not sit strictly above the
    // strong-noise one
    CHECK(r_weak.v_plateau_lo <= r_strong.v_plateau_hi + 1e-12);
}

TEST_CASE("config validation") {
    OptimizeConfig config;
    config.v_min = 1.0;
    config.v_max = 0.5;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.v_max = 2.0;
    config.coarse_grid_points = 3;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
