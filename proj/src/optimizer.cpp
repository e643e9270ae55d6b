#include "lzsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lzsim/noise.hpp"
#include "lzsim/propagator.hpp"

namespace lz {

namespace {

struct Evaluator {
    const SystemParams& system_template;
    const DecoherenceModel& model;
    const OptimizeConfig& config;
    std::size_t eval_index = 0;
    std::vector<LandscapePoint> points;

    LandscapePoint evaluate(double v) {
        SystemParams system = system_template;
        system.v = v;
        LandscapePoint pt;
        pt.v = v;
        if (const auto* lb = std::get_if<LindbladModel>(&model)) {
            const TimeWindow window = auto_time_window(system, config.tail_tolerance);
            pt.p = evolve_lindblad(system, lb->gamma, window).ground_state_population;
            pt.err = config.lindblad_error_floor;
        } else {
            const auto& noise = std::get<NoiseSpec>(model);
            EnsembleConfig ec = config.ensemble;
            ec.master_seed = split_seed(config.ensemble.master_seed, eval_index);
            ec.tail_tolerance = config.tail_tolerance;
            const EnsembleResult r = run_ensemble(system, noise, ec);
            pt.p = r.success_probability;
            pt.err = r.standard_error;
        }
        ++eval_index;
        points.push_back(pt);
        return pt;
    }
};

bool noise_free(const DecoherenceModel& model) {
    if (const auto* lb = std::get_if<LindbladModel>(&model)) return lb->gamma == 0.0;
    const auto& noise = std::get<NoiseSpec>(model);
    return noise.model == NoiseModel::None || noise.amplitude == 0.0;
}

void attach_analytic(OptimumReport& report, const SystemParams& system,
                     const DecoherenceModel& model) {
    const auto* noise = std::get_if<NoiseSpec>(&model);
    if (!noise || noise->amplitude <= 0.0 || system.delta <= 0.0) return;
    const RegimeReport analytic = predict(*noise, system.delta);
    report.p_failure_analytic = analytic.p_failure;
    if (analytic.v_optimal) {
        report.v_opt_analytic = analytic.v_optimal;
        report.ratio_numeric_to_analytic = report.v_opt_numeric / *analytic.v_optimal;
    }
}

void finish(OptimumReport& report, Evaluator& eval) {
    auto& pts = eval.points;
    const auto best = std::max_element(pts.begin(), pts.end(),
                                       [](const auto& a, const auto& b) { return a.p < b.p; });
    report.v_opt_numeric = best->v;
    report.p_max_numeric = best->p;
    report.p_max_error = best->err;

    double lo = best->v, hi = best->v;
    for (const auto& pt : pts) {
        if (pt.p >= best->p - (pt.err + best->err)) {
            lo = std::min(lo, pt.v);
            hi = std::max(hi, pt.v);
        }
    }
    report.v_plateau_lo = lo;
    report.v_plateau_hi = hi;

    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.v < b.v; });
    report.landscape = pts;
}

}  // namespace

void OptimizeConfig::validate() const {
    if (!(0.0 < v_min && v_min < v_max))
        throw std::invalid_argument("optimize: need 0 < v_min < v_max");
    if (coarse_grid_points < 5)
        throw std::invalid_argument("optimize.coarse_grid_points must be >= 5");
    if (refine_iterations < 0)
        throw std::invalid_argument("optimize.refine_iterations must be >= 0");
    ensemble.validate();
}

OptimumReport find_optimal_sweep(const SystemParams& system_template,
                                 const DecoherenceModel& model, const OptimizeConfig& config) {
    config.validate();

    OptimumReport report;
    Evaluator eval{system_template, model, config, 0, {}};

    if (noise_free(model)) {
        // The closed-system success probability is monotone decreasing in v.
        eval.evaluate(config.v_min);
        report.monotone_regime = true;
        finish(report, eval);
        report.recommendation = "no decoherence: success is monotone in v, sweep as slowly as allowed";
        return report;
    }

    // Coarse log-spaced scan.
    const int n = config.coarse_grid_points;
    const double log_lo = std::log(config.v_min);
    const double log_hi = std::log(config.v_max);
    std::vector<LandscapePoint> coarse;
    coarse.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        coarse.push_back(eval.evaluate(std::exp(log_lo + f * (log_hi - log_lo))));
    }

    const auto best_it = std::max_element(coarse.begin(), coarse.end(),
                                          [](const auto& a, const auto& b) { return a.p < b.p; });
    const auto worst_it = std::min_element(coarse.begin(), coarse.end(),
                                           [](const auto& a, const auto& b) { return a.p < b.p; });
    double mean_err = 0.0;
    for (const auto& pt : coarse) mean_err += pt.err;
    mean_err /= static_cast<double>(n);

    if (best_it->p - worst_it->p <= 2.0 * mean_err) {
        report.resolution_insufficient = true;
        finish(report, eval);
        attach_analytic(report, system_template, model);
        return report;
    }

    // Golden-section refinement on log v around the best coarse point.
    const std::size_t b = static_cast<std::size_t>(best_it - coarse.begin());
    double lo = std::log(coarse[b > 0 ? b - 1 : 0].v);
    double hi = std::log(coarse[std::min<std::size_t>(b + 1, coarse.size() - 1)].v);
    if (lo < hi && config.refine_iterations > 0) {
        constexpr double kInvPhi = 0.6180339887498949;
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        LandscapePoint p1 = eval.evaluate(std::exp(x1));
        LandscapePoint p2 = eval.evaluate(std::exp(x2));
        for (int it = 2; it < config.refine_iterations; ++it) {
            if (p1.p > p2.p) {
                hi = x2;
                x2 = x1;
                p2 = p1;
                x1 = hi - kInvPhi * (hi - lo);
                p1 = eval.evaluate(std::exp(x1));
            } else {
                lo = x1;
                x1 = x2;
                p1 = p2;
                x2 = lo + kInvPhi * (hi - lo);
                p2 = eval.evaluate(std::exp(x2));
            }
        }

        // Statistical noise can break the unimodality assumption; if the
        // refinement never matched the coarse best, fall back to a dense
        // grid on the original bracket.
        const double refined_best =
            std::max_element(eval.points.begin() + n, eval.points.end(),
                             [](const auto& a, const auto& b) { return a.p < b.p; })
                ->p;
        if (refined_best < best_it->p - (best_it->err + mean_err)) {
            const double dlo = std::log(coarse[b > 0 ? b - 1 : 0].v);
            const double dhi = std::log(coarse[std::min<std::size_t>(b + 1, coarse.size() - 1)].v);
            const int dense = std::max(config.refine_iterations, 3);
            for (int i = 0; i < dense; ++i) {
                const double f = (static_cast<double>(i) + 0.5) / static_cast<double>(dense);
                eval.evaluate(std::exp(dlo + f * (dhi - dlo)));
            }
        }
    }

    finish(report, eval);
    attach_analytic(report, system_template, model);
    return report;
}

OptimumReport apply_thermal_floor(OptimumReport report, double delta,
                                  const ThermalParams& thermal) {
    thermal.validate();
    if (!report.p_failure_analytic) return report;
    const double occupation = thermal_occupation(delta, thermal);
    if (*report.p_failure_analytic > occupation) {
        report.thermal_floor_applied = true;
        report.success_ceiling = thermal_floor(delta, thermal);
        report.recommendation =
            "predicted failure exceeds the thermal occupation: sweep slowly to thermal "
            "equilibrium; the success ceiling is the equilibrium value";
    }
    return report;
}

}  // namespace lz
