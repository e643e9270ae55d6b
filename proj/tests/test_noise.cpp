#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lzsim/noise.hpp"

using namespace lz;

namespace {

NoiseSpec ou_spec(double amplitude, double tau, std::uint64_t seed = 1) {
    NoiseSpec n;
    n.model = NoiseModel::OrnsteinUhlenbeck;
    n.amplitude = amplitude;
    n.tau = tau;
    n.master_seed = seed;
    return n;
}

double autocorr_at_lag(const std::vector<double>& x, std::size_t lag) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double c0 = 0.0, cl = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) c0 += (x[k] - mean) * (x[k] - mean);
    for (std::size_t k = 0; k + lag < x.size(); ++k)
        cl += (x[k] - mean) * (x[k + lag] - mean);
    return (cl / static_cast<double>(x.size() - lag)) / (c0 / static_cast<double>(x.size()));
}

}  // namespace

TEST_CASE("OU with zero amplitude is the constant mean") {
    NoiseSpec spec = ou_spec(0.0, 1.0);
    spec.mean_offset = 0.7;
    const NoiseTrace t = generate_ou(spec, {0.0, 0.1, 1000});
    for (double v : t.values) CHECK(v == 0.7);
}

TEST_CASE("OU long-trace moments match the stationary law") {
    const TimeGrid grid{0.0, 0.1, 1'000'000};
    const NoiseTrace t = generate_ou(ou_spec(1.0, 1.0), grid);
    const TraceStats s = trace_stats(t);
    CHECK(std::abs(s.mean) < 0.01);
    CHECK(s.rms == doctest::Approx(1.0).epsilon(0.01));
    // autocorrelation at lag 1.0 (10 steps) is e^-1
    CHECK(std::abs(autocorr_at_lag(t.values, 10) - std::exp(-1.0)) < 0.02);
}

TEST_CASE("OU is stationary: first and second half variances agree") {
    const TimeGrid grid{0.0, 0.1, 400'000};
    const NoiseTrace t = generate_ou(ou_spec(1.0, 1.0, 5), grid);
    auto var = [](auto begin, auto end) {
        double mean = 0.0;
        const double n = static_cast<double>(end - begin);
        for (auto it = begin; it != end; ++it) mean += *it;
        mean /= n;
        double ss = 0.0;
        for (auto it = begin; it != end; ++it) ss += (*it - mean) * (*it - mean);
        return ss / n;
    };
    const auto mid = t.values.begin() + static_cast<long>(t.values.size() / 2);
    const double v1 = var(t.values.begin(), mid);
    const double v2 = var(mid, t.values.end());
    CHECK(v1 == doctest::Approx(v2).epsilon(0.05));
}

TEST_CASE("traces are reproducible bit for bit") {
    const TimeGrid grid{-3.0, 0.05, 5000};
    const NoiseSpec spec = ou_spec(0.8, 0.3, 99);
    const NoiseTrace a = generate_ou(spec, grid);
    const NoiseTrace b = generate_ou(spec, grid);
    CHECK(a.values == b.values);
    NoiseSpec tele = spec;
    tele.model = NoiseModel::Telegraph;
    CHECK(generate_telegraph(tele, grid).values == generate_telegraph(tele, grid).values);
    CHECK(generate_ou(spec, grid, 123).values != a.values);
}

TEST_CASE("telegraph takes exactly two values") {
    NoiseSpec spec = ou_spec(1.0, 1.0);
    spec.model = NoiseModel::Telegraph;
    spec.mean_offset = 0.25;
    const NoiseTrace t = generate_telegraph(spec, {0.0, 0.05, 20000});
    for (double v : t.values) CHECK((v == 1.25 || v == -0.75));
}

TEST_CASE("telegraph switch rate matches 1/(2 tau)") {
    NoiseSpec spec = ou_spec(1.0, 1.0, 11);
    spec.model = NoiseModel::Telegraph;
    const TimeGrid grid{0.0, 0.01, 1'000'000};
    const NoiseTrace t = generate_telegraph(spec, grid);
    std::size_t switches = 0;
    for (std::size_t k = 1; k < t.values.size(); ++k)
        if (t.values[k] != t.values[k - 1]) ++switches;
    const double total_time = grid.dt * static_cast<double>(grid.n_points - 1);
    // raw event rate: flips per unit time; a step can hide an even number of
    // events, a 0.5% correction at dt = 0.01, tau = 1
    CHECK(static_cast<double>(switches) / total_time == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("telegraph with zero amplitude is constant") {
    NoiseSpec spec = ou_spec(0.0, 1.0);
    spec.model = NoiseModel::Telegraph;
    spec.mean_offset = -0.3;
    for (double v : generate_telegraph(spec, {0.0, 0.1, 500}).values) CHECK(v == -0.3);
}

TEST_CASE("multichannel aggregation follows the sqrt(M) law") {
    const TimeGrid grid{0.0, 0.1, 1'000'000};
    for (int m : {4, 16, 64}) {
        NoiseSpec spec = ou_spec(0.0, 1.0, 1234);
        spec.channels = m;
        const NoiseTrace t = generate_multichannel(spec, 1.0, grid);
        const TraceStats s = trace_stats(t);
        CHECK(s.rms == doctest::Approx(std::sqrt(static_cast<double>(m))).epsilon(0.05));
    }
}

TEST_CASE("single channel multichannel reduces to plain OU") {
    const TimeGrid grid{0.0, 0.1, 2000};
    NoiseSpec spec = ou_spec(0.0, 1.0, 77);
    spec.channels = 1;
    const NoiseTrace sum = generate_multichannel(spec, 0.9, grid);
    NoiseSpec single = ou_spec(0.9, 1.0, split_seed(77, 0));
    const NoiseTrace one = generate_ou(single, grid, split_seed(77, 0));
    CHECK(sum.values == one.values);
}

TEST_CASE("trace_stats basics") {
    const TimeGrid grid{0.0, 0.1, 500};
    NoiseTrace constant{grid, std::vector<double>(500, 3.25), {}};
    const TraceStats s = trace_stats(constant);
    CHECK(s.mean == doctest::Approx(3.25));
    CHECK(s.rms == 0.0);
    CHECK_FALSE(s.autocorr_time.has_value());
}

TEST_CASE("trace_stats recovers the OU correlation time") {
    const TimeGrid grid{0.0, 0.1, 1'000'000};
    const NoiseTrace t = generate_ou(ou_spec(1.0, 2.0, 3), grid);
    const TraceStats s = trace_stats(t);
    REQUIRE(s.autocorr_time.has_value());
    CHECK(*s.autocorr_time == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("trace_stats on an alternating trace reports below one step") {
    const TimeGrid grid{0.0, 0.1, 1000};
    std::vector<double> values(1000);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = (k % 2 == 0) ? 1.0 : -1.0;
    const TraceStats s = trace_stats({grid, values, {}});
    REQUIRE(s.autocorr_time.has_value());
    CHECK(*s.autocorr_time < grid.dt);
}

TEST_CASE("trace_stats omits autocorr for short traces") {
    const TimeGrid grid{0.0, 0.1, 50};
    const NoiseTrace t = generate_ou(ou_spec(1.0, 1.0), grid);
    CHECK_FALSE(trace_stats(t).autocorr_time.has_value());
}

TEST_CASE("OU power spectrum is flat below the knee and rolls off above it") {
    const TimeGrid grid{0.0, 0.05, 400'000};
    const double tau = 1.0;
    const NoiseTrace t = generate_ou(ou_spec(1.0, tau, 21), grid);

    // Bartlett-averaged DFT power at selected angular frequencies: single
    // periodogram bins have O(100%) scatter, so average over segments.
    const std::size_t seg_len = 5000;
    const std::size_t n_segs = t.values.size() / seg_len;
    auto power_at = [&](double omega) {
        double total = 0.0;
        for (std::size_t s = 0; s < n_segs; ++s) {
            double re = 0.0, im = 0.0;
            for (std::size_t k = 0; k < seg_len; ++k) {
                const double phase = omega * grid.dt * static_cast<double>(k);
                const double x = t.values[s * seg_len + k];
                re += x * std::cos(phase);
                im += x * std::sin(phase);
            }
            total += (re * re + im * im) / static_cast<double>(seg_len);
        }
        return total / static_cast<double>(n_segs);
    };

    const double plateau = 0.5 * (power_at(0.1 / tau) + power_at(0.2 / tau));
    // knee: first probed frequency where power drops below half the plateau
    double knee = 0.0;
    for (double omega = 0.3; omega <= 16.0; omega *= 1.2) {
        if (power_at(omega / tau) < 0.5 * plateau) {
            knee = omega / tau;
            break;
        }
    }
    REQUIRE(knee > 0.0);
    // Lorentzian half-power point sits exactly at 1/tau
    CHECK(knee >= 0.5 / tau);
    CHECK(knee <= 2.0 / tau);
}

TEST_CASE("trace CSV export") {
    const TimeGrid grid{0.0, 0.5, 3};
    const NoiseTrace t{grid, {1.0, -2.0, 0.5}, {}};
    std::ostringstream out;
    write_trace_csv(out, t);
    CHECK(out.str() == "t,xi\n0,1\n0.5,-2\n1,0.5\n");
}

TEST_CASE("domain errors") {
    CHECK_THROWS(generate_ou(ou_spec(1.0, 1.0), {0.0, 0.0, 100}));
    CHECK_THROWS(generate_ou(ou_spec(1.0, 1.0), {0.0, -0.1, 100}));
    NoiseSpec bad = ou_spec(1.0, 1.0);
    bad.channels = 0;
    CHECK_THROWS(generate_multichannel(bad, 1.0, {0.0, 0.1, 100}));
}
