#include "lzsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace lz {

void TimeGrid::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("grid.dt must be > 0");
    if (n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!std::isfinite(t_start)) throw std::invalid_argument("grid.t_start must be finite");
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer over a Weyl-offset counter
    std::uint64_t z = master + index * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

NoiseTrace generate_ou(const NoiseSpec& spec, const TimeGrid& grid) {
    return generate_ou(spec, grid, spec.master_seed);
}

NoiseTrace generate_ou(const NoiseSpec& spec, const TimeGrid& grid, std::uint64_t seed) {
    spec.validate();
    grid.validate();

    NoiseTrace trace{grid, std::vector<double>(grid.n_points), spec};
    const double a = spec.amplitude;
    if (a == 0.0) {
        for (auto& x : trace.values) x = spec.mean_offset;
        return trace;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const double decay = std::exp(-grid.dt / spec.tau);
    const double kick = a * std::sqrt(1.0 - decay * decay);

    double x = a * normal(rng);  // stationary start
    trace.values[0] = x + spec.mean_offset;
    for (std::size_t k = 1; k < grid.n_points; ++k) {
        x = x * decay + kick * normal(rng);
        trace.values[k] = x + spec.mean_offset;
    }
    return trace;
}

NoiseTrace generate_telegraph(const NoiseSpec& spec, const TimeGrid& grid) {
    return generate_telegraph(spec, grid, spec.master_seed);
}

NoiseTrace generate_telegraph(const NoiseSpec& spec, const TimeGrid& grid, std::uint64_t seed) {
    spec.validate();
    grid.validate();

    NoiseTrace trace{grid, std::vector<double>(grid.n_points), spec};
    const double a = spec.amplitude;
    if (a == 0.0) {
        for (auto& x : trace.values) x = spec.mean_offset;
        return trace;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // Probability of an odd number of switch events (rate 1/(2 tau)) in dt.
    const double flip_prob = 0.5 * (1.0 - std::exp(-grid.dt / spec.tau));

    double s = (uni(rng) < 0.5) ? 1.0 : -1.0;
    trace.values[0] = spec.mean_offset + a * s;
    for (std::size_t k = 1; k < grid.n_points; ++k) {
        if (uni(rng) < flip_prob) s = -s;
        trace.values[k] = spec.mean_offset + a * s;
    }
    return trace;
}

NoiseTrace generate_multichannel(const NoiseSpec& spec, double per_channel_amplitude,
                                 const TimeGrid& grid) {
    return generate_multichannel(spec, per_channel_amplitude, grid, spec.master_seed);
}

NoiseTrace generate_multichannel(const NoiseSpec& spec, double per_channel_amplitude,
                                 const TimeGrid& grid, std::uint64_t seed) {
    spec.validate();
    grid.validate();
    if (spec.channels < 1) throw std::domain_error("channel count must be >= 1");

    NoiseSpec channel_spec = spec;
    channel_spec.amplitude = per_channel_amplitude;
    channel_spec.channels = 1;
    channel_spec.mean_offset = 0.0;

    NoiseTrace sum{grid, std::vector<double>(grid.n_points, spec.mean_offset), spec};
    for (int c = 0; c < spec.channels; ++c) {
        const std::uint64_t channel_seed = split_seed(seed, static_cast<std::uint64_t>(c));
        NoiseTrace one = (spec.model == NoiseModel::Telegraph)
                             ? generate_telegraph(channel_spec, grid, channel_seed)
                             : generate_ou(channel_spec, grid, channel_seed);
        for (std::size_t k = 0; k < grid.n_points; ++k) sum.values[k] += one.values[k];
    }
    return sum;
}

NoiseTrace generate_trace(const NoiseSpec& spec, const TimeGrid& grid, std::uint64_t seed) {
    if (spec.model == NoiseModel::None) {
        grid.validate();
        return NoiseTrace{grid, std::vector<double>(grid.n_points, spec.mean_offset), spec};
    }
    if (spec.channels > 1) return generate_multichannel(spec, spec.amplitude, grid, seed);
    return (spec.model == NoiseModel::Telegraph) ? generate_telegraph(spec, grid, seed)
                                                 : generate_ou(spec, grid, seed);
}

TraceStats trace_stats(const NoiseTrace& trace) {
    const auto& x = trace.values;
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("trace too short for statistics");

    TraceStats s;
    double sum = 0.0;
    for (double v : x) sum += v;
    s.mean = sum / static_cast<double>(n);

    double var = 0.0;
    for (double v : x) var += (v - s.mean) * (v - s.mean);
    var /= static_cast<double>(n);
    s.rms = std::sqrt(var);

    if (n < 100 || var <= 0.0) return s;  // autocorrelation not estimable

    const double inv_e = std::exp(-1.0);
    const std::size_t max_lag = std::min<std::size_t>(n / 4, 20000);
    double prev = 1.0;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0.0;
        for (std::size_t k = 0; k + lag < n; ++k)
            c += (x[k] - s.mean) * (x[k + lag] - s.mean);
        c /= (static_cast<double>(n - lag) * var);
        if (c < inv_e) {
            // linear interpolation between the bracketing lags
            const double frac = (prev - inv_e) / (prev - c);
            s.autocorr_time = (static_cast<double>(lag - 1) + frac) * trace.grid.dt;
            return s;
        }
        prev = c;
    }
    return s;  // never crossed 1/e within the search range
}

void write_trace_csv(std::ostream& out, const NoiseTrace& trace) {
    out << "t,xi\n";
    char buf[64];
    for (std::size_t k = 0; k < trace.values.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", trace.grid.time(k), trace.values[k]);
        out << buf;
    }
}

}  // namespace lz
