#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "lzsim/model.hpp"

// Discrete-time classical noise traces xi(t) with prescribed amplitude A
// and correlation time tau. Traces are immutable after construction and
// safe to share across threads.

namespace lz {

struct TimeGrid {
    double t_start = 0.0;
    double dt = 0.0;
    std::size_t n_points = 0;  // number of samples, one per integrator step

    double time(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
    void validate() const;
};

struct NoiseTrace {
    TimeGrid grid;
    std::vector<double> values;
    NoiseSpec spec;
};

struct TraceStats {
    double mean = 0.0;
    double rms = 0.0;  // about the mean
    std::optional<double> autocorr_time;  // 1/e crossing of the empirical autocorrelation
};

// Counter-based seed split: independent streams for (master, index) pairs.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// Stationary Gaussian OU process, exact one-step discretization:
//   x_{k+1} = x_k e^{-dt/tau} + A sqrt(1 - e^{-2 dt/tau}) eta_k,
// x_0 drawn from the stationary distribution. Autocorrelation A^2 e^{-|s|/tau}.
NoiseTrace generate_ou(const NoiseSpec& spec, const TimeGrid& grid);
NoiseTrace generate_ou(const NoiseSpec& spec, const TimeGrid& grid, std::uint64_t seed);

// Two-state process at mean_offset +/- A, Poisson switching at rate 1/(2 tau),
// so the autocorrelation is also A^2 e^{-|s|/tau}.
NoiseTrace generate_telegraph(const NoiseSpec& spec, const TimeGrid& grid);
NoiseTrace generate_telegraph(const NoiseSpec& spec, const TimeGrid& grid, std::uint64_t seed);

// Pointwise sum of spec.channels independent traces of amplitude
// per_channel_amplitude; channel i uses split_seed(seed, i). For OU channels
// the aggregate stationary RMS is sqrt(M) * per_channel_amplitude.
NoiseTrace generate_multichannel(const NoiseSpec& spec, double per_channel_amplitude,
                                 const TimeGrid& grid);
NoiseTrace generate_multichannel(const NoiseSpec& spec, double per_channel_amplitude,
                                 const TimeGrid& grid, std::uint64_t seed);

// Dispatch on spec.model and spec.channels. Model None yields all zeros
// (plus mean_offset).
NoiseTrace generate_trace(const NoiseSpec& spec, const TimeGrid& grid, std::uint64_t seed);

// Empirical mean, RMS about the mean, and 1/e autocorrelation time.
// autocorr_time is empty for traces shorter than 100 samples or when the
// trace is (numerically) constant.
TraceStats trace_stats(const NoiseTrace& trace);

// Debug export, columns "t,xi" with a header line.
void write_trace_csv(std::ostream& out, const NoiseTrace& trace);

}  // namespace lz
