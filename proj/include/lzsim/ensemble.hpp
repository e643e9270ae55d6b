#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lzsim/model.hpp"
#include "lzsim/propagator.hpp"

// Monte Carlo trajectory averaging: many noisy pure-state runs reduced into
// a success probability with a standard error. Results are bit-identical
// for a fixed (system, noise, config) regardless of thread count:
// trajectory i always uses split_seed(master_seed, i), and the reduction
// sums in trajectory-index order.

namespace lz {

struct EnsembleConfig {
    std::size_t n_trajectories = 1000;
    std::uint64_t master_seed = 1;
    std::optional<double> target_standard_error;  // adaptive stop, whole batches
    std::size_t max_trajectories = 0;             // 0 means n_trajectories
    int threads = 1;                              // speed only, never results
    double tail_tolerance = 1e-3;

    void validate() const;
};

struct EnsembleResult {
    double success_probability = 0.0;
    double standard_error = 0.0;
    std::size_t n_used = 0;
    std::vector<std::uint64_t> trajectory_seeds;
};

EnsembleResult run_ensemble(const SystemParams& system, const NoiseSpec& noise,
                            const EnsembleConfig& config);

struct CurvePoint {
    double v = 0.0;
    EnsembleResult result;
};

// One ensemble per grid point; the system template supplies delta and the
// window rule, each point overrides v.
std::vector<CurvePoint> success_curve(const SystemParams& system_template,
                                      const NoiseSpec& noise, const std::vector<double>& v_grid,
                                      const EnsembleConfig& config);

}  // namespace lz
