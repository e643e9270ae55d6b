#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lzsim/ensemble.hpp"
#include "lzsim/model.hpp"

// Numerical sweep-rate optimization: coarse log-spaced scan plus
// golden-section refinement on log v, compared against the analytic
// optimum where the noise quadrant defines one.

namespace lz {

struct LindbladModel {
    double gamma = 0.0;
};

using DecoherenceModel = std::variant<LindbladModel, NoiseSpec>;

struct OptimizeConfig {
    double v_min = 0.0;
    double v_max = 0.0;
    int coarse_grid_points = 9;   // log-spaced, >= 5
    int refine_iterations = 10;
    EnsembleConfig ensemble;      // per-point settings for noise models
    double tail_tolerance = 1e-3;
    double lindblad_error_floor = 1e-4;  // stands in for the integration tolerance

    void validate() const;
};

struct LandscapePoint {
    double v = 0.0;
    double p = 0.0;
    double err = 0.0;
};

struct OptimumReport {
    double v_opt_numeric = 0.0;
    double p_max_numeric = 0.0;
    double p_max_error = 0.0;
    // v values whose success probability lies within one combined standard
    // error of the maximum; the statistical uncertainty on v_opt_numeric.
    double v_plateau_lo = 0.0;
    double v_plateau_hi = 0.0;
    std::optional<double> v_opt_analytic;
    std::optional<double> ratio_numeric_to_analytic;
    std::optional<double> p_failure_analytic;
    bool monotone_regime = false;
    bool resolution_insufficient = false;
    bool thermal_floor_applied = false;
    std::optional<double> success_ceiling;
    std::optional<std::string> recommendation;
    std::vector<LandscapePoint> landscape;
};

OptimumReport find_optimal_sweep(const SystemParams& system_template,
                                 const DecoherenceModel& model, const OptimizeConfig& config);

// Applies the slow-sweep thermal rule: when the analytic failure estimate
// exceeds the thermal excited-state occupation, the best attainable success
// is the equilibrium value 1/(1 + exp(-delta/k_B T)), reached by a slow
// sweep rather than at the numeric optimum.
OptimumReport apply_thermal_floor(OptimumReport report, double delta,
                                  const ThermalParams& thermal);

}  // namespace lz
