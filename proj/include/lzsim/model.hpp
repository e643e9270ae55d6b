#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

// Closed-form Landau-Zener results and the analytic noise-regime
// estimators. Everything here is a pure function; ħ = 1 throughout.
//
// The regime estimators are order-of-magnitude: "~" relations are
// implemented as equalities with unit prefactors, so treat their outputs
// as estimates, not calibrated predictions.

namespace lz {

struct SystemParams {
    double delta = 1.0;    // gap parameter: tunnelling matrix element is delta/2
    double v = 1.0;        // bias sweep rate, energy^2 per unit time
    double t_start = 0.0;  // simulation window; t = 0 at the degeneracy point
    double t_end = 0.0;

    void validate() const;
};

enum class NoiseModel { None, OrnsteinUhlenbeck, Telegraph };

struct NoiseSpec {
    NoiseModel model = NoiseModel::None;
    double amplitude = 0.0;    // A: RMS deviation from the mean
    double tau = 1.0;          // correlation time
    double mean_offset = 0.0;
    int channels = 1;          // M independent channels, summed
    std::uint64_t master_seed = 0;

    // omega_max * tau == 1 by construction.
    double omega_max() const { return 1.0 / tau; }

    void validate() const;
};

enum class RegimeQuadrant {
    LowAmpShortCorr,
    LowAmpLongCorr,
    HighAmpLongCorr,
    HighAmpShortCorr,
};

const char* to_string(RegimeQuadrant q);

struct ThermalParams {
    double k_b_t = 0.0;  // temperature in energy units

    void validate() const;
};

// Analytic predictions for one noise quadrant. Fields that do not apply
// to the classified quadrant stay empty.
struct RegimeReport {
    RegimeQuadrant quadrant;
    std::optional<double> excitation_rate;   // ground -> excited rate
    std::optional<double> v_optimal;         // low-amplitude quadrants only
    std::optional<double> p_failure;         // low-amplitude quadrants only
    std::optional<double> p_noise;           // noise-induced excitation at the supplied v
    std::optional<int> photon_order;         // n, long-correlation only
    std::optional<double> v_env;             // high-amplitude quadrants only
    std::optional<double> p_env_lz;
    std::optional<double> crossing_count;    // A/(v tau), needs a supplied v
    std::optional<bool> env_effect_negligible;
    std::optional<double> thermal_floor;
    bool clamped = false;                    // set when any probability was clipped to [0,1]
    std::optional<std::string> diagnostic;
};

// P = 1 - exp(-pi delta^2 / 2v). Throws std::domain_error for v <= 0.
double lz_success_probability(double delta, double v);

// Largest integer strictly smaller than x (so int_strictly_below(3.0) == 2).
long long int_strictly_below(double x);

// Low amplitude iff A < delta; short correlation iff omega_max > delta.
// Boundaries go to HighAmp / LongCorr. Throws for delta <= 0.
RegimeQuadrant classify_regime(const NoiseSpec& noise, double delta);

RegimeReport predict_low_amp_short_corr(const NoiseSpec& noise, double delta,
                                        std::optional<double> v = {});
RegimeReport predict_low_amp_long_corr(const NoiseSpec& noise, double delta);
RegimeReport predict_high_amp(const NoiseSpec& noise, double delta,
                              std::optional<double> v = {},
                              double negligible_threshold = 10.0);

// Dispatches on classify_regime and, when thermal parameters are given,
// attaches the thermal floor.
RegimeReport predict(const NoiseSpec& noise, double delta,
                     std::optional<double> v = {},
                     std::optional<ThermalParams> thermal = {},
                     double negligible_threshold = 10.0);

// Smallest photon order compatible with temperature: Int(delta/k_B T),
// floored at 1.
int n_min_thermal(double delta, const ThermalParams& thermal);

// Excited-state occupation 1/(1 + exp(delta/k_B T)).
double thermal_occupation(double delta, const ThermalParams& thermal);

// Slow-sweep success ceiling 1/(1 + exp(-delta/k_B T)) = 1 - thermal_occupation.
double thermal_floor(double delta, const ThermalParams& thermal);

}  // namespace lz
