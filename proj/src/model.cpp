#include "lzsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lz {

namespace {

double clamp01(double p, bool& clamped) {
    if (p < 0.0) {
        clamped = true;
        return 0.0;
    }
    if (p > 1.0) {
        clamped = true;
        return 1.0;
    }
    return p;
}

}  // namespace

void SystemParams::validate() const {
    if (!(delta >= 0.0)) throw std::invalid_argument("system.delta must be >= 0");
    if (!(v > 0.0)) throw std::invalid_argument("system.v must be > 0");
    if (!(t_start < 0.0 && 0.0 < t_end))
        throw std::invalid_argument("system window must satisfy t_start < 0 < t_end");
}

void NoiseSpec::validate() const {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("noise.amplitude must be >= 0");
    if (!(tau > 0.0)) throw std::invalid_argument("noise.tau must be > 0");
    if (channels < 1) throw std::invalid_argument("noise.channels must be >= 1");
}

void ThermalParams::validate() const {
    if (!(k_b_t > 0.0)) throw std::invalid_argument("thermal.k_b_t must be > 0");
}

const char* to_string(RegimeQuadrant q) {
    switch (q) {
        case RegimeQuadrant::LowAmpShortCorr: return "low-amplitude/short-correlation";
        case RegimeQuadrant::LowAmpLongCorr: return "low-amplitude/long-correlation";
        case RegimeQuadrant::HighAmpLongCorr: return "high-amplitude/long-correlation";
        case RegimeQuadrant::HighAmpShortCorr: return "high-amplitude/short-correlation";
    }
    return "?";
}

double lz_success_probability(double delta, double v) {
    if (!(v > 0.0)) throw std::domain_error("sweep rate must be > 0");
    return 1.0 - std::exp(-M_PI * delta * delta / (2.0 * v));
}

long long int_strictly_below(double x) {
    double f = std::floor(x);
    if (f == x) f -= 1.0;
    return static_cast<long long>(f);
}

RegimeQuadrant classify_regime(const NoiseSpec& noise, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("regime classification needs delta > 0");
    const bool low_amp = noise.amplitude < delta;     // A = delta -> high amplitude
    const bool short_corr = noise.omega_max() > delta;  // omega_max = delta -> long correlation
    if (low_amp) {
        return short_corr ? RegimeQuadrant::LowAmpShortCorr : RegimeQuadrant::LowAmpLongCorr;
    }
    return short_corr ? RegimeQuadrant::HighAmpShortCorr : RegimeQuadrant::HighAmpLongCorr;
}

RegimeReport predict_low_amp_short_corr(const NoiseSpec& noise, double delta,
                                        std::optional<double> v) {
    const double a = noise.amplitude;
    const double wmax = noise.omega_max();

    RegimeReport r;
    r.quadrant = RegimeQuadrant::LowAmpShortCorr;
    r.excitation_rate = a * a / wmax;
    r.p_failure = clamp01(a * a / (wmax * delta), r.clamped);

    const double log_arg = wmax * delta / (a * a);  // +inf when a == 0
    if (log_arg > 1.0) {
        if (std::isfinite(log_arg)) r.v_optimal = delta * delta / std::log(log_arg);
        // a == 0: no interior optimum exists, leave v_optimal empty
    } else {
        r.diagnostic = "v_optimal outside validity range (omega_max*delta <= A^2)";
    }

    if (v) {
        if (!(*v > 0.0)) throw std::domain_error("sweep rate must be > 0");
        r.p_noise = clamp01(a * a * delta / (wmax * *v), r.clamped);
    }
    return r;
}

RegimeReport predict_low_amp_long_corr(const NoiseSpec& noise, double delta) {
    const double a = noise.amplitude;
    const double wmax = noise.omega_max();

    RegimeReport r;
    r.quadrant = RegimeQuadrant::LowAmpLongCorr;

    // n-photon process: n = Int(delta/omega_max) + 1
    const long long n = int_strictly_below(delta / wmax) + 1;
    r.photon_order = static_cast<int>(std::max<long long>(n, 1));
    const double np = static_cast<double>(*r.photon_order);

    const double suppression = (a > 0.0) ? std::pow(a / delta, 2.0 * np - 1.0) : 0.0;
    r.excitation_rate = (a * a / wmax) * suppression;
    r.p_failure = clamp01((a * a / (wmax * delta)) * suppression, r.clamped);

    const double log_arg =
        (a > 0.0) ? wmax * std::pow(delta, 2.0 * np) / std::pow(a, 2.0 * np + 1.0)
                  : std::numeric_limits<double>::infinity();
    if (log_arg > 1.0) {
        if (std::isfinite(log_arg)) r.v_optimal = delta * delta / std::log(log_arg);
    } else {
        r.diagnostic = "v_optimal outside validity range (log argument <= 1)";
    }
    return r;
}

RegimeReport predict_high_amp(const NoiseSpec& noise, double delta,
                              std::optional<double> v, double negligible_threshold) {
    const double a = noise.amplitude;
    const double tau = noise.tau;

    RegimeReport r;
    r.quadrant = classify_regime(noise, delta);
    r.v_env = a * noise.omega_max();
    const double exponent = M_PI * delta * delta * tau / (2.0 * a);
    r.p_env_lz = clamp01(std::exp(-exponent), r.clamped);
    r.env_effect_negligible = exponent > negligible_threshold;
    if (v) {
        if (!(*v > 0.0)) throw std::domain_error("sweep rate must be > 0");
        r.crossing_count = a / (*v * tau);
    }
    return r;
}

RegimeReport predict(const NoiseSpec& noise, double delta, std::optional<double> v,
                     std::optional<ThermalParams> thermal, double negligible_threshold) {
    RegimeReport r;
    switch (classify_regime(noise, delta)) {
        case RegimeQuadrant::LowAmpShortCorr:
            r = predict_low_amp_short_corr(noise, delta, v);
            break;
        case RegimeQuadrant::LowAmpLongCorr:
            r = predict_low_amp_long_corr(noise, delta);
            break;
        default:
            r = predict_high_amp(noise, delta, v, negligible_threshold);
            break;
    }
    if (thermal) {
        thermal->validate();
        r.thermal_floor = thermal_floor(delta, *thermal);
    }
    return r;
}

int n_min_thermal(double delta, const ThermalParams& thermal) {
    thermal.validate();
    const long long n = int_strictly_below(delta / thermal.k_b_t);
    return static_cast<int>(std::max<long long>(n, 1));
}

double thermal_occupation(double delta, const ThermalParams& thermal) {
    thermal.validate();
    return 1.0 / (1.0 + std::exp(delta / thermal.k_b_t));
}

double thermal_floor(double delta, const ThermalParams& thermal) {
    thermal.validate();
    return 1.0 / (1.0 + std::exp(-delta / thermal.k_b_t));
}

}  // namespace lz
