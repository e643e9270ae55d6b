#include "lzsim/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace lz {

namespace {

constexpr double kNormDriftLimit = 1e-6;
constexpr double kNegativityLimit = 1e-6;

// Real unit eigenvector of hx sigma_x + hz sigma_z for eigenvalue -r,
// using whichever closed form is numerically stable for the sign of hz.
struct GroundVector {
    double up;
    double down;
};

GroundVector ground_vector(const HamiltonianCoeffs& h) {
    const double r = h.magnitude();
    if (r <= 0.0) throw std::domain_error("degenerate Hamiltonian: adiabatic basis undefined");
    double gu, gd;
    if (h.hz >= 0.0) {
        gu = -h.hx;
        gd = h.hz + r;
    } else {
        gu = h.hz - r;
        gd = h.hx;
    }
    const double n = std::sqrt(gu * gu + gd * gd);
    return {gu / n, gd / n};
}

void check_step_control(const SystemParams& system, const TimeWindow& window,
                        const GridControl& control, const NoiseTrace* noise) {
    const double t_far = std::max(std::abs(window.t_start), std::abs(window.t_end));
    const double h_max = hamiltonian_coeffs(system, t_far, 0.0).magnitude();
    double dt_limit = (h_max > 0.0) ? control.max_h_dt / h_max
                                    : std::numeric_limits<double>::infinity();
    if (noise && noise->spec.model != NoiseModel::None)
        dt_limit = std::min(dt_limit, control.tau_fraction * noise->spec.tau);
    if (window.dt > dt_limit * (1.0 + 1e-9)) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "dt = %.6g violates step control; use dt <= %.6g", window.dt, dt_limit);
        throw std::invalid_argument(msg);
    }
}

void check_noise_grid(const NoiseTrace* noise, const TimeWindow& window) {
    if (!noise) return;
    const std::size_t steps = window.step_count();
    if (std::abs(noise->grid.t_start - window.t_start) > 1e-9 ||
        std::abs(noise->grid.dt - window.dt) > 1e-12 || noise->grid.n_points < steps) {
        throw std::invalid_argument("noise trace grid does not match the integration grid");
    }
}

}  // namespace

DensityMatrix DensityMatrix::from_pure(const QuantumState& psi) {
    return {std::norm(psi.up), std::norm(psi.down), psi.up * std::conj(psi.down)};
}

double HamiltonianCoeffs::magnitude() const { return std::hypot(hx, hz); }

HamiltonianCoeffs hamiltonian_coeffs(const SystemParams& system, double t, double xi) {
    return {-0.5 * system.delta, -0.5 * (system.v * t + xi)};
}

std::array<std::array<complexd, 2>, 2> hamiltonian(const SystemParams& system, double t,
                                                   double xi) {
    const auto h = hamiltonian_coeffs(system, t, xi);
    return {{{complexd(h.hz, 0.0), complexd(h.hx, 0.0)},
             {complexd(h.hx, 0.0), complexd(-h.hz, 0.0)}}};
}

double adiabatic_ground_population(const QuantumState& psi, const SystemParams& system,
                                   double t) {
    const auto g = ground_vector(hamiltonian_coeffs(system, t, 0.0));
    const complexd overlap = g.up * psi.up + g.down * psi.down;
    const double n = psi.norm_sq();
    if (n <= 0.0) throw std::domain_error("zero-norm state");
    return std::clamp(std::norm(overlap) / n, 0.0, 1.0);
}

double adiabatic_ground_population(const DensityMatrix& rho, const SystemParams& system,
                                   double t) {
    const auto g = ground_vector(hamiltonian_coeffs(system, t, 0.0));
    const double p = g.up * g.up * rho.p_up + g.down * g.down * rho.p_down +
                     2.0 * g.up * g.down * rho.coherence.real();
    const double tr = rho.trace();
    if (tr <= 0.0) throw std::domain_error("zero-trace density matrix");
    return std::clamp(p / tr, 0.0, 1.0);
}

std::size_t TimeWindow::step_count() const {
    if (!(dt > 0.0) || !(t_end > t_start)) throw std::invalid_argument("invalid time window");
    return static_cast<std::size_t>(std::llround((t_end - t_start) / dt));
}

TimeWindow auto_time_window(const SystemParams& system, double tail_tolerance,
                            std::optional<double> noise_tau, const GridControl& control) {
    if (!(system.v > 0.0)) throw std::invalid_argument("system.v must be > 0");
    if (!(system.delta > 0.0)) throw std::invalid_argument("auto window needs delta > 0");
    if (!(tail_tolerance > 0.0)) throw std::invalid_argument("tail_tolerance must be > 0");

    // Tighter tail tolerances widen the edge; the default 1e-3 maps to the
    // base factor 20.
    const double widen = std::max(1.0, std::sqrt(1e-3 / tail_tolerance));
    const double edge_bias = 20.0 * widen * std::max(system.delta, std::sqrt(system.v));
    const double t_edge = edge_bias / system.v;

    const double h_edge = hamiltonian_coeffs(system, t_edge, 0.0).magnitude();
    double dt = control.max_h_dt / h_edge;
    if (noise_tau) {
        if (!(*noise_tau > 0.0)) throw std::invalid_argument("noise tau must be > 0");
        dt = std::min(dt, control.tau_fraction * *noise_tau);
    }

    const double span = 2.0 * t_edge;
    const double steps_exact = std::ceil(span / dt);
    if (steps_exact > static_cast<double>(control.max_steps)) {
        throw std::invalid_argument(
            "auto_time_window: step count " + std::to_string(steps_exact) +
            " exceeds the configured maximum; use a coarser tail tolerance");
    }
    const auto steps = static_cast<std::size_t>(steps_exact);
    dt = span / static_cast<double>(steps);  // exact fit
    return {-t_edge, t_edge, dt};
}

EvolutionResult evolve_pure(const SystemParams& system, const NoiseTrace* noise,
                            const TimeWindow& window, const GridControl& control,
                            const TimeSeriesWriter& series) {
    check_step_control(system, window, control, noise);
    check_noise_grid(noise, window);

    const std::size_t steps = window.step_count();
    const double dt = window.dt;

    const auto g0 = ground_vector(hamiltonian_coeffs(system, window.t_start, 0.0));
    QuantumState psi{complexd(g0.up, 0.0), complexd(g0.down, 0.0)};

    double max_drift = 0.0;
    char row[128];
    for (std::size_t k = 0; k < steps; ++k) {
        const double t_mid = window.t_start + (static_cast<double>(k) + 0.5) * dt;
        const double xi = noise ? noise->values[k] : 0.0;
        const auto h = hamiltonian_coeffs(system, t_mid, xi);
        const double r = h.magnitude();
        const double theta = r * dt;
        const double c = std::cos(theta);
        const double s = (r > 0.0) ? std::sin(theta) / r : dt;

        // exp(-i H dt) psi with H = hx sigma_x + hz sigma_z
        const complexd up = psi.up;
        const complexd down = psi.down;
        psi.up = c * up - complexd(0.0, s) * (h.hz * up + h.hx * down);
        psi.down = c * down - complexd(0.0, s) * (h.hx * up - h.hz * down);

        const double drift = std::abs(std::sqrt(psi.norm_sq()) - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > kNormDriftLimit)
            throw std::runtime_error("evolve_pure: norm drift exceeded 1e-6");

        if (series.out && (k % std::max<std::size_t>(series.stride, 1) == 0 || k + 1 == steps)) {
            const double t = window.t_start + static_cast<double>(k + 1) * dt;
            const double pg = adiabatic_ground_population(psi, system, t);
            std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g\n", t, pg, 1.0 - pg, drift);
            *series.out << row;
        }
    }

    EvolutionResult result;
    result.ground_state_population = adiabatic_ground_population(psi, system, window.t_end);
    result.step_count = steps;
    result.max_norm_drift = max_drift;
    result.final_state = psi;
    return result;
}

EvolutionResult evolve_lindblad(const SystemParams& system, double gamma,
                                const TimeWindow& window, const GridControl& control,
                                const TimeSeriesWriter& series, const DensityMatrix* initial) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("dephasing rate must be >= 0");
    check_step_control(system, window, control, nullptr);

    const std::size_t steps = window.step_count();
    const double dt = window.dt;
    const double half_dephase = std::exp(-0.5 * gamma * dt);

    DensityMatrix rho;
    if (initial) {
        rho = *initial;
        if (std::abs(rho.trace() - 1.0) > 1e-9)
            throw std::invalid_argument("initial density matrix must have unit trace");
    } else {
        const auto g0 = ground_vector(hamiltonian_coeffs(system, window.t_start, 0.0));
        rho = {g0.up * g0.up, g0.down * g0.down, complexd(g0.up * g0.down, 0.0)};
    }

    double max_drift = 0.0;
    char row[128];
    for (std::size_t k = 0; k < steps; ++k) {
        const double t_mid = window.t_start + (static_cast<double>(k) + 0.5) * dt;
        const auto h = hamiltonian_coeffs(system, t_mid, 0.0);
        const double r = h.magnitude();
        const double theta = r * dt;
        const double c = std::cos(theta);
        const double s = (r > 0.0) ? std::sin(theta) / r : dt;

        // Strang split: half dephasing, exact unitary, half dephasing.
        rho.coherence *= half_dephase;

        const complexd u00(c, -s * h.hz);
        const complexd u01(0.0, -s * h.hx);
        const complexd u11(c, s * h.hz);
        const complexd q = rho.coherence;
        const complexd qc = std::conj(q);

        // rho' = U rho U^dagger, reassembled in Hermitian storage
        const complexd a00 = u00 * rho.p_up + u01 * qc;
        const complexd a01 = u00 * q + u01 * rho.p_down;
        const complexd a10 = u01 * rho.p_up + u11 * qc;
        const complexd a11 = u01 * q + u11 * rho.p_down;

        const double p_up = (a00 * std::conj(u00) + a01 * std::conj(u01)).real();
        const double p_down = (a10 * std::conj(u01) + a11 * std::conj(u11)).real();
        complexd coh = a00 * std::conj(u01) + a01 * std::conj(u11);

        coh *= half_dephase;
        rho = {p_up, p_down, coh};

        const double drift = std::abs(rho.trace() - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > kNormDriftLimit)
            throw std::runtime_error("evolve_lindblad: trace drift exceeded 1e-6");

        const double half_gap = 0.5 * (rho.p_up - rho.p_down);
        const double disc = std::sqrt(half_gap * half_gap + std::norm(rho.coherence));
        const double lambda_min = 0.5 * rho.trace() - disc;
        if (lambda_min < -kNegativityLimit)
            throw std::runtime_error("evolve_lindblad: density matrix lost positivity");

        if (series.out && (k % std::max<std::size_t>(series.stride, 1) == 0 || k + 1 == steps)) {
            const double t = window.t_start + static_cast<double>(k + 1) * dt;
            const double pg = adiabatic_ground_population(rho, system, t);
            std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g\n", t, pg, 1.0 - pg, drift);
            *series.out << row;
        }
    }

    EvolutionResult result;
    result.ground_state_population = adiabatic_ground_population(rho, system, window.t_end);
    result.step_count = steps;
    result.max_norm_drift = max_drift;
    result.final_density = rho;
    return result;
}

}  // namespace lz
