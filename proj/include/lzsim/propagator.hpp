#pragma once

#include <array>
#include <complex>
#include <optional>
#include <ostream>

#include "lzsim/model.hpp"
#include "lzsim/noise.hpp"

// Deterministic time evolution of the driven two-level system: pure-state
// Schrodinger propagation under the (possibly noisy) sweep Hamiltonian, and
// density-matrix propagation with a sigma_z dephasing channel.
//
// One step uses the exact 2x2 exponential of the piecewise-constant
// Hamiltonian, so the unitary part preserves norm and trace exactly.

namespace lz {

using complexd = std::complex<double>;

// Amplitudes in the diabatic {|up>, |down>} basis.
struct QuantumState {
    complexd up{0.0, 0.0};
    complexd down{0.0, 0.0};

    double norm_sq() const { return std::norm(up) + std::norm(down); }
};

// 2x2 Hermitian unit-trace matrix, stored as populations plus the
// upper-triangular coherence rho_{up,down}.
struct DensityMatrix {
    double p_up = 0.0;
    double p_down = 0.0;
    complexd coherence{0.0, 0.0};

    double trace() const { return p_up + p_down; }
    static DensityMatrix from_pure(const QuantumState& psi);
};

// H = hx sigma_x + hz sigma_z (real coefficients; the sweep Hamiltonian has
// no sigma_y component).
struct HamiltonianCoeffs {
    double hx = 0.0;
    double hz = 0.0;

    double magnitude() const;  // |eigenvalue| = sqrt(hx^2 + hz^2)
};

// H(t) = -(delta/2) sigma_x - ((v t + xi)/2) sigma_z
HamiltonianCoeffs hamiltonian_coeffs(const SystemParams& system, double t, double xi);
std::array<std::array<complexd, 2>, 2> hamiltonian(const SystemParams& system, double t,
                                                   double xi);

// Population of the instantaneous ground state of the noise-free
// Hamiltonian at time t. Throws std::domain_error when the Hamiltonian is
// degenerate there (delta = 0 and v t = 0).
double adiabatic_ground_population(const QuantumState& psi, const SystemParams& system,
                                   double t);
double adiabatic_ground_population(const DensityMatrix& rho, const SystemParams& system,
                                   double t);

struct EvolutionResult {
    double ground_state_population = 0.0;  // at t_end, noise-free adiabatic basis
    std::size_t step_count = 0;
    double max_norm_drift = 0.0;  // |norm - 1| (pure) or |trace - 1| (Lindblad)
    std::optional<QuantumState> final_state;
    std::optional<DensityMatrix> final_density;
};

struct TimeWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;

    std::size_t step_count() const;
};

struct GridControl {
    double max_h_dt = 0.05;       // dt * max|H| bound
    double tau_fraction = 0.1;    // dt <= tau_fraction * tau when noise is present
    std::size_t max_steps = 100'000'000;
};

// Symmetric window with |v t_edge| >= max(20 delta, 20 sqrt(v)), widened for
// tail tolerances below 1e-3, and dt satisfying the GridControl bounds at
// the window edge. Throws when the resulting step count exceeds
// control.max_steps.
TimeWindow auto_time_window(const SystemParams& system, double tail_tolerance = 1e-3,
                            std::optional<double> noise_tau = {},
                            const GridControl& control = {});

// Optional time-series export: columns (t, p_ground, p_excited, drift).
struct TimeSeriesWriter {
    std::ostream* out = nullptr;
    std::size_t stride = 1;
};

// Schrodinger propagation from the instantaneous ground state at t_start.
// When a noise trace is given it must be sampled on the integration grid
// (same t_start, same dt, at least one sample per step); the sample is held
// constant across its step. Throws std::runtime_error if the norm drifts
// by more than 1e-6, std::invalid_argument if dt violates the step control.
EvolutionResult evolve_pure(const SystemParams& system, const NoiseTrace* noise,
                            const TimeWindow& window, const GridControl& control = {},
                            const TimeSeriesWriter& series = {});

// Lindblad propagation with dephasing generator
//   d rho/dt = -i [H(t), rho] + (gamma/2)(sigma_z rho sigma_z - rho),
// realized as a Strang split of the exact unitary and the exact dephasing
// map; the diabatic coherence decays at rate gamma. Starts from the
// instantaneous ground state at t_start unless an initial state is given.
EvolutionResult evolve_lindblad(const SystemParams& system, double gamma,
                                const TimeWindow& window, const GridControl& control = {},
                                const TimeSeriesWriter& series = {},
                                const DensityMatrix* initial = nullptr);

}  // namespace lz
