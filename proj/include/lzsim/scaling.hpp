#pragma once

#include <ostream>
#include <vector>

// Many-qubit aggregation: M independent per-qubit noise channels add in
// quadrature to an effective amplitude sqrt(M) * delta, and the resulting
// environment-driven excitation estimate sets the tolerable per-qubit
// noise level. All estimates here are order-of-magnitude; the excitation
// probability in particular is an optimistic lower bound.

namespace lz {

struct ScalingScenario {
    double delta = 1.0;               // gap at the M-qubit crossing
    double tau = 1.0;                 // noise correlation time
    double per_qubit_amplitude = 0.0; // delta_q, per-qubit noise amplitude
    int m_qubits = 1;
    double margin = 10.0;             // strength of the "much smaller than" criterion

    void validate() const;
};

// sqrt(M) * delta_per_qubit; throws std::domain_error for m < 1.
double aggregate_amplitude(double delta_per_qubit, int m);

// exp(-pi Delta^2 tau / (2 sqrt(M) delta_q)), the per-crossing excitation
// estimate for the aggregated noise signal.
double m_qubit_excitation(const ScalingScenario& scenario);

// The per-qubit amplitude satisfying delta_q << Delta^2 tau / sqrt(M) at
// the configured margin: Delta^2 tau / (sqrt(M) * margin).
double tolerable_noise_bound(double delta, double tau, int m, double margin);

struct ScalingRow {
    int m = 1;
    double agg_amplitude = 0.0;
    double p_excite = 0.0;
    double bound = 0.0;
    bool pass = false;  // per-qubit amplitude within the tolerable bound
};

std::vector<ScalingRow> scaling_table(const ScalingScenario& base,
                                      const std::vector<int>& m_values);

// Columns: m, agg_amplitude, p_excite_eq_est, delta_bound, pass
void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows);

}  // namespace lz
