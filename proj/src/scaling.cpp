#include "lzsim/scaling.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lz {

void ScalingScenario::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("scaling.delta must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("scaling.tau must be > 0");
    if (!(per_qubit_amplitude >= 0.0))
        throw std::invalid_argument("scaling.per_qubit_amplitude must be >= 0");
    if (m_qubits < 1) throw std::invalid_argument("scaling.m_qubits must be >= 1");
    if (!(margin > 0.0)) throw std::invalid_argument("scaling.margin must be > 0");
}

double aggregate_amplitude(double delta_per_qubit, int m) {
    if (m < 1) throw std::domain_error("qubit count must be >= 1");
    return std::sqrt(static_cast<double>(m)) * delta_per_qubit;
}

double m_qubit_excitation(const ScalingScenario& scenario) {
    scenario.validate();
    const double agg = aggregate_amplitude(scenario.per_qubit_amplitude, scenario.m_qubits);
    if (agg == 0.0) return 0.0;
    return std::exp(-M_PI * scenario.delta * scenario.delta * scenario.tau / (2.0 * agg));
}

double tolerable_noise_bound(double delta, double tau, int m, double margin) {
    if (m < 1) throw std::domain_error("qubit count must be >= 1");
    if (!(margin > 0.0)) throw std::domain_error("margin must be > 0");
    return delta * delta * tau / (std::sqrt(static_cast<double>(m)) * margin);
}

std::vector<ScalingRow> scaling_table(const ScalingScenario& base,
                                      const std::vector<int>& m_values) {
    base.validate();
    if (m_values.empty()) throw std::invalid_argument("scaling table needs at least one M");

    std::vector<ScalingRow> rows;
    rows.reserve(m_values.size());
    for (int m : m_values) {
        ScalingScenario s = base;
        s.m_qubits = m;
        ScalingRow row;
        row.m = m;
        row.agg_amplitude = aggregate_amplitude(s.per_qubit_amplitude, m);
        row.p_excite = m_qubit_excitation(s);
        row.bound = tolerable_noise_bound(s.delta, s.tau, m, s.margin);
        row.pass = s.per_qubit_amplitude <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
    out << "m,agg_amplitude,p_excite,delta_bound,pass\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%d\n", r.m, r.agg_amplitude,
                      r.p_excite, r.bound, r.pass ? 1 : 0);
        out << buf;
    }
}

}  // namespace lz
