#include "qwalk/spectral.hpp"

#include <numbers>

#include "qwalk/errors.hpp"

namespace qwalk {

Circuit qft(int n) {
    if (n < 1) throw ArgumentError("qft needs at least one qubit");
    Circuit ck(n, "qft");
    // After this pass qubit q holds the phase 2 pi j / 2^{q+1}; the swaps
    // then put the most-significant output bit on the top wire.
    for (int q = n - 1; q >= 0; --q) {
        ck.add(h(q));
        for (int m = q - 1; m >= 0; --m)
            ck.add(crz(m, q, 2.0 * std::numbers::pi / static_cast<double>(1 << (q - m + 1))));
    }
    for (int q = 0; q < n / 2; ++q) ck.add(swap_gate(q, n - 1 - q));
    return ck;
}

Circuit inverse_qft(int n) {
    Circuit ck = inverse(qft(n));
    ck.set_name("qft-inverse");
    return ck;
}

Circuit controlled_power(const Circuit& unit, const std::vector<int>& unit_qubits, int ctrl,
                         unsigned power_of_two_exponent, int n_total) {
    const Circuit onto = remap(unit, unit_qubits, n_total);
    return controlled(power(onto, 1u << power_of_two_exponent), ctrl);
}

Circuit phase_estimation(const PhaseEstimationSpec& spec) {
    const int t = static_cast<int>(spec.theta_qubits.size());
    if (t < 1) throw ArgumentError("phase estimation needs a theta register");
    if (static_cast<int>(spec.unit_qubits.size()) != spec.unit.n_qubits())
        throw ArgumentError("unit_qubits size must match the unit circuit width");
    std::vector<bool> used(spec.n_total, false);
    for (int q : spec.unit_qubits) {
        if (q < 0 || q >= spec.n_total) throw ArgumentError("unit qubit out of range");
        if (used[q]) throw ArgumentError("unit and theta registers must be disjoint");
        used[q] = true;
    }
    for (int q : spec.theta_qubits) {
        if (q < 0 || q >= spec.n_total) throw ArgumentError("theta qubit out of range");
        if (used[q]) throw ArgumentError("unit and theta registers must be disjoint");
        used[q] = true;
    }

    Circuit ck(spec.n_total, "phase-estimation");
    for (int q : spec.theta_qubits) ck.add(h(q));
    for (int k = 0; k < t; ++k)
        ck.add(controlled_power(spec.unit, spec.unit_qubits, spec.theta_qubits[k],
                                static_cast<unsigned>(k), spec.n_total));
    ck.add(remap(inverse_qft(t), spec.theta_qubits, spec.n_total));
    return ck;
}

}  // namespace qwalk
