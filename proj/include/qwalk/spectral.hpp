#pragma once

#include <vector>

#include "qwalk/circuit.hpp"

namespace qwalk {

// Quantum Fourier transform on n qubits, final swaps included:
// matrix_of(qft(n))[k][j] = e^{2 pi i jk / 2^n} / sqrt(2^n).
Circuit qft(int n);
Circuit inverse_qft(int n);

// power(unit, 2^k), rewired onto `unit_qubits` inside a register of
// `n_total` qubits, with `ctrl` added to every gate. Powers are realized by
// gate-list repetition.
Circuit controlled_power(const Circuit& unit, const std::vector<int>& unit_qubits, int ctrl,
                         unsigned power_of_two_exponent, int n_total);

// Phase estimation of `unit` (acting on unit_qubits) into the theta
// register. Fed an eigenvector with eigenvalue e^{2 pi i m / 2^t}, the theta
// register ends in basis state m, bit b of m on theta_qubits[b] (so
// theta_qubits[t-1] carries the most-significant phase bit).
struct PhaseEstimationSpec {
    Circuit unit;
    std::vector<int> unit_qubits;
    std::vector<int> theta_qubits;
    int n_total = 0;
};

Circuit phase_estimation(const PhaseEstimationSpec& spec);

}  // namespace qwalk
