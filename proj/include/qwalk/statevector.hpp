#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qwalk/matrix.hpp"

namespace qwalk {

// Qubit b is the b-th bit of the amplitude index (qubit 0 = least
// significant). Text labels are rendered most-significant bit first, so the
// label "1011" names basis index 0b1011 with qubit 3 reading 1.
inline constexpr int kMaxQubits = 24;

struct ControlBit {
    int qubit;
    bool value;  // false = act when the control reads |0>
};

struct CountsHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::size_t bits = 0;
};

std::string bit_label(std::uint64_t value, std::size_t width);
std::uint64_t parse_bit_label(const std::string& label);  // throws ParseError

class StateVector {
  public:
    // |0...0> on n qubits, 1 <= n <= 24.
    explicit StateVector(int n_qubits);
    static StateVector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_qubits_; }
    const std::vector<Complex>& amps() const { return amps_; }
    std::vector<Complex>& amps() { return amps_; }

    double norm_sq() const;
    bool finite() const;  // no NaN/Inf anywhere

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

StateVector new_zero_state(int n_qubits);

// Applies `unitary` (dim 2^k) to the k target qubits of every basis state
// whose control qubits match their polarities; other amplitudes are left
// alone. Bit j of the unitary's row/column index is the value of targets[j].
void apply_gate(StateVector& state, const Matrix& unitary, const std::vector<int>& targets,
                const std::vector<ControlBit>& controls = {});

// Multiplies amplitudes whose controls match and whose target reads |1> by
// `phase`. Covers Z/RZ without touching the rest of the vector.
void apply_phase(StateVector& state, Complex phase, int target,
                 const std::vector<ControlBit>& controls = {});

// X fast path: swaps the target-bit pair of every controlled-on index.
void apply_x(StateVector& state, int target, const std::vector<ControlBit>& controls = {});

void apply_swap(StateVector& state, int a, int b, const std::vector<ControlBit>& controls = {});

std::vector<double> probabilities(const StateVector& state);

// Distribution of bit patterns on `qubits` (pattern bit i = qubits[i]),
// summed over everything else.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits);

// Draws `shots` i.i.d. samples from the marginal on `measured_qubits`.
// Shot k consumes only the substream derived from (seed, k), so histograms
// are reproducible and independent of any execution interleaving. Keys are
// MSB-first labels over the measured qubits (last listed qubit = leftmost
// character).
CountsHistogram sample(const StateVector& state, const std::vector<int>& measured_qubits,
                       std::uint64_t shots, std::uint64_t seed);

// Single draw from an explicit distribution via inverse CDF; u in [0,1).
std::size_t sample_index(const std::vector<double>& probs, double u);

}  // namespace qwalk
