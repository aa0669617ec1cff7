#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qwalk/gates.hpp"
#include "qwalk/statevector.hpp"

namespace qwalk {

// Ordered gate list on a fixed register. List order is temporal order (the
// first gate acts first). The top `work_qubits` wires, indices
// [n_qubits - work_qubits, n_qubits), are scratch ancillas that start in |0>
// and are returned to |0>; everything else is data.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits, std::string name = {});

    int n_qubits() const { return n_qubits_; }
    int work_qubits() const { return work_qubits_; }
    void set_work_qubits(int w);
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    // Validates the gate against the register and appends it.
    Circuit& add(Gate g);
    Circuit& add(const Circuit& other);  // same width; gates appended in order

  private:
    int n_qubits_ = 0;
    int work_qubits_ = 0;
    std::string name_;
    std::vector<Gate> gates_;
};

// Applies the circuit's gates in list order. The returning overload copies;
// the in-place overload is for hot loops.
void run_gate(const Gate& g, StateVector& state);
void run_inplace(const Circuit& circuit, StateVector& state);
StateVector run(const Circuit& circuit, const StateVector& state);

// Gate list reversed, each gate conjugate-transposed.
Circuit inverse(const Circuit& circuit);

// Every gate gains `ctrl` as a 1-polarity control. `ctrl` must not be used
// by the circuit; if it lies beyond the register the register grows to
// include it.
Circuit controlled(const Circuit& circuit, int ctrl);

// k-fold concatenation.
Circuit power(const Circuit& circuit, unsigned k);

// Rewires qubit q of `circuit` to `map[q]` on a register of `new_n` qubits.
Circuit remap(const Circuit& circuit, const std::vector<int>& map, int new_n);

// Brute-force matrix: column j is the image of basis state j. n_qubits <= 10.
Matrix matrix_of(const Circuit& circuit);

// As-soon-as-possible layer count.
int depth(const Circuit& circuit);

// Display-name -> occurrence count; values sum to the gate-list length.
std::map<std::string, std::size_t> gate_counts(const Circuit& circuit);

// Text form, one gate per line: `GATE targets ; controls` with +q / -q for
// 1- / 0-polarity controls. Header: `qubits N`, then optional `work W` and
// `name ...`. `#` starts a comment. Readers also accept the positional
// shorthands CNOT/CZ/CRZ/CCX/CCZ/MCX/MCZ (controls listed before the target).
Circuit read_circuit_text(std::istream& in);
Circuit parse_circuit_text(const std::string& text);
void write_circuit_text(const Circuit& circuit, std::ostream& out);
std::string circuit_to_text(const Circuit& circuit);

}  // namespace qwalk
