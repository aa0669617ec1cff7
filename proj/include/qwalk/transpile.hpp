#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/circuit.hpp"

namespace qwalk {

// Undirected, connected device graph over physical qubits [0, n). Edges are
// stored normalized (a < b, sorted, deduplicated); pairwise hop distances are
// precomputed at construction.
class CouplingMap {
  public:
    CouplingMap(int n_qubits, std::vector<std::pair<int, int>> edges);

    int n_qubits() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int q) const;
    int degree(int q) const;
    int distance(int a, int b) const;  // hops along the device graph

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> dist_;
};

// Text form: optional `qubits N` line, then one `a-b` edge per line. Blank
// lines and `#` comments are ignored. Without a `qubits` line the count is
// the largest index + 1.
CouplingMap read_coupling_map(std::istream& in);
CouplingMap parse_coupling_map(const std::string& text);
CouplingMap load_coupling_map(const std::string& path);
std::string coupling_map_to_text(const CouplingMap& map);

// Total injective assignment of circuit wires onto device wires.
struct Layout {
    std::vector<int> to_physical;  // to_physical[logical] = physical qubit
};

Layout identity_layout(int n_qubits);

// Lowers a circuit to the hardware basis {CNOT, I, RZ, SX, X}, exactly up to
// one global phase. Mixed-polarity controls are X-conjugated; multi-controlled
// gates go through Toffoli ladders that borrow at most two scratch wires,
// appended above the register and declared as work qubits; Toffolis become
// the 6-CNOT network; H becomes RZ(pi/2)-SX-RZ(pi/2); SWAP becomes 3 CNOTs;
// CZ becomes an H-conjugated CNOT. Raw unitaries are not lowered.
Circuit decompose_to_basis(const Circuit& circuit);

struct RouteResult {
    Circuit circuit;                    // basis gates on the physical register
    Layout initial;                     // logical -> physical before any swap
    Layout final_layout;                // logical -> physical after all swaps
    std::vector<int> wire_permutation;  // wire_permutation[p] = original wire
                                        // whose content ends on physical p
    int swaps = 0;                      // inserted swaps (each 3 CNOTs)
};

// Maps a basis-only circuit onto the device. Every two-qubit gate in the
// output acts on a coupling edge; swaps are inserted greedily, choosing the
// move that most reduces the summed distance of the next 20 two-qubit gates.
RouteResult route(const Circuit& circuit, const CouplingMap& map, const Layout& layout);

// Greedy placement: logical pairs sorted by interaction count, heaviest pairs
// onto adjacent physical qubits first, deterministic index tie-breaks.
Layout hardware_aware_layout(const Circuit& circuit, const CouplingMap& map);

// True iff matrix_of(a) == exp(i*gamma) * P^dag * matrix_of(b) * P entrywise
// within tol, where P relabels wire i of `a` as wire `permutation[i]` of `b`.
// Both circuits must have the same width, at most 10 qubits.
bool verify_equivalence(const Circuit& a, const Circuit& b, const std::vector<int>& permutation,
                        double tol);

// Equivalence check for a routing result: undoes the accumulated wire
// permutation, restricts to the wires the routed circuit actually uses, and
// runs verify_equivalence against the original.
bool verify_routing(const Circuit& original, const RouteResult& routed, double tol);

struct CircuitMetrics {
    int depth = 0;
    std::size_t total_gates = 0;
    std::size_t two_qubit_gates = 0;  // gates touching exactly two wires
    std::size_t swap_gates = 0;       // explicit SWAPs, or inserted swaps for a route
};

CircuitMetrics metrics(const Circuit& circuit);
CircuitMetrics metrics(const RouteResult& routed);

}  // namespace qwalk
