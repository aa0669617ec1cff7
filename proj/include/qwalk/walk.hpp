#pragma once

#include <string>
#include <vector>

#include "qwalk/circuit.hpp"

namespace qwalk {

// The four regular graph families the walk runs on. Node labels are binary
// strings read MSB-first; the lattice node label is x then y
// (v = x*side + y); the complete graph keeps self-loops so its degree stays
// a power of two.
enum class GraphKind { kHypercube, kLattice2D, kCompleteBipartite, kComplete };

class WalkGraph {
  public:
    static WalkGraph hypercube(int dim);            // 2^dim nodes, degree dim
    static WalkGraph lattice2d(int side);           // torus, side^2 nodes, degree 4
    static WalkGraph complete_bipartite(int total);  // K_{N/2,N/2}
    static WalkGraph complete(int total);            // K_N with self-loops

    GraphKind kind() const { return kind_; }
    int param() const { return param_; }  // dim / side / total per kind
    int n_nodes() const { return n_nodes_; }
    int degree() const { return degree_; }
    int coin_qubit_count() const;  // log2(degree)
    int node_qubit_count() const;  // log2(n_nodes)
    std::string name() const;

    // Node reached from v along the edge picked by coin value a; index order
    // matches the coin-register encoding used by the shift circuits.
    int neighbor(int v, int a) const;
    std::vector<int> neighbors(int v) const;

  private:
    WalkGraph(GraphKind kind, int param, int n_nodes, int degree);
    GraphKind kind_;
    int param_;
    int n_nodes_;
    int degree_;
};

// Factory by family name ("hypercube", "lattice", "bipartite", "complete")
// and node count, validating each family's size constraints.
WalkGraph graph_by_name(const std::string& name, int n_nodes);

// Coin register occupies qubits [0, coin_count); node register the next
// node_count qubits.
struct WalkRegisters {
    int coin_count = 0;
    int node_count = 0;
    int total() const { return coin_count + node_count; }
    int coin_lo() const { return 0; }
    int node_lo() const { return coin_count; }
    std::vector<int> coin_qubits() const;
    std::vector<int> node_qubits() const;
};

WalkRegisters registers_for(const WalkGraph& graph);

// Grover diffusion coin on c qubits as the H/X/multi-controlled-Z/X/H
// sandwich. Its matrix is (2/d)J - I, d = 2^c, up to a global -1.
Circuit grover_coin(int coin_qubits);

// Coin-conditioned node permutations, each on the full coin+node register.
Circuit shift_hypercube(int dim);
Circuit shift_lattice(int side);
Circuit shift_bipartite(int total);
Circuit shift_complete(int total);
Circuit shift_of(const WalkGraph& graph);

// One walk step: Grover coin on the coin register, then the shift.
Circuit walk_step(const WalkGraph& graph);

}  // namespace qwalk
