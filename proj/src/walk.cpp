#include "qwalk/walk.hpp"

#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int int_log2(int v) {
    int k = 0;
    while ((1 << k) < v) ++k;
    return k;
}

void append_gates(Circuit& dst, const Circuit& src) {
    for (const Gate& g : src.gates()) dst.add(g);
}

// Controls selecting coin value `a` on coin qubits [0, c): bit j of a sets
// the polarity of coin qubit j.
std::vector<ControlBit> coin_value_controls(int a, int c) {
    std::vector<ControlBit> out;
    out.reserve(c);
    for (int j = 0; j < c; ++j) out.push_back({j, (a >> j & 1) != 0});
    return out;
}

// Modular +1 / -1 on the m-qubit register at [lo, lo+m), conditioned on
// `base`. Bit k flips when every lower bit is 1 (increment) or 0
// (decrement); higher bits first so each gate sees pre-ripple values.
void add_ripple(Circuit& ck, int lo, int m, const std::vector<ControlBit>& base, bool increment) {
    for (int k = m - 1; k >= 0; --k) {
        std::vector<ControlBit> ctrls = base;
        for (int j = 0; j < k; ++j) ctrls.push_back({lo + j, increment});
        ck.add(mcx(ctrls, lo + k));
    }
}

}  // namespace

WalkGraph::WalkGraph(GraphKind kind, int param, int n_nodes, int degree)
    : kind_(kind), param_(param), n_nodes_(n_nodes), degree_(degree) {}

WalkGraph WalkGraph::hypercube(int dim) {
    if (dim < 2 || !power_of_two(dim))
        throw ArgumentError(
            "hypercube dimension must be a power of two and at least 2 "
            "(the coin register holds log2(dim) qubits)");
    return WalkGraph(GraphKind::kHypercube, dim, 1 << dim, dim);
}

WalkGraph WalkGraph::lattice2d(int side) {
    if (side < 2 || !power_of_two(side))
        throw ArgumentError("lattice side must be a power of two and at least 2");
    return WalkGraph(GraphKind::kLattice2D, side, side * side, 4);
}

WalkGraph WalkGraph::complete_bipartite(int total) {
    if (total < 4 || !power_of_two(total))
        throw ArgumentError("bipartite node count must be a power of two and at least 4");
    return WalkGraph(GraphKind::kCompleteBipartite, total, total, total / 2);
}

WalkGraph WalkGraph::complete(int total) {
    if (total < 4 || !power_of_two(total))
        throw ArgumentError("complete-graph node count must be a power of two and at least 4");
    return WalkGraph(GraphKind::kComplete, total, total, total);
}

int WalkGraph::coin_qubit_count() const { return int_log2(degree_); }
int WalkGraph::node_qubit_count() const { return int_log2(n_nodes_); }

std::string WalkGraph::name() const {
    switch (kind_) {
        case GraphKind::kHypercube:
            return "hypercube-" + std::to_string(param_);
        case GraphKind::kLattice2D:
            return "lattice-" + std::to_string(param_) + "x" + std::to_string(param_);
        case GraphKind::kCompleteBipartite:
            return "complete-bipartite-" + std::to_string(param_);
        case GraphKind::kComplete:
            return "complete-" + std::to_string(param_);
    }
    return "graph";
}

int WalkGraph::neighbor(int v, int a) const {
    if (v < 0 || v >= n_nodes_) throw ArgumentError("node index out of range");
    if (a < 0 || a >= degree_) throw ArgumentError("coin value out of range");
    switch (kind_) {
        case GraphKind::kHypercube:
            // Edge label a flips the a-th written bit, counting from the MSB.
            return v ^ (1 << (param_ - 1 - a));
        case GraphKind::kLattice2D: {
            const int side = param_;
            const int d = a >> 1, s = a & 1;
            int xpos = v / side, ypos = v % side;
            const int delta = s == 0 ? 1 : side - 1;
            if (d == 0)
                xpos = (xpos + delta) % side;
            else
                ypos = (ypos + delta) % side;
            return xpos * side + ypos;
        }
        case GraphKind::kCompleteBipartite: {
            const int lead = node_qubit_count() - 1;
            return a | (((v >> lead) ^ 1) << lead);
        }
        case GraphKind::kComplete:
            return a;
    }
    throw ArgumentError("unknown graph kind");
}

std::vector<int> WalkGraph::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(degree_);
    for (int a = 0; a < degree_; ++a) out.push_back(neighbor(v, a));
    return out;
}

std::vector<int> WalkRegisters::coin_qubits() const {
    std::vector<int> out;
    for (int q = 0; q < coin_count; ++q) out.push_back(q);
    return out;
}

std::vector<int> WalkRegisters::node_qubits() const {
    std::vector<int> out;
    for (int q = 0; q < node_count; ++q) out.push_back(coin_count + q);
    return out;
}

WalkRegisters registers_for(const WalkGraph& graph) {
    return WalkRegisters{graph.coin_qubit_count(), graph.node_qubit_count()};
}

Circuit grover_coin(int coin_qubits) {
    if (coin_qubits < 1) throw ArgumentError("the coin register needs at least one qubit");
    Circuit ck(coin_qubits, "grover-coin");
    for (int q = 0; q < coin_qubits; ++q) ck.add(h(q));
    for (int q = 0; q < coin_qubits; ++q) ck.add(x(q));
    std::vector<int> ctrls;
    for (int q = 0; q < coin_qubits - 1; ++q) ctrls.push_back(q);
    ck.add(mcz(ctrls, coin_qubits - 1));
    for (int q = 0; q < coin_qubits; ++q) ck.add(x(q));
    for (int q = 0; q < coin_qubits; ++q) ck.add(h(q));
    // The X-conjugated MCZ realizes I - 2|s><s| = -G; the trailing X,Z,X,Z
    // pair multiplies by -I so the matrix is exactly (2/d)J - I. The sign is
    // observable once the coin runs controlled inside phase estimation.
    ck.add(x(0));
    ck.add(z(0));
    ck.add(x(0));
    ck.add(z(0));
    return ck;
}

Circuit shift_hypercube(int dim) {
    const WalkGraph g = WalkGraph::hypercube(dim);
    const WalkRegisters regs = registers_for(g);
    Circuit ck(regs.total(), "shift-hypercube");
    for (int a = 0; a < dim; ++a)
        ck.add(mcx(coin_value_controls(a, regs.coin_count), regs.node_lo() + (dim - 1 - a)));
    return ck;
}

Circuit shift_lattice(int side) {
    const WalkGraph g = WalkGraph::lattice2d(side);
    const WalkRegisters regs = registers_for(g);
    const int m = g.node_qubit_count() / 2;
    const int y_lo = regs.node_lo();      // y is the low half of the node label
    const int x_lo = regs.node_lo() + m;  // x the high half
    Circuit ck(regs.total(), "shift-lattice");
    // Coin |d, s>: qubit 1 = d (axis), qubit 0 = s (sign); move then flip s.
    for (int d = 0; d < 2; ++d)
        for (int s = 0; s < 2; ++s)
            add_ripple(ck, d == 0 ? x_lo : y_lo, m, {{1, d == 1}, {0, s == 1}}, s == 0);
    ck.add(x(0));
    return ck;
}

Circuit shift_bipartite(int total) {
    const WalkGraph g = WalkGraph::complete_bipartite(total);
    const WalkRegisters regs = registers_for(g);
    Circuit ck(regs.total(), "shift-bipartite");
    for (int i = 0; i < regs.coin_count; ++i) ck.add(swap_gate(i, regs.node_lo() + i));
    ck.add(x(regs.node_lo() + regs.node_count - 1));
    return ck;
}

Circuit shift_complete(int total) {
    const WalkGraph g = WalkGraph::complete(total);
    const WalkRegisters regs = registers_for(g);
    Circuit ck(regs.total(), "shift-complete");
    for (int i = 0; i < regs.coin_count; ++i) ck.add(swap_gate(i, regs.node_lo() + i));
    return ck;
}

Circuit shift_of(const WalkGraph& graph) {
    switch (graph.kind()) {
        case GraphKind::kHypercube:
            return shift_hypercube(graph.param());
        case GraphKind::kLattice2D:
            return shift_lattice(graph.param());
        case GraphKind::kCompleteBipartite:
            return shift_bipartite(graph.param());
        case GraphKind::kComplete:
            return shift_complete(graph.param());
    }
    throw ArgumentError("unknown graph kind");
}

Circuit walk_step(const WalkGraph& graph) {
    const WalkRegisters regs = registers_for(graph);
    Circuit ck(regs.total(), graph.name() + "-step");
    append_gates(ck, grover_coin(regs.coin_count));
    append_gates(ck, shift_of(graph));
    return ck;
}

WalkGraph graph_by_name(const std::string& name, int n_nodes) {
    if (n_nodes < 2) throw ArgumentError("graph size must be at least 2");
    if (name == "hypercube") {
        if ((n_nodes & (n_nodes - 1)) != 0)
            throw ArgumentError("hypercube size must be a power of two");
        int dim = 0;
        while (1 << dim < n_nodes) ++dim;
        return WalkGraph::hypercube(dim);
    }
    if (name == "lattice") {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_nodes))));
        if (side * side != n_nodes) throw ArgumentError("lattice size must be a perfect square");
        return WalkGraph::lattice2d(side);
    }
    if (name == "bipartite") return WalkGraph::complete_bipartite(n_nodes);
    if (name == "complete") return WalkGraph::complete(n_nodes);
    throw ArgumentError("unknown graph '" + name +
                        "' (expected hypercube, lattice, bipartite or complete)");
}

}  // namespace qwalk
