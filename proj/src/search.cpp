#include "qwalk/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qwalk/errors.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

namespace {

// Phase flip of the single basis value `value` of the qubits in `qubits`
// (bit b of value lives on qubits[b]). States of other qubits untouched.
void add_value_phase_flip(Circuit& ck, const std::vector<int>& qubits, std::uint64_t value) {
    int target_bit = -1;
    for (std::size_t b = 0; b < qubits.size(); ++b)
        if (value >> b & 1) target_bit = static_cast<int>(b);
    std::vector<ControlBit> ctrls;
    for (std::size_t b = 0; b < qubits.size(); ++b)
        if (static_cast<int>(b) != std::max(target_bit, 0))
            ctrls.push_back({qubits[b], (value >> b & 1) != 0});
    if (target_bit >= 0) {
        ck.add(mcz(ctrls, qubits[target_bit]));
    } else {
        // All-zero value: conjugate one wire with X so the Z can fire.
        ck.add(x(qubits[0]));
        ck.add(mcz(ctrls, qubits[0]));
        ck.add(x(qubits[0]));
    }
}

double marked_probability(const StateVector& state, const std::vector<int>& node_qubits,
                          const std::vector<std::uint64_t>& marked) {
    const std::vector<double> marg = marginal_probabilities(state, node_qubits);
    double p = 0.0;
    for (std::uint64_t v : marked) p += marg[v];
    return p;
}

std::pair<int, double> trace_argmax(const std::vector<double>& trace) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(trace.size()); ++i)
        if (trace[i] > trace[best]) best = i;
    return {best, trace[best]};
}

struct SearchRun {
    StateVector state;
    std::vector<double> trace;
    WalkRegisters regs;
};

SearchRun run_search_loop(const WalkGraph& graph, const std::vector<std::string>& marked, int t,
                          int iterations) {
    if (t < 1) throw ArgumentError("theta register needs at least one qubit");
    if (iterations < 0) throw ArgumentError("iteration count must be nonnegative");
    const std::vector<std::uint64_t> marks = marked_indices(graph, marked);
    if (marks.empty()) throw ArgumentError("the search needs a non-empty marked set");

    const WalkRegisters regs = registers_for(graph);
    const int total = regs.total() + t;

    std::vector<int> walk_wires(regs.total());
    std::iota(walk_wires.begin(), walk_wires.end(), 0);
    const Circuit oracle = remap(phase_oracle(graph, marked), walk_wires, total);
    const Circuit reflection = reflection_step(graph, t);

    SearchRun run{StateVector(total), {}, regs};
    const Matrix had = target_matrix(h(0));
    for (int q = 0; q < regs.total(); ++q) apply_gate(run.state, had, {q});

    const std::vector<int> node_qubits = regs.node_qubits();
    run.trace.push_back(marked_probability(run.state, node_qubits, marks));
    for (int it = 0; it < iterations; ++it) {
        run_inplace(oracle, run.state);
        run_inplace(reflection, run.state);
        run.trace.push_back(marked_probability(run.state, node_qubits, marks));
    }
    return run;
}

}  // namespace

std::vector<std::uint64_t> marked_indices(const WalkGraph& graph,
                                          const std::vector<std::string>& marked) {
    const std::size_t width = static_cast<std::size_t>(graph.node_qubit_count());
    std::vector<std::uint64_t> out;
    out.reserve(marked.size());
    for (const std::string& label : marked) {
        if (label.size() != width)
            throw ArgumentError("marked label '" + label + "' must have exactly " +
                                std::to_string(width) + " characters");
        const std::uint64_t v = parse_bit_label(label);
        if (std::find(out.begin(), out.end(), v) != out.end())
            throw ArgumentError("marked label '" + label + "' appears twice");
        out.push_back(v);
    }
    return out;
}

Circuit phase_oracle(const WalkGraph& graph, const std::vector<std::string>& marked) {
    const std::vector<std::uint64_t> marks = marked_indices(graph, marked);
    const WalkRegisters regs = registers_for(graph);
    Circuit ck(regs.total(), graph.name() + "-oracle");
    for (std::uint64_t v : marks) add_value_phase_flip(ck, regs.node_qubits(), v);
    return ck;
}

Circuit reflection_step(const WalkGraph& graph, int t) {
    if (t < 1) throw ArgumentError("theta register needs at least one qubit");
    const WalkRegisters regs = registers_for(graph);
    const int total = regs.total() + t;

    std::vector<int> unit_qubits(regs.total());
    std::iota(unit_qubits.begin(), unit_qubits.end(), 0);
    std::vector<int> theta_qubits(t);
    std::iota(theta_qubits.begin(), theta_qubits.end(), regs.total());

    const Circuit pe =
        phase_estimation(PhaseEstimationSpec{walk_step(graph), unit_qubits, theta_qubits, total});

    Circuit ck(total, graph.name() + "-reflection");
    ck.add(pe);
    add_value_phase_flip(ck, theta_qubits, 0);
    ck.add(inverse(pe));
    return ck;
}

std::vector<double> marked_probability_trace(const WalkGraph& graph,
                                             const std::vector<std::string>& marked, int t,
                                             int iterations) {
    return run_search_loop(graph, marked, t, iterations).trace;
}

Circuit search_circuit(const WalkGraph& graph, const std::vector<std::string>& marked, int t,
                       int iterations) {
    if (t < 1) throw ArgumentError("theta register needs at least one qubit");
    if (iterations < 0) throw ArgumentError("iteration count must be nonnegative");
    if (marked_indices(graph, marked).empty())
        throw ArgumentError("the search needs a non-empty marked set");
    const WalkRegisters regs = registers_for(graph);
    const int total = regs.total() + t;

    std::vector<int> walk_wires(regs.total());
    std::iota(walk_wires.begin(), walk_wires.end(), 0);
    const Circuit oracle = remap(phase_oracle(graph, marked), walk_wires, total);
    const Circuit reflection = reflection_step(graph, t);

    Circuit ck(total, graph.name() + "-search");
    for (int q = 0; q < regs.total(); ++q) ck.add(h(q));
    for (int it = 0; it < iterations; ++it) {
        ck.add(oracle);
        ck.add(reflection);
    }
    return ck;
}

SearchResult mnrs_search(const SearchConfig& config) {
    if (config.shots < 1) throw ArgumentError("shots must be at least 1");
    SearchRun run = run_search_loop(config.graph, config.marked, config.t, config.iterations);

    SearchResult result;
    result.graph = config.graph.name();
    result.marked = config.marked;
    result.t = config.t;
    result.iterations = config.iterations;
    result.trace = std::move(run.trace);
    result.counts = sample(run.state, run.regs.node_qubits(), config.shots, config.seed);
    std::tie(result.hitting_time, result.hitting_probability) = trace_argmax(result.trace);
    result.epsilon = static_cast<double>(config.marked.size()) / config.graph.n_nodes();
    result.theoretical_scale =
        theoretical_iterations(config.graph.n_nodes(), static_cast<int>(config.marked.size()));
    return result;
}

std::pair<int, double> hitting_time(const WalkGraph& graph,
                                    const std::vector<std::string>& marked, int t, int max_iters) {
    if (max_iters < 1) throw ArgumentError("max_iters must be at least 1");
    return trace_argmax(marked_probability_trace(graph, marked, t, max_iters));
}

double theoretical_iterations(int n_nodes, int n_marked) {
    if (n_nodes < 1 || n_marked < 1 || n_marked > n_nodes)
        throw ArgumentError("need 1 <= marked <= nodes");
    return std::sqrt(static_cast<double>(n_nodes) / static_cast<double>(n_marked));
}

int default_theta_width(const WalkGraph& graph) {
    switch (graph.kind()) {
        case GraphKind::kHypercube:
        case GraphKind::kLattice2D:
            return 3;
        case GraphKind::kCompleteBipartite:
        case GraphKind::kComplete:
            return 2;
    }
    throw ArgumentError("unknown graph kind");
}

SearchResult grover_search(int n_qubits, const std::string& marked_label, std::uint64_t shots,
                           std::uint64_t seed) {
    if (shots < 1) throw ArgumentError("shots must be at least 1");
    if (static_cast<int>(marked_label.size()) != n_qubits)
        throw ArgumentError("marked label width must equal the qubit count");
    const std::uint64_t mark = parse_bit_label(marked_label);
    const double n_states = static_cast<double>(std::uint64_t{1} << n_qubits);
    const int iterations =
        static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(n_states)));

    std::vector<int> wires(n_qubits);
    std::iota(wires.begin(), wires.end(), 0);
    Circuit oracle(n_qubits, "grover-oracle");
    add_value_phase_flip(oracle, wires, mark);
    const Circuit diffusion = grover_coin(n_qubits);

    StateVector state(n_qubits);
    const Matrix had = target_matrix(h(0));
    for (int q = 0; q < n_qubits; ++q) apply_gate(state, had, {q});

    SearchResult result;
    result.graph = "grover-" + std::to_string(n_qubits);
    result.marked = {marked_label};
    result.t = 0;
    result.iterations = iterations;
    result.trace.push_back(probabilities(state)[mark]);
    for (int it = 0; it < iterations; ++it) {
        run_inplace(oracle, state);
        run_inplace(diffusion, state);
        result.trace.push_back(probabilities(state)[mark]);
    }
    result.counts = sample(state, wires, shots, seed);
    std::tie(result.hitting_time, result.hitting_probability) = trace_argmax(result.trace);
    result.epsilon = 1.0 / n_states;
    result.theoretical_scale = std::sqrt(n_states);
    return result;
}

}  // namespace qwalk
