// Python bindings: the toolkit's main operations as plain functions returning
// dicts and lists, so experiments script the same way the CLI drives them.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/circuit.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/gates.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/noise.hpp"
#include "qwalk/search.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/statevector.hpp"
#include "qwalk/transpile.hpp"
#include "qwalk/walk.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

int theta_or_default(const WalkGraph& g, int theta_qubits) {
    return theta_qubits == 0 ? default_theta_width(g) : theta_qubits;
}

int scan_bound(const WalkGraph& g, std::size_t n_marked, int max_iters) {
    if (max_iters >= 0) return max_iters;
    const double scale = theoretical_iterations(g.n_nodes(), static_cast<int>(n_marked));
    return static_cast<int>(std::ceil(scale)) + 1;
}

int rounds(const WalkGraph& g, const std::vector<std::string>& marked, int t, int iterations,
           int max_iters) {
    if (iterations >= 0) return iterations;
    return hitting_time(g, marked, t, scan_bound(g, marked.size(), max_iters)).first;
}

py::dict counts_dict(const CountsHistogram& hist) {
    py::dict d;
    for (const auto& [label, n] : hist.counts) d[py::str(label)] = n;
    return d;
}

py::dict result_dict(const SearchResult& r, std::uint64_t shots, std::uint64_t seed) {
    py::dict d;
    d["graph"] = r.graph;
    d["marked"] = r.marked;
    d["theta_qubits"] = r.t;
    d["iterations"] = r.iterations;
    d["shots"] = shots;
    d["seed"] = seed;
    d["trace"] = r.trace;
    d["counts"] = counts_dict(r.counts);
    d["hitting_time"] = r.hitting_time;
    d["hitting_probability"] = r.hitting_probability;
    d["epsilon"] = r.epsilon;
    d["theoretical_scale"] = r.theoretical_scale;
    return d;
}

py::dict metrics_dict(const CircuitMetrics& m) {
    py::dict d;
    d["depth"] = m.depth;
    d["total_gates"] = m.total_gates;
    d["two_qubit_gates"] = m.two_qubit_gates;
    d["swap_gates"] = m.swap_gates;
    return d;
}

py::dict search_py(const std::string& graph, int size, const std::vector<std::string>& marked,
                   int theta_qubits, int iterations, int max_iters, std::uint64_t shots,
                   std::uint64_t seed) {
    const WalkGraph g = graph_by_name(graph, size);
    const int t = theta_or_default(g, theta_qubits);
    const int iters = rounds(g, marked, t, iterations, max_iters);
    return result_dict(mnrs_search({g, marked, t, iters, shots, seed}), shots, seed);
}

py::dict grover_py(int size, const std::string& marked, std::uint64_t shots, std::uint64_t seed) {
    if (size < 2 || (size & (size - 1)) != 0)
        throw ArgumentError("grover size must be a power of two");
    int n = 0;
    while (1 << n < size) ++n;
    return result_dict(grover_search(n, marked, shots, seed), shots, seed);
}

py::tuple hitting_time_py(const std::string& graph, int size,
                          const std::vector<std::string>& marked, int theta_qubits,
                          int max_iters) {
    const WalkGraph g = graph_by_name(graph, size);
    const int t = theta_or_default(g, theta_qubits);
    const auto [hit, peak] = hitting_time(g, marked, t, scan_bound(g, marked.size(), max_iters));
    return py::make_tuple(hit, peak);
}

std::vector<double> trace_py(const std::string& graph, int size,
                             const std::vector<std::string>& marked, int iterations,
                             int theta_qubits) {
    const WalkGraph g = graph_by_name(graph, size);
    return marked_probability_trace(g, marked, theta_or_default(g, theta_qubits), iterations);
}

py::dict walk_py(const std::string& graph, int size, int steps, const std::string& initial) {
    const WalkGraph g = graph_by_name(graph, size);
    const WalkRegisters regs = registers_for(g);
    const std::vector<int> nodes = regs.node_qubits();

    StateVector state(regs.total());
    if (initial == "uniform") {
        Circuit prep(regs.total());
        for (int q = 0; q < regs.total(); ++q) prep.add(h(q));
        run_inplace(prep, state);
    } else if (initial != "zero") {
        throw ArgumentError("initial must be zero or uniform");
    }

    const Circuit step = walk_step(g);
    std::vector<std::vector<double>> rows;
    rows.push_back(marginal_probabilities(state, nodes));
    for (int s = 0; s < steps; ++s) {
        run_inplace(step, state);
        rows.push_back(marginal_probabilities(state, nodes));
    }
    std::vector<std::string> labels;
    for (int v = 0; v < g.n_nodes(); ++v)
        labels.push_back(bit_label(static_cast<std::uint64_t>(v), nodes.size()));

    py::dict d;
    d["graph"] = g.name();
    d["nodes"] = labels;
    d["distributions"] = rows;
    return d;
}

py::dict classical_py(const std::string& graph, int size, const std::vector<std::string>& marked,
                      std::uint64_t trials, std::uint64_t seed) {
    const WalkGraph g = graph_by_name(graph, size);
    const TransitionMatrix P = transition_matrix(g);
    const StationaryResult st = stationary_distribution(P);
    const int n = g.n_nodes();

    py::dict d;
    d["graph"] = g.name();
    d["n_nodes"] = n;
    d["stationary"] = st.pi;
    d["periodic"] = st.periodic;
    if (st.periodic)
        d["mixing_time"] = py::none();
    else
        d["mixing_time"] = mixing_time(P, 0.01);
    if (!marked.empty()) {
        const std::vector<std::uint64_t> marks = marked_indices(g, marked);
        std::vector<double> uniform(n, 1.0 / n);
        std::vector<double> unmarked(n, 0.0);
        std::vector<bool> is_marked(n, false);
        for (std::uint64_t m : marks) is_marked[m] = true;
        const double w = 1.0 / static_cast<double>(n - marks.size());
        for (int v = 0; v < n; ++v)
            if (!is_marked[v]) unmarked[v] = w;
        d["hitting_uniform"] = classical_hitting_time(P, uniform, marks);
        d["hitting_unmarked"] = classical_hitting_time(P, unmarked, marks);
        if (trials > 0)
            d["hitting_mc"] = monte_carlo_hitting_time(P, unmarked, marks, trials, seed);
    }
    return d;
}

py::dict noisy_search_py(const std::string& graph, int size,
                         const std::vector<std::string>& marked, double p1, double p2, double p_ro,
                         int theta_qubits, int iterations, int max_iters, std::uint64_t shots,
                         std::uint64_t seed, int threads) {
    const WalkGraph g = graph_by_name(graph, size);
    const int t = theta_or_default(g, theta_qubits);
    const int iters = rounds(g, marked, t, iterations, max_iters);
    const NoiseModel model{p1, p2, p_ro};
    validate_noise_model(model);

    const Circuit circuit = search_circuit(g, marked, t, iters);
    const CountsHistogram hist =
        noisy_sample(circuit, registers_for(g).node_qubits(), model, shots, seed, threads);
    std::uint64_t hits = 0;
    for (const std::string& label : marked) {
        const auto it = hist.counts.find(label);
        if (it != hist.counts.end()) hits += it->second;
    }

    py::dict d;
    d["graph"] = g.name();
    d["marked"] = marked;
    d["theta_qubits"] = t;
    d["iterations"] = iters;
    d["counts"] = counts_dict(hist);
    d["marked_probability"] = static_cast<double>(hits) / static_cast<double>(shots);
    d["ideal_marked_probability"] = marked_probability_trace(g, marked, t, iters).back();
    return d;
}

py::dict run_circuit_py(const std::string& text, std::vector<int> measured, std::uint64_t shots,
                        std::uint64_t seed) {
    const Circuit circuit = parse_circuit_text(text);
    StateVector state(circuit.n_qubits());
    run_inplace(circuit, state);
    if (measured.empty())
        for (int q = 0; q < circuit.n_qubits(); ++q) measured.push_back(q);
    return counts_dict(sample(state, measured, shots, seed));
}

py::dict circuit_metrics_py(const std::string& text) {
    return metrics_dict(metrics(parse_circuit_text(text)));
}

py::dict transpile_py(const std::string& graph, int size, const std::string& coupling_map,
                      const std::string& circuit, const std::vector<std::string>& marked,
                      int theta_qubits, int iterations, const std::string& layout) {
    const WalkGraph g = graph_by_name(graph, size);
    const CouplingMap device = load_coupling_map(coupling_map);

    Circuit base(1);
    if (circuit == "walk") {
        base = walk_step(g);
    } else if (circuit == "search") {
        const int t = theta_or_default(g, theta_qubits);
        base = search_circuit(g, marked, t, rounds(g, marked, t, iterations, -1));
    } else {
        throw ArgumentError("circuit must be walk or search");
    }

    const Circuit dec = decompose_to_basis(base);
    Layout placed = identity_layout(dec.n_qubits());
    if (layout == "heuristic")
        placed = hardware_aware_layout(dec, device);
    else if (layout != "identity")
        throw ArgumentError("layout must be heuristic or identity");
    const RouteResult routed = route(dec, device, placed);

    py::dict d;
    d["graph"] = g.name();
    d["circuit"] = circuit;
    d["layout"] = layout;
    d["logical_qubits"] = dec.n_qubits();
    d["device_qubits"] = device.n_qubits();
    d["initial_layout"] = routed.initial.to_physical;
    d["final_layout"] = routed.final_layout.to_physical;
    d["swaps"] = routed.swaps;
    d["input_metrics"] = metrics_dict(metrics(dec));
    d["routed_metrics"] = metrics_dict(metrics(routed));
    try {
        d["verified"] = verify_routing(dec, routed, 1e-8);
    } catch (const CapacityError&) {
        d["verified"] = py::none();
    }
    d["routed_text"] = circuit_to_text(routed.circuit);
    return d;
}

}  // namespace

PYBIND11_MODULE(_qwalk, m) {
    m.doc() = "Coined-quantum-walk search toolkit on a dense statevector simulator";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ArgumentError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("graphs", [] {
        return std::vector<std::string>{"hypercube", "lattice", "bipartite", "complete"};
    }, "Supported graph family names.");

    m.def("search", &search_py, py::arg("graph"), py::arg("size"), py::arg("marked"),
          py::arg("theta_qubits") = 0, py::arg("iterations") = -1, py::arg("max_iters") = -1,
          py::arg("shots") = 1024, py::arg("seed") = 1,
          "Marked-node search: exact trace plus a sampled histogram.");

    m.def("grover", &grover_py, py::arg("size"), py::arg("marked"), py::arg("shots") = 1024,
          py::arg("seed") = 1, "Unstructured-search baseline on log2(size) qubits.");

    m.def("hitting_time", &hitting_time_py, py::arg("graph"), py::arg("size"), py::arg("marked"),
          py::arg("theta_qubits") = 0, py::arg("max_iters") = -1,
          "(iteration, probability) maximizing the exact marked probability.");

    m.def("marked_probability_trace", &trace_py, py::arg("graph"), py::arg("size"),
          py::arg("marked"), py::arg("iterations"), py::arg("theta_qubits") = 0,
          "Exact marked probability after 0..iterations rounds.");

    m.def("walk", &walk_py, py::arg("graph"), py::arg("size"), py::arg("steps") = 1,
          py::arg("initial") = "zero", "Node distribution after each coined-walk step.");

    m.def("classical", &classical_py, py::arg("graph"), py::arg("size"),
          py::arg("marked") = std::vector<std::string>{}, py::arg("trials") = 0,
          py::arg("seed") = 1,
          "Random-walk baseline: stationary distribution, mixing and hitting times.");

    m.def("noisy_search", &noisy_search_py, py::arg("graph"), py::arg("size"), py::arg("marked"),
          py::arg("p1"), py::arg("p2"), py::arg("p_ro"), py::arg("theta_qubits") = 0,
          py::arg("iterations") = -1, py::arg("max_iters") = -1, py::arg("shots") = 1024,
          py::arg("seed") = 1, py::arg("threads") = 0,
          "Search under Pauli gate noise and readout flips.");

    m.def("run_circuit", &run_circuit_py, py::arg("text"),
          py::arg("measured") = std::vector<int>{}, py::arg("shots") = 1024, py::arg("seed") = 1,
          "Simulate a circuit-text program from |0...0> and sample the given qubits.");

    m.def("circuit_metrics", &circuit_metrics_py, py::arg("text"),
          "Depth and gate counts of a circuit-text program.");

    m.def("transpile", &transpile_py, py::arg("graph"), py::arg("size"), py::arg("coupling_map"),
          py::arg("circuit") = "walk", py::arg("marked") = std::vector<std::string>{},
          py::arg("theta_qubits") = 0, py::arg("iterations") = -1,
          py::arg("layout") = "heuristic",
          "Lower to {CNOT, I, RZ, SX, X} and route onto a coupling map.");

    m.def("theoretical_iterations", &theoretical_iterations, py::arg("n_nodes"),
          py::arg("n_marked"), "1/sqrt(n_marked / n_nodes).");

    m.def("default_theta_width",
          [](const std::string& graph, int size) {
              return default_theta_width(graph_by_name(graph, size));
          },
          py::arg("graph"), py::arg("size"),
          "Smallest theta register reproducing the reference peaks.");
}
