// Command-line driver: every experiment the library supports, emitted as
// deterministic CSV / JSON / text so runs are scriptable and diffable.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/circuit.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/gates.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/noise.hpp"
#include "qwalk/search.hpp"
#include "qwalk/statevector.hpp"
#include "qwalk/text.hpp"
#include "qwalk/transpile.hpp"
#include "qwalk/walk.hpp"

using json = nlohmann::ordered_json;
using namespace qwalk;

namespace {

struct Options {
    std::string config;
    std::string graph = "hypercube";
    int size = 16;
    std::string marked;  // comma-separated MSB-first labels
    int theta_qubits = 0;   // 0 = per-family default
    int iterations = -1;    // -1 = use the measured hitting time
    int max_iters = -1;     // -1 = ceil(1/sqrt(eps)) + 1
    std::uint64_t shots = 1024;
    std::uint64_t seed = 1;
    std::string noise = "0.002,0.02,0.03";
    std::string coupling_map;
    std::string format;  // resolved per command when empty
    std::string out;
    std::string initial = "zero";      // walk: zero | uniform
    std::string circuit = "walk";      // transpile: walk | search
    std::string layout = "heuristic";  // transpile: heuristic | identity
    std::string dump_circuit;
    bool transpiled = false;  // noise: run the routed circuit instead
    int threads = 0;          // noise: worker threads, 0 = hardware pick
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

WalkGraph make_graph(const std::string& name, int size) { return graph_by_name(name, size); }

std::vector<std::string> parse_marked(const std::string& marked) {
    std::vector<std::string> labels;
    for (const std::string& item : split(marked, ',')) {
        if (!item.empty()) labels.push_back(item);
    }
    if (labels.empty()) throw ArgumentError("--marked needs at least one node label");
    return labels;
}

NoiseModel parse_noise_triple(const std::string& text) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 3)
        throw ArgumentError("--noise expects three comma-separated values p1,p2,p_ro");
    NoiseModel model;
    try {
        model.p1 = std::stod(parts[0]);
        model.p2 = std::stod(parts[1]);
        model.p_ro = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw ArgumentError("--noise expects numeric values, got '" + text + "'");
    }
    validate_noise_model(model);
    return model;
}

int resolve_theta(const Options& o, const WalkGraph& g) {
    if (o.theta_qubits == 0) return default_theta_width(g);
    if (o.theta_qubits < 1) throw ArgumentError("--theta-qubits must be positive");
    return o.theta_qubits;
}

int resolve_max_iters(const Options& o, const WalkGraph& g, std::size_t n_marked) {
    if (o.max_iters >= 0) return o.max_iters;
    const double scale = theoretical_iterations(g.n_nodes(), static_cast<int>(n_marked));
    return static_cast<int>(std::ceil(scale)) + 1;
}

int resolve_iterations(const Options& o, const WalkGraph& g, const std::vector<std::string>& marked,
                       int t) {
    if (o.iterations >= 0) return o.iterations;
    return hitting_time(g, marked, t, resolve_max_iters(o, g, marked.size())).first;
}

std::string resolved_format(const Options& o, const std::string& fallback) {
    return o.format.empty() ? fallback : o.format;
}

void deliver(const std::string& text, const Options& o) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ArgumentError("cannot open output file '" + o.out + "'");
    f << text;
}

std::string histogram_ascii(const CountsHistogram& hist) {
    std::uint64_t peak = 1;
    for (const auto& [label, n] : hist.counts) peak = std::max(peak, n);
    std::string out;
    for (const auto& [label, n] : hist.counts) {
        const int bar = static_cast<int>(std::lround(50.0 * static_cast<double>(n) /
                                                     static_cast<double>(peak)));
        out += label + " " + std::to_string(n) + " |" + std::string(bar, '#') + "\n";
    }
    return out;
}

json histogram_json(const CountsHistogram& hist) {
    json j = json::object();
    for (const auto& [label, n] : hist.counts) j[label] = n;
    return j;
}

std::uint64_t marked_hits(const CountsHistogram& hist, const std::vector<std::string>& marked) {
    std::uint64_t hits = 0;
    for (const std::string& label : marked) {
        const auto it = hist.counts.find(label);
        if (it != hist.counts.end()) hits += it->second;
    }
    return hits;
}

json search_result_json(const SearchResult& r, std::uint64_t shots, std::uint64_t seed) {
    json j;
    j["graph"] = r.graph;
    j["marked"] = r.marked;
    j["theta_qubits"] = r.t;
    j["iterations"] = r.iterations;
    j["shots"] = shots;
    j["seed"] = seed;
    j["trace"] = r.trace;
    j["counts"] = histogram_json(r.counts);
    j["marked_count"] = marked_hits(r.counts, r.marked);
    j["hitting_time"] = r.hitting_time;
    j["hitting_probability"] = r.hitting_probability;
    j["epsilon"] = r.epsilon;
    j["theoretical_scale"] = r.theoretical_scale;
    return j;
}

std::string search_result_text(const SearchResult& r, std::uint64_t shots, std::uint64_t seed) {
    std::string out;
    out += "graph: " + r.graph + "\n";
    out += "marked:";
    for (const std::string& m : r.marked) out += " " + m;
    out += "\n";
    out += "theta qubits: " + std::to_string(r.t) + ", iterations: " + std::to_string(r.iterations) +
           ", shots: " + std::to_string(shots) + ", seed: " + std::to_string(seed) + "\n";
    out += histogram_ascii(r.counts);
    const std::uint64_t hits = marked_hits(r.counts, r.marked);
    out += "marked count: " + std::to_string(hits) + " / " + std::to_string(shots) + " (" +
           format_double(static_cast<double>(hits) / static_cast<double>(shots)) + ")\n";
    out += "exact marked probability: " + format_double(r.trace.back()) + "\n";
    out += "hitting time: " + std::to_string(r.hitting_time) + " (probability " +
           format_double(r.hitting_probability) + ", 1/sqrt(eps) " +
           format_double(r.theoretical_scale) + ")\n";
    return out;
}

std::string search_result_csv(const SearchResult& r) {
    std::string out = "state,count\n";
    for (const auto& [label, n] : r.counts.counts) out += label + "," + std::to_string(n) + "\n";
    return out;
}

// --- subcommands ------------------------------------------------------------

std::string cmd_walk(const Options& o) {
    const WalkGraph g = make_graph(o.graph, o.size);
    const int steps = o.iterations < 0 ? 1 : o.iterations;
    const WalkRegisters regs = registers_for(g);
    const std::vector<int> nodes = regs.node_qubits();

    StateVector state(regs.total());
    if (o.initial == "uniform") {
        Circuit prep(regs.total());
        for (int q = 0; q < regs.total(); ++q) prep.add(h(q));
        run_inplace(prep, state);
    } else if (o.initial != "zero") {
        throw ArgumentError("--initial must be zero or uniform");
    }

    const Circuit step_circuit = walk_step(g);
    std::vector<std::vector<double>> rows;
    rows.push_back(marginal_probabilities(state, nodes));
    for (int s = 0; s < steps; ++s) {
        run_inplace(step_circuit, state);
        rows.push_back(marginal_probabilities(state, nodes));
    }

    std::vector<std::string> labels;
    for (int v = 0; v < g.n_nodes(); ++v)
        labels.push_back(bit_label(static_cast<std::uint64_t>(v), nodes.size()));

    const std::string fmt = resolved_format(o, "csv");
    if (fmt == "json") {
        json j;
        j["graph"] = g.name();
        j["initial"] = o.initial;
        j["steps"] = steps;
        j["nodes"] = labels;
        j["distributions"] = rows;
        return j.dump(2) + "\n";
    }
    std::string out = "step";
    for (const std::string& l : labels) out += "," + l;
    out += "\n";
    for (std::size_t s = 0; s < rows.size(); ++s) {
        out += std::to_string(s);
        for (double p : rows[s]) out += "," + format_double(p);
        out += "\n";
    }
    return out;
}

std::string cmd_hitting_time(const Options& o) {
    const WalkGraph g = make_graph(o.graph, o.size);
    const std::vector<std::string> marked = parse_marked(o.marked);
    const int t = resolve_theta(o, g);
    const int max_iters = resolve_max_iters(o, g, marked.size());
    const std::vector<std::uint64_t> marks = marked_indices(g, marked);
    const WalkRegisters regs = registers_for(g);
    const std::vector<int> nodes = regs.node_qubits();

    struct Row {
        int iteration;
        double marked_probability;
        std::string top_state;
        double top_probability;
    };
    std::vector<Row> rows;
    for (int k = 0; k <= max_iters; ++k) {
        StateVector state(regs.total() + t);
        run_inplace(search_circuit(g, marked, t, k), state);
        const std::vector<double> dist = marginal_probabilities(state, nodes);
        double marked_p = 0.0;
        for (std::uint64_t m : marks) marked_p += dist[m];
        std::size_t top = 0;
        for (std::size_t v = 1; v < dist.size(); ++v)
            if (dist[v] > dist[top]) top = v;
        rows.push_back({k, marked_p, bit_label(top, nodes.size()), dist[top]});
    }

    int hit = 0;
    for (std::size_t k = 1; k < rows.size(); ++k)
        if (rows[k].marked_probability > rows[hit].marked_probability) hit = static_cast<int>(k);
    const double scale = theoretical_iterations(g.n_nodes(), static_cast<int>(marks.size()));

    const std::string fmt = resolved_format(o, "csv");
    if (fmt == "json") {
        json j;
        j["graph"] = g.name();
        j["marked"] = marked;
        j["theta_qubits"] = t;
        j["max_iters"] = max_iters;
        json table = json::array();
        for (const Row& r : rows) {
            json row;
            row["iteration"] = r.iteration;
            row["marked_probability"] = r.marked_probability;
            row["top_state"] = r.top_state;
            row["top_probability"] = r.top_probability;
            table.push_back(row);
        }
        j["rows"] = table;
        j["hitting_time"] = hit;
        j["peak_probability"] = rows[hit].marked_probability;
        j["theoretical_scale"] = scale;
        return j.dump(2) + "\n";
    }
    std::string out = "iteration,marked_probability,top_state,top_probability\n";
    for (const Row& r : rows)
        out += std::to_string(r.iteration) + "," + format_double(r.marked_probability) + "," +
               r.top_state + "," + format_double(r.top_probability) + "\n";
    out += "# hitting_time=" + std::to_string(hit) +
           " peak=" + format_double(rows[hit].marked_probability) +
           " theoretical_scale=" + format_double(scale) + "\n";
    return out;
}

std::string cmd_search(const Options& o) {
    const WalkGraph g = make_graph(o.graph, o.size);
    const std::vector<std::string> marked = parse_marked(o.marked);
    const int t = resolve_theta(o, g);
    const int iterations = resolve_iterations(o, g, marked, t);
    const SearchResult r = mnrs_search({g, marked, t, iterations, o.shots, o.seed});

    const std::string fmt = resolved_format(o, "text");
    if (fmt == "json") return search_result_json(r, o.shots, o.seed).dump(2) + "\n";
    if (fmt == "csv") return search_result_csv(r);
    return search_result_text(r, o.shots, o.seed);
}

std::string cmd_grover(const Options& o) {
    if (o.size < 2 || (o.size & (o.size - 1)) != 0)
        throw ArgumentError("--size must be a power of two for grover");
    int n = 0;
    while (1 << n < o.size) ++n;
    const std::vector<std::string> marked = parse_marked(o.marked);
    if (marked.size() != 1) throw ArgumentError("grover takes exactly one marked label");
    const SearchResult r = grover_search(n, marked[0], o.shots, o.seed);

    const std::string fmt = resolved_format(o, "text");
    if (fmt == "json") return search_result_json(r, o.shots, o.seed).dump(2) + "\n";
    if (fmt == "csv") return search_result_csv(r);
    return search_result_text(r, o.shots, o.seed);
}

std::string cmd_classical(const Options& o) {
    const WalkGraph g = make_graph(o.graph, o.size);
    const TransitionMatrix P = transition_matrix(g);
    const StationaryResult st = stationary_distribution(P);
    const int n = g.n_nodes();

    int mixing = -1;
    if (!st.periodic) mixing = mixing_time(P, 0.01);

    bool has_marked = !o.marked.empty();
    std::vector<std::string> marked;
    double hit_uniform = 0.0, hit_unmarked = 0.0, hit_mc = 0.0;
    if (has_marked) {
        marked = parse_marked(o.marked);
        const std::vector<std::uint64_t> marks = marked_indices(g, marked);
        const std::vector<double> uniform(n, 1.0 / n);
        std::vector<double> unmarked(n, 0.0);
        std::vector<bool> is_marked(n, false);
        for (std::uint64_t m : marks) is_marked[m] = true;
        const double w = 1.0 / static_cast<double>(n - marks.size());
        for (int v = 0; v < n; ++v)
            if (!is_marked[v]) unmarked[v] = w;
        hit_uniform = classical_hitting_time(P, uniform, marks);
        hit_unmarked = classical_hitting_time(P, unmarked, marks);
        hit_mc = monte_carlo_hitting_time(P, unmarked, marks, o.shots, o.seed);
    }

    const std::string fmt = resolved_format(o, "csv");
    if (fmt == "json") {
        json j;
        j["graph"] = g.name();
        j["n_nodes"] = n;
        j["stationary"] = st.pi;
        j["periodic"] = st.periodic;
        if (st.periodic)
            j["mixing_time"] = nullptr;
        else
            j["mixing_time"] = mixing;
        if (has_marked) {
            j["marked"] = marked;
            j["hitting_uniform"] = hit_uniform;
            j["hitting_unmarked"] = hit_unmarked;
            j["hitting_mc"] = hit_mc;
            j["trials"] = o.shots;
        }
        return j.dump(2) + "\n";
    }
    const int width = g.node_qubit_count();
    std::string out = "state,stationary\n";
    for (int v = 0; v < n; ++v)
        out += bit_label(static_cast<std::uint64_t>(v), width) + "," + format_double(st.pi[v]) +
               "\n";
    out += "# periodic=" + std::string(st.periodic ? "true" : "false");
    if (!st.periodic) out += " mixing_time=" + std::to_string(mixing);
    if (has_marked)
        out += " hitting_uniform=" + format_double(hit_uniform) +
               " hitting_unmarked=" + format_double(hit_unmarked) +
               " hitting_mc=" + format_double(hit_mc) + " trials=" + std::to_string(o.shots);
    out += "\n";
    return out;
}

// Rewires a circuit onto its used wires only (plus `keep`), so a routed
// circuit on a wide device can still be simulated densely.
Circuit compact_circuit(const Circuit& c, std::vector<int>& keep) {
    std::vector<bool> used(c.n_qubits(), false);
    for (int q : keep) used[q] = true;
    for (const Gate& g : c.gates()) {
        for (int t : g.targets) used[t] = true;
        for (const ControlBit& ctl : g.controls) used[ctl.qubit] = true;
    }
    std::vector<int> new_index(c.n_qubits(), -1);
    int m = 0;
    for (int q = 0; q < c.n_qubits(); ++q)
        if (used[q]) new_index[q] = m++;

    Circuit out(m, c.name());
    for (const Gate& g : c.gates()) {
        Gate moved = g;
        for (int& t : moved.targets) t = new_index[t];
        for (ControlBit& ctl : moved.controls) ctl.qubit = new_index[ctl.qubit];
        out.add(moved);
    }
    for (int& q : keep) q = new_index[q];
    return out;
}

std::string cmd_noise(const Options& o) {
    const WalkGraph g = make_graph(o.graph, o.size);
    const std::vector<std::string> marked = parse_marked(o.marked);
    const int t = resolve_theta(o, g);
    const int iterations = resolve_iterations(o, g, marked, t);
    const NoiseModel model = parse_noise_triple(o.noise);

    Circuit circuit = search_circuit(g, marked, t, iterations);
    std::vector<int> measured = registers_for(g).node_qubits();
    if (o.transpiled) {
        if (o.coupling_map.empty())
            throw ArgumentError("--transpiled needs --coupling-map");
        const CouplingMap device = load_coupling_map(o.coupling_map);
        const Circuit dec = decompose_to_basis(circuit);
        const RouteResult routed = route(dec, device, hardware_aware_layout(dec, device));
        for (int& q : measured) q = routed.final_layout.to_physical[q];
        circuit = compact_circuit(routed.circuit, measured);
    }

    const CountsHistogram hist =
        noisy_sample(circuit, measured, model, o.shots, o.seed, o.threads);
    const double noisy_p =
        static_cast<double>(marked_hits(hist, marked)) / static_cast<double>(o.shots);
    const double ideal_p = marked_probability_trace(g, marked, t, iterations).back();

    const std::string fmt = resolved_format(o, "text");
    if (fmt == "json") {
        json j;
        j["graph"] = g.name();
        j["marked"] = marked;
        j["theta_qubits"] = t;
        j["iterations"] = iterations;
        j["noise"] = {{"p1", model.p1}, {"p2", model.p2}, {"p_ro", model.p_ro}};
        j["shots"] = o.shots;
        j["seed"] = o.seed;
        j["transpiled"] = o.transpiled;
        j["counts"] = histogram_json(hist);
        j["marked_probability"] = noisy_p;
        j["ideal_marked_probability"] = ideal_p;
        return j.dump(2) + "\n";
    }
    if (fmt == "csv") {
        std::string out = sweep_to_csv({{model, noisy_p, o.shots}});
        out += "# ideal_marked_probability=" + format_double(ideal_p) + "\n";
        return out;
    }
    std::string out;
    out += "graph: " + g.name() + ", iterations: " + std::to_string(iterations) +
           ", shots: " + std::to_string(o.shots) + ", seed: " + std::to_string(o.seed) + "\n";
    out += "noise: p1=" + format_double(model.p1) + " p2=" + format_double(model.p2) +
           " p_ro=" + format_double(model.p_ro) +
           (o.transpiled ? " (transpiled circuit)\n" : "\n");
    out += histogram_ascii(hist);
    out += "marked probability: " + format_double(noisy_p) + " (ideal " + format_double(ideal_p) +
           ")\n";
    return out;
}

json metrics_json(const CircuitMetrics& m) {
    json j;
    j["depth"] = m.depth;
    j["total_gates"] = m.total_gates;
    j["two_qubit_gates"] = m.two_qubit_gates;
    j["swap_gates"] = m.swap_gates;
    return j;
}

std::string cmd_transpile(const Options& o) {
    const WalkGraph g = make_graph(o.graph, o.size);
    if (o.coupling_map.empty()) throw ArgumentError("transpile needs --coupling-map");
    const CouplingMap device = load_coupling_map(o.coupling_map);

    Circuit base(1);
    if (o.circuit == "walk") {
        base = walk_step(g);
    } else if (o.circuit == "search") {
        const std::vector<std::string> marked = parse_marked(o.marked);
        const int t = resolve_theta(o, g);
        base = search_circuit(g, marked, t, resolve_iterations(o, g, marked, t));
    } else {
        throw ArgumentError("--circuit must be walk or search");
    }

    const Circuit dec = decompose_to_basis(base);
    Layout layout = identity_layout(dec.n_qubits());
    if (o.layout == "heuristic")
        layout = hardware_aware_layout(dec, device);
    else if (o.layout != "identity")
        throw ArgumentError("--layout must be heuristic or identity");
    const RouteResult routed = route(dec, device, layout);

    // The matrix oracle caps at 10 wires; wider circuits skip verification.
    json verified = nullptr;
    try {
        verified = verify_routing(dec, routed, 1e-8);
    } catch (const CapacityError&) {
    }

    if (!o.dump_circuit.empty()) {
        std::ofstream f(o.dump_circuit, std::ios::binary);
        if (!f) throw ArgumentError("cannot open output file '" + o.dump_circuit + "'");
        f << circuit_to_text(routed.circuit);
    }

    const CircuitMetrics before = metrics(dec);
    const CircuitMetrics after = metrics(routed);
    const std::string fmt = resolved_format(o, "json");
    if (fmt == "json") {
        json j;
        j["graph"] = g.name();
        j["circuit"] = o.circuit;
        j["layout"] = o.layout;
        j["logical_qubits"] = dec.n_qubits();
        j["work_qubits"] = dec.work_qubits();
        j["device_qubits"] = device.n_qubits();
        j["initial_layout"] = routed.initial.to_physical;
        j["final_layout"] = routed.final_layout.to_physical;
        j["swaps"] = routed.swaps;
        j["input_metrics"] = metrics_json(before);
        j["routed_metrics"] = metrics_json(after);
        j["verified"] = verified;
        return j.dump(2) + "\n";
    }
    if (fmt == "csv") {
        std::string out = "metric,value\n";
        out += "logical_qubits," + std::to_string(dec.n_qubits()) + "\n";
        out += "device_qubits," + std::to_string(device.n_qubits()) + "\n";
        out += "swaps," + std::to_string(routed.swaps) + "\n";
        out += "input_depth," + std::to_string(before.depth) + "\n";
        out += "input_gates," + std::to_string(before.total_gates) + "\n";
        out += "input_two_qubit," + std::to_string(before.two_qubit_gates) + "\n";
        out += "routed_depth," + std::to_string(after.depth) + "\n";
        out += "routed_gates," + std::to_string(after.total_gates) + "\n";
        out += "routed_two_qubit," + std::to_string(after.two_qubit_gates) + "\n";
        out += std::string("verified,") +
               (verified.is_null() ? "skipped" : (verified.get<bool>() ? "true" : "false")) + "\n";
        return out;
    }
    std::string out;
    out += "circuit " + base.name() + " (" + o.circuit + ") on " +
           std::to_string(device.n_qubits()) + "-qubit device\n";
    out += "layout: " + o.layout + ", swaps inserted: " + std::to_string(routed.swaps) + "\n";
    out += "input:  depth " + std::to_string(before.depth) + ", gates " +
           std::to_string(before.total_gates) + ", two-qubit " +
           std::to_string(before.two_qubit_gates) + "\n";
    out += "routed: depth " + std::to_string(after.depth) + ", gates " +
           std::to_string(after.total_gates) + ", two-qubit " +
           std::to_string(after.two_qubit_gates) + "\n";
    out += std::string("equivalence: ") +
           (verified.is_null() ? "skipped (too wide for the matrix oracle)"
                               : (verified.get<bool>() ? "verified" : "FAILED")) +
           "\n";
    return out;
}

// --- config file ------------------------------------------------------------

std::vector<std::pair<int, std::pair<std::string, std::string>>> read_config(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::vector<std::pair<int, std::pair<std::string, std::string>>> entries;
    std::string raw;
    for (int line_no = 1; std::getline(in, raw); ++line_no) {
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string{};
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config file line " + std::to_string(line_no) +
                             ": expected key=value, got '" + line + "'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("config file line " + std::to_string(line_no) + ": empty key");
        entries.push_back({line_no, {key, value}});
    }
    return entries;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"coined-quantum-walk search toolkit"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    const auto add_common = [&](CLI::App* sub) {
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--config", o.config, "flat key=value config file; flags override");
        sub->add_option("--graph", o.graph, "hypercube | lattice | bipartite | complete");
        sub->add_option("--size", o.size, "number of nodes");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--format", o.format, "csv | json | text")
            ->check(CLI::IsMember({"csv", "json", "text"}));
        sub->add_option("--out", o.out, "write output to this file instead of stdout");
        return sub;
    };
    const auto add_search_opts = [&](CLI::App* sub) {
        sub->add_option("--marked", o.marked, "comma-separated marked node labels");
        sub->add_option("--theta-qubits", o.theta_qubits, "phase-estimation register width");
        sub->add_option("--shots", o.shots, "measurement shots");
        return sub;
    };

    CLI::App* walk_cmd = add_common(app.add_subcommand("walk", "node distribution per step"));
    walk_cmd->add_option("--iterations", o.iterations, "number of walk steps");
    walk_cmd->add_option("--initial", o.initial, "zero | uniform");

    CLI::App* hit_cmd = add_search_opts(
        add_common(app.add_subcommand("hitting-time", "marked-probability trace and peak")));
    hit_cmd->add_option("--max-iters", o.max_iters, "iterations to scan");

    CLI::App* search_cmd =
        add_search_opts(add_common(app.add_subcommand("search", "marked-node search with sampling")));
    search_cmd->add_option("--iterations", o.iterations, "oracle+reflection rounds");
    search_cmd->add_option("--max-iters", o.max_iters, "scan bound when --iterations is omitted");

    CLI::App* grover_cmd =
        add_common(app.add_subcommand("grover", "unstructured search baseline"));
    grover_cmd->add_option("--marked", o.marked, "single marked label");
    grover_cmd->add_option("--shots", o.shots, "measurement shots");

    CLI::App* classical_cmd = add_common(
        app.add_subcommand("classical", "random-walk baseline: stationary, mixing, hitting"));
    classical_cmd->add_option("--marked", o.marked, "comma-separated marked node labels");
    classical_cmd->add_option("--shots", o.shots, "Monte-Carlo trials");

    CLI::App* noise_cmd =
        add_search_opts(add_common(app.add_subcommand("noise", "search under gate/readout noise")));
    noise_cmd->add_option("--iterations", o.iterations, "oracle+reflection rounds");
    noise_cmd->add_option("--max-iters", o.max_iters, "scan bound when --iterations is omitted");
    noise_cmd->add_option("--noise", o.noise, "p1,p2,p_ro error rates");
    noise_cmd->add_option("--coupling-map", o.coupling_map, "device edge-list file");
    noise_cmd->add_flag("--transpiled", o.transpiled, "run the routed circuit");
    noise_cmd->add_option("--threads", o.threads, "worker threads (0 = auto); results agree");

    CLI::App* transpile_cmd =
        add_common(app.add_subcommand("transpile", "lower and route a circuit onto a device"));
    transpile_cmd->add_option("--circuit", o.circuit, "walk | search");
    transpile_cmd->add_option("--marked", o.marked, "marked labels (for --circuit search)");
    transpile_cmd->add_option("--theta-qubits", o.theta_qubits, "theta width (for search)");
    transpile_cmd->add_option("--iterations", o.iterations, "rounds (for search)");
    transpile_cmd->add_option("--max-iters", o.max_iters, "scan bound (for search)");
    transpile_cmd->add_option("--coupling-map", o.coupling_map, "device edge-list file");
    transpile_cmd->add_option("--layout", o.layout, "heuristic | identity");
    transpile_cmd->add_option("--dump-circuit", o.dump_circuit, "write the routed circuit here");

    // Pull config-file values in as low-priority arguments: they are placed
    // before the real command line, and every option keeps its last value.
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[i + 1];
        else if (args[i].starts_with("--config="))
            config_path = args[i].substr(9);
    }

    try {
        if (!config_path.empty() && !args.empty()) {
            CLI::App* sub = nullptr;
            for (CLI::App* s : app.get_subcommands({}))
                if (s->get_name() == args[0]) sub = s;
            if (sub != nullptr) {
                std::vector<std::string> allowed;
                for (const CLI::Option* opt : sub->get_options())
                    for (const std::string& l : opt->get_lnames()) allowed.push_back(l);
                std::vector<std::string> merged{args[0]};
                for (const auto& [line_no, kv] : read_config(config_path)) {
                    if (kv.first == "config" ||
                        std::find(allowed.begin(), allowed.end(), kv.first) == allowed.end())
                        throw ParseError("config file line " + std::to_string(line_no) +
                                         ": unknown key '" + kv.first + "'");
                    merged.push_back("--" + kv.first + "=" + kv.second);
                }
                merged.insert(merged.end(), args.begin() + 1, args.end());
                args = std::move(merged);
            }
        }

        std::vector<const char*> cargv{argv[0]};
        for (const std::string& a : args) cargv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(cargv.size()), cargv.data());
        } catch (const CLI::ParseError& e) {
            return app.exit(e);
        }

        std::string output;
        if (app.got_subcommand(walk_cmd)) output = cmd_walk(o);
        else if (app.got_subcommand(hit_cmd)) output = cmd_hitting_time(o);
        else if (app.got_subcommand(search_cmd)) output = cmd_search(o);
        else if (app.got_subcommand(grover_cmd)) output = cmd_grover(o);
        else if (app.got_subcommand(classical_cmd)) output = cmd_classical(o);
        else if (app.got_subcommand(noise_cmd)) output = cmd_noise(o);
        else if (app.got_subcommand(transpile_cmd)) output = cmd_transpile(o);
        deliver(output, o);
        return 0;
    } catch (const CapacityError& e) {
        std::cerr << "error (capacity): " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error (argument): " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
