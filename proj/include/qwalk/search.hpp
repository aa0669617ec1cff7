#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/circuit.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Parses and validates marked-node labels (MSB-first bitstrings of
// node-register width). Distinct, in range.
std::vector<std::uint64_t> marked_indices(const WalkGraph& graph,
                                          const std::vector<std::string>& marked);

// Multiplies by -1 the amplitude of every basis state whose node register
// holds a marked label; coin (and any appended registers) untouched. Width =
// coin + node. Empty set gives the identity.
Circuit phase_oracle(const WalkGraph& graph, const std::vector<std::string>& marked);

// One reflection of the search loop: phase estimation of the walk step into
// t theta qubits, a phase flip on the all-zero theta state (the literal
// "flip when theta != 0" times an unobservable global -1), then the inverse
// estimation. Width = coin + node + t; theta is the top t qubits.
Circuit reflection_step(const WalkGraph& graph, int t);

struct SearchConfig {
    WalkGraph graph;
    std::vector<std::string> marked;
    int t = 2;               // theta-register width
    int iterations = 0;      // oracle+reflection rounds
    std::uint64_t shots = 1024;
    std::uint64_t seed = 1;
};

struct SearchResult {
    std::string graph;
    std::vector<std::string> marked;
    int t = 0;
    int iterations = 0;
    std::vector<double> trace;  // marked-node probability; [0] = after init
    CountsHistogram counts;     // node register, MSB-first labels
    int hitting_time = 0;       // earliest argmax of trace
    double hitting_probability = 0.0;
    double epsilon = 0.0;            // |M| / N
    double theoretical_scale = 0.0;  // 1 / sqrt(epsilon)
};

// Exact per-iteration marked probability (statevector, no sampling).
std::vector<double> marked_probability_trace(const WalkGraph& graph,
                                             const std::vector<std::string>& marked, int t,
                                             int iterations);

// The whole search as one circuit: H on coin+node, then `iterations` rounds
// of phase oracle followed by reflection. Width = coin + node + t.
Circuit search_circuit(const WalkGraph& graph, const std::vector<std::string>& marked, int t,
                       int iterations);

SearchResult mnrs_search(const SearchConfig& config);

// Earliest iteration (<= max_iters) maximizing the marked probability.
std::pair<int, double> hitting_time(const WalkGraph& graph,
                                    const std::vector<std::string>& marked, int t, int max_iters);

// 1 / sqrt(m / N): the O(1/sqrt(epsilon)) iteration scale.
double theoretical_iterations(int n_nodes, int n_marked);

// Smallest theta width that reproduces the reference success probabilities,
// fixed empirically per graph family (hypercube/lattice: 3, bipartite and
// complete: 2; see docs).
int default_theta_width(const WalkGraph& graph);

// Plain Grover search over n qubits for one marked label, run for
// floor(pi/4 * sqrt(N)) oracle+diffusion rounds.
SearchResult grover_search(int n_qubits, const std::string& marked_label,
                           std::uint64_t shots = 1024, std::uint64_t seed = 1);

}  // namespace qwalk
