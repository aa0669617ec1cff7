#pragma once

#include <cstdint>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

// Column-stochastic transition matrix: column x is the next-state
// distribution from state x, so v_{t+1} = P v_t.
struct TransitionMatrix {
    int n = 0;
    std::vector<double> p;  // row-major, p[row * n + col]

    double& at(int row, int col) { return p[static_cast<std::size_t>(row) * n + col]; }
    double at(int row, int col) const { return p[static_cast<std::size_t>(row) * n + col]; }
};

// Throws ValidationError unless entries are nonnegative and every column
// sums to 1 within 1e-12.
void validate_transition_matrix(const TransitionMatrix& P);

// Throws ValidationError unless v is nonnegative and sums to 1 within 1e-12.
void validate_distribution(const std::vector<double>& v);

// Uniform over graph neighbors (complete graph includes the self-loop).
TransitionMatrix transition_matrix(const WalkGraph& graph);

// The 3-state demo chain (columns: (0.1,0.1,0.8), (0.3,0.1,0.6), (0.3,0.2,0.5)).
TransitionMatrix example_chain_3();

// P^t v0.
std::vector<double> evolve(const TransitionMatrix& P, const std::vector<double>& v0, int t);

struct StationaryResult {
    std::vector<double> pi;  // fixed point: P pi = pi within 1e-10
    bool periodic = false;   // true for period > 1 chains (they never mix)
};

// Power iteration on the lazy chain (P+I)/2; the fixed point is shared with
// P. Periodicity detected structurally (gcd of BFS-level jumps).
StationaryResult stationary_distribution(const TransitionMatrix& P);

// (1/2) sum |p - q|.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// Least t with max-over-start-states D(P^t(x,.), pi) <= eps, by direct
// evolution from every basis state. Throws NotMixingError past `cap` steps
// (periodic chains never mix).
int mixing_time(const TransitionMatrix& P, double eps, int cap = 4096);

// Expected first-passage time into `marked`, averaged over `start`; h = 0 on
// marked states, linear solve on the rest. Throws DivergenceError when the
// system is singular (marked set unreachable).
double classical_hitting_time(const TransitionMatrix& P, const std::vector<double>& start,
                              const std::vector<std::uint64_t>& marked);

// Monte-Carlo estimate of the same expectation: per-trial seeded streams,
// so the result is independent of evaluation order. Throws DivergenceError
// if a trial exceeds `cap` steps.
double monte_carlo_hitting_time(const TransitionMatrix& P, const std::vector<double>& start,
                                const std::vector<std::uint64_t>& marked, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t cap = 1u << 20);

}  // namespace qwalk
