#include "qwalk/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/statevector.hpp"

namespace qwalk {

namespace {

std::vector<bool> marked_mask(int n, const std::vector<std::uint64_t>& marked) {
    if (marked.empty()) throw ArgumentError("the marked set must be non-empty");
    std::vector<bool> mask(n, false);
    for (std::uint64_t m : marked) {
        if (m >= static_cast<std::uint64_t>(n))
            throw ArgumentError("marked state " + std::to_string(m) + " out of range");
        if (mask[m]) throw ArgumentError("marked state " + std::to_string(m) + " appears twice");
        mask[m] = true;
    }
    return mask;
}

std::vector<double> mat_vec(const TransitionMatrix& P, const std::vector<double>& v) {
    std::vector<double> out(P.n, 0.0);
    for (int row = 0; row < P.n; ++row) {
        double acc = 0.0;
        for (int col = 0; col < P.n; ++col) acc += P.at(row, col) * v[col];
        out[row] = acc;
    }
    return out;
}

// Period of an irreducible chain: gcd of level jumps l(u)+1-l(v) over all
// support edges u->v from a BFS labelling. Throws if some state is
// unreachable from state 0.
int chain_period(const TransitionMatrix& P) {
    const int n = P.n;
    std::vector<int> level(n, -1);
    std::queue<int> frontier;
    level[0] = 0;
    frontier.push(0);
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v = 0; v < n; ++v) {
            if (P.at(v, u) > 0.0 && level[v] < 0) {
                level[v] = level[u] + 1;
                frontier.push(v);
            }
        }
    }
    int g = 0;
    for (int u = 0; u < n; ++u) {
        if (level[u] < 0) throw ArgumentError("chain is not irreducible");
        for (int v = 0; v < n; ++v)
            if (P.at(v, u) > 0.0) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    }
    return std::max(g, 1);
}

}  // namespace

void validate_transition_matrix(const TransitionMatrix& P) {
    if (P.n < 1 || P.p.size() != static_cast<std::size_t>(P.n) * P.n)
        throw ValidationError("transition matrix has inconsistent dimensions");
    for (int col = 0; col < P.n; ++col) {
        double sum = 0.0;
        for (int row = 0; row < P.n; ++row) {
            const double x = P.at(row, col);
            if (!(x >= 0.0)) throw ValidationError("transition matrix has a negative entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw ValidationError("column " + std::to_string(col) + " sums to " +
                                  std::to_string(sum) + ", not 1");
    }
}

void validate_distribution(const std::vector<double>& v) {
    if (v.empty()) throw ValidationError("empty distribution");
    double sum = 0.0;
    for (double x : v) {
        if (!(x >= 0.0)) throw ValidationError("distribution has a negative entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("distribution sums to " + std::to_string(sum) + ", not 1");
}

TransitionMatrix transition_matrix(const WalkGraph& graph) {
    const int n = graph.n_nodes();
    TransitionMatrix P{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
    const double w = 1.0 / graph.degree();
    for (int v = 0; v < n; ++v)
        for (int a = 0; a < graph.degree(); ++a) P.at(graph.neighbor(v, a), v) += w;
    return P;
}

TransitionMatrix example_chain_3() {
    return TransitionMatrix{3, {0.1, 0.3, 0.3,
                                0.1, 0.1, 0.2,
                                0.8, 0.6, 0.5}};
}

std::vector<double> evolve(const TransitionMatrix& P, const std::vector<double>& v0, int t) {
    validate_transition_matrix(P);
    validate_distribution(v0);
    if (v0.size() != static_cast<std::size_t>(P.n))
        throw ArgumentError("distribution length does not match the chain");
    if (t < 0) throw ArgumentError("step count must be nonnegative");
    std::vector<double> v = v0;
    for (int step = 0; step < t; ++step) v = mat_vec(P, v);
    return v;
}

StationaryResult stationary_distribution(const TransitionMatrix& P) {
    validate_transition_matrix(P);
    StationaryResult result;
    result.periodic = chain_period(P) > 1;

    // Lazy chain (P+I)/2 shares P's fixed point and always converges.
    std::vector<double> v(P.n, 1.0 / P.n);
    for (int iter = 0; iter < 1000000; ++iter) {
        std::vector<double> pv = mat_vec(P, v);
        double diff = 0.0;
        for (int i = 0; i < P.n; ++i) {
            pv[i] = 0.5 * (pv[i] + v[i]);
            diff += std::abs(pv[i] - v[i]);
        }
        v = std::move(pv);
        if (diff < 1e-15) break;
    }
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= sum;

    const std::vector<double> check = mat_vec(P, v);
    for (int i = 0; i < P.n; ++i)
        if (std::abs(check[i] - v[i]) > 1e-10)
            throw DivergenceError("power iteration did not reach a fixed point");
    result.pi = std::move(v);
    return result;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw ArgumentError("distributions differ in length");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

int mixing_time(const TransitionMatrix& P, double eps, int cap) {
    if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
    const std::vector<double> pi = stationary_distribution(P).pi;

    // One distribution per basis start, evolved in lock-step.
    std::vector<std::vector<double>> from(P.n, std::vector<double>(P.n, 0.0));
    for (int x = 0; x < P.n; ++x) from[x][x] = 1.0;
    for (int t = 0; t <= cap; ++t) {
        double worst = 0.0;
        for (int x = 0; x < P.n; ++x) worst = std::max(worst, total_variation(from[x], pi));
        if (worst <= eps) return t;
        for (int x = 0; x < P.n; ++x) from[x] = mat_vec(P, from[x]);
    }
    throw NotMixingError("no t <= " + std::to_string(cap) + " mixes to eps = " +
                         std::to_string(eps) + " (periodic chain?)");
}

double classical_hitting_time(const TransitionMatrix& P, const std::vector<double>& start,
                              const std::vector<std::uint64_t>& marked) {
    validate_transition_matrix(P);
    validate_distribution(start);
    if (start.size() != static_cast<std::size_t>(P.n))
        throw ArgumentError("start distribution length does not match the chain");
    const std::vector<bool> mask = marked_mask(P.n, marked);

    std::vector<int> unmarked;
    for (int x = 0; x < P.n; ++x)
        if (!mask[x]) unmarked.push_back(x);
    const int m = static_cast<int>(unmarked.size());
    if (m == 0) return 0.0;

    // h_x = 1 + sum_{y unmarked} P(y <- x) h_y; row i is the equation for
    // x = unmarked[i], column j the coefficient of h_{unmarked[j]}.
    std::vector<double> a(static_cast<std::size_t>(m) * (m + 1), 0.0);
    auto A = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * (m + 1) + c]; };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - P.at(unmarked[j], unmarked[i]);
        A(i, m) = 1.0;
    }

    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(A(r, col)) > std::abs(A(pivot, col))) pivot = r;
        if (std::abs(A(pivot, col)) < 1e-12)
            throw DivergenceError("hitting time diverges: marked set unreachable");
        if (pivot != col)
            for (int c = col; c <= m; ++c) std::swap(A(pivot, c), A(col, c));
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = A(r, col) / A(col, col);
            if (f == 0.0) continue;
            for (int c = col; c <= m; ++c) A(r, c) -= f * A(col, c);
        }
    }

    double expected = 0.0;
    for (int i = 0; i < m; ++i) {
        const double h = A(i, m) / A(i, i);
        if (!std::isfinite(h) || h < 0.0)
            throw DivergenceError("hitting time diverges: marked set unreachable");
        expected += start[unmarked[i]] * h;
    }
    return expected;
}

double monte_carlo_hitting_time(const TransitionMatrix& P, const std::vector<double>& start,
                                const std::vector<std::uint64_t>& marked, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t cap) {
    validate_transition_matrix(P);
    validate_distribution(start);
    if (start.size() != static_cast<std::size_t>(P.n))
        throw ArgumentError("start distribution length does not match the chain");
    if (trials < 1) throw ArgumentError("trials must be at least 1");
    const std::vector<bool> mask = marked_mask(P.n, marked);

    std::vector<std::vector<double>> column(P.n, std::vector<double>(P.n));
    for (int x = 0; x < P.n; ++x)
        for (int y = 0; y < P.n; ++y) column[x][y] = P.at(y, x);

    double total_steps = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(derive_stream(seed, trial, kStreamTrial));
        std::size_t state = sample_index(start, rng.next_double());
        std::uint64_t steps = 0;
        while (!mask[state]) {
            if (++steps > cap)
                throw DivergenceError("trial exceeded " + std::to_string(cap) + " steps");
            state = sample_index(column[state], rng.next_double());
        }
        total_steps += static_cast<double>(steps);
    }
    return total_steps / static_cast<double>(trials);
}

}  // namespace qwalk
