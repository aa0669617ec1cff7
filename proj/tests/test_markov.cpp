#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "qwalk/errors.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

std::vector<double> basis_dist(int n, int x) {
    std::vector<double> v(n, 0.0);
    v[x] = 1.0;
    return v;
}

std::vector<double> uniform_dist(int n) { return std::vector<double>(n, 1.0 / n); }

}  // namespace

TEST_CASE("graph transition matrices") {
    // complete N=4: every entry 0.25, self-loop included.
    TransitionMatrix com = transition_matrix(WalkGraph::complete(4));
    validate_transition_matrix(com);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(com.at(r, c) == 0.25);

    // hypercube n=4: 0.25 exactly at Hamming distance 1.
    TransitionMatrix hc = transition_matrix(WalkGraph::hypercube(4));
    validate_transition_matrix(hc);
    for (int x = 0; x < 16; ++x)
        for (int y = 0; y < 16; ++y)
            CHECK(hc.at(y, x) == (std::popcount(unsigned(x ^ y)) == 1 ? 0.25 : 0.0));

    // bipartite N=8: 0.25 between opposite sets (leading bit), 0 within.
    TransitionMatrix bip = transition_matrix(WalkGraph::complete_bipartite(8));
    validate_transition_matrix(bip);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
            CHECK(bip.at(y, x) == ((x >> 2) != (y >> 2) ? 0.25 : 0.0));

    // lattice: 4 neighbors each, symmetric, doubly stochastic.
    TransitionMatrix lat = transition_matrix(WalkGraph::lattice2d(4));
    validate_transition_matrix(lat);
    for (int x = 0; x < 16; ++x) {
        double row = 0.0;
        for (int y = 0; y < 16; ++y) {
            row += lat.at(x, y);
            CHECK(lat.at(x, y) == lat.at(y, x));
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("matrix and distribution validation") {
    TransitionMatrix bad{2, {0.5, 0.5, 0.4, 0.5}};  // column 1 sums to 1, col 0: 0.9
    CHECK_THROWS_AS(validate_transition_matrix(bad), ValidationError);
    TransitionMatrix neg{1, {-1.0}};
    CHECK_THROWS_AS(validate_transition_matrix(neg), ValidationError);
    CHECK_THROWS_AS(validate_distribution({0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(validate_distribution({1.5, -0.5}), ValidationError);
    CHECK_THROWS_AS(validate_distribution({}), ValidationError);
    validate_distribution({0.25, 0.75});
}

TEST_CASE("evolve follows v_t = P^t v_0") {
    TransitionMatrix chain = example_chain_3();
    validate_transition_matrix(chain);

    // t = 0 is the identity.
    CHECK(evolve(chain, {1.0, 0.0, 0.0}, 0) == std::vector<double>{1.0, 0.0, 0.0});

    // One step from state 0 reads off the first column.
    const std::vector<double> v1 = evolve(chain, {1.0, 0.0, 0.0}, 1);
    CHECK(v1[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(v1[1] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(v1[2] == doctest::Approx(0.8).epsilon(1e-14));

    CHECK_THROWS_AS(evolve(chain, {1.0, 0.0}, 1), ArgumentError);
    CHECK_THROWS_AS(evolve(chain, {1.0, 0.0, 0.0}, -1), ArgumentError);
}

TEST_CASE("hypercube walk alternates parity forever") {
    TransitionMatrix hc = transition_matrix(WalkGraph::hypercube(4));
    std::vector<double> v = basis_dist(16, 0);
    for (int t = 1; t <= 12; ++t) {
        v = evolve(hc, v, 1);
        double odd_mass = 0.0;
        for (int y = 0; y < 16; ++y)
            if (std::popcount(unsigned(y)) % 2 == 1) odd_mass += v[y];
        CHECK(std::abs(odd_mass - (t % 2 ? 1.0 : 0.0)) < 1e-12);
        double sum = 0.0;
        for (double x : v) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("stationary distributions") {
    // complete N=16: uniform, aperiodic (self-loops).
    StationaryResult com = stationary_distribution(transition_matrix(WalkGraph::complete(16)));
    CHECK_FALSE(com.periodic);
    for (double x : com.pi) CHECK(x == doctest::Approx(1.0 / 16).epsilon(1e-10));

    // hypercube: uniform fixed point but period 2.
    StationaryResult hc = stationary_distribution(transition_matrix(WalkGraph::hypercube(4)));
    CHECK(hc.periodic);
    for (double x : hc.pi) CHECK(x == doctest::Approx(1.0 / 16).epsilon(1e-10));

    CHECK(stationary_distribution(transition_matrix(WalkGraph::lattice2d(4))).periodic);
    CHECK(stationary_distribution(transition_matrix(WalkGraph::complete_bipartite(8))).periodic);
    CHECK_FALSE(stationary_distribution(example_chain_3()).periodic);
}

TEST_CASE("3-state chain fixed point matches a direct solve") {
    TransitionMatrix chain = example_chain_3();
    StationaryResult st = stationary_distribution(chain);

    // Independent oracle: solve P pi = pi with sum(pi) = 1 by hand,
    // substituting p0 = 1 - p1 - p2 into the first two balance equations.
    // Row 0: 0.1 p0 + 0.3 p1 + 0.3 p2 = p0  ->  p1 + p2 = 0.75, so p0 = 0.25.
    // Row 1: 0.1 p0 + 0.1 p1 + 0.2 p2 = p1  ->  p1 = 0.1 + 0.1 p2.
    // Together: 1.1 p1 = 0.175 -> p1 = 0.1590909..., p2 = 0.5909090...
    CHECK(st.pi[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(st.pi[1] == doctest::Approx(0.175 / 1.1).epsilon(1e-10));
    CHECK(st.pi[2] == doctest::Approx(0.75 - 0.175 / 1.1).epsilon(1e-10));

    // Fixed-point property, directly.
    const std::vector<double> next = evolve(chain, st.pi, 1);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(next[i] - st.pi[i]) < 1e-10);
}

TEST_CASE("total variation distance") {
    CHECK(total_variation({0.5, 0.5}, {0.5, 0.5}) == 0.0);
    CHECK(total_variation({1.0, 0.0}, {0.0, 1.0}) == 1.0);
    CHECK(total_variation({1.0, 0.0}, {0.5, 0.5}) == 0.5);
    CHECK_THROWS_AS(total_variation({1.0}, {0.5, 0.5}), ArgumentError);
}

TEST_CASE("mixing times") {
    // One step of the complete graph is exactly uniform.
    CHECK(mixing_time(transition_matrix(WalkGraph::complete(16)), 0.01) == 1);

    // The 3-state chain mixes; the returned t is minimal.
    TransitionMatrix chain = example_chain_3();
    const double eps = 1e-6;
    const int t = mixing_time(chain, eps);
    CHECK(t > 0);
    const std::vector<double> pi = stationary_distribution(chain).pi;
    double worst_at_t = 0.0, worst_before = 0.0;
    for (int x = 0; x < 3; ++x) {
        worst_at_t = std::max(worst_at_t, total_variation(evolve(chain, basis_dist(3, x), t), pi));
        worst_before =
            std::max(worst_before, total_variation(evolve(chain, basis_dist(3, x), t - 1), pi));
    }
    CHECK(worst_at_t <= eps);
    CHECK(worst_before > eps);

    // Periodic chains never mix.
    CHECK_THROWS_AS(mixing_time(transition_matrix(WalkGraph::hypercube(4)), 0.01, 512),
                    NotMixingError);
    CHECK_THROWS_AS(mixing_time(chain, 0.0), ArgumentError);
}

TEST_CASE("complete graph hitting times are geometric") {
    TransitionMatrix com = transition_matrix(WalkGraph::complete(16));

    // From any unmarked start: mean of Geometric(|M|/N) = N/|M| = 8, exact.
    CHECK(classical_hitting_time(com, basis_dist(16, 0), {11, 15}) ==
          doctest::Approx(8.0).epsilon(1e-12));

    // Uniform start blends in P(start marked) = 1/8: (14/16)*8 = 7.
    CHECK(classical_hitting_time(com, uniform_dist(16), {11, 15}) ==
          doctest::Approx(7.0).epsilon(1e-12));

    // Point mass on a marked node: zero steps.
    CHECK(classical_hitting_time(com, basis_dist(16, 11), {11, 15}) == 0.0);
}

TEST_CASE("small cycle hitting time matches the textbook value") {
    // hypercube dim 2 is the 4-cycle; expected time to the antipode is 4.
    TransitionMatrix c4 = transition_matrix(WalkGraph::hypercube(2));
    CHECK(classical_hitting_time(c4, basis_dist(4, 0), {3}) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("3-state chain hitting time matches a hand solve") {
    TransitionMatrix chain = example_chain_3();
    // Marked {2}: h0 = 1 + 0.1 h0 + 0.1 h1, h1 = 1 + 0.3 h0 + 0.1 h1
    // -> 0.9 h0 - 0.1 h1 = 1 and -0.3 h0 + 0.9 h1 = 1
    // -> h0 = (0.9 + 0.1) / (0.81 - 0.03) ... solve: h0 = 1/0.78*(0.9+0.1)?
    // Cramer: D = 0.9*0.9 - (-0.1)(-0.3) = 0.78; h0 = (1*0.9 - (-0.1)*1)/D
    // = 1.0/0.78; h1 = (0.9*1 - (-0.3)*1)/D = 1.2/0.78.
    CHECK(classical_hitting_time(chain, basis_dist(3, 0), {2}) ==
          doctest::Approx(1.0 / 0.78).epsilon(1e-12));
    CHECK(classical_hitting_time(chain, basis_dist(3, 1), {2}) ==
          doctest::Approx(1.2 / 0.78).epsilon(1e-12));
}

TEST_CASE("unreachable marked set raises divergence") {
    // Two disconnected 2-cycles; marked lives in the other component.
    TransitionMatrix split{4, {0, 1, 0, 0,
                               1, 0, 0, 0,
                               0, 0, 0, 1,
                               0, 0, 1, 0}};
    validate_transition_matrix(split);
    CHECK_THROWS_AS(classical_hitting_time(split, basis_dist(4, 0), {3}), DivergenceError);
    CHECK_THROWS_AS(monte_carlo_hitting_time(split, basis_dist(4, 0), {3}, 4, 1, 1000),
                    DivergenceError);
    CHECK_THROWS_AS(stationary_distribution(split), ArgumentError);  // not irreducible
}

TEST_CASE("hitting time argument errors") {
    TransitionMatrix com = transition_matrix(WalkGraph::complete(4));
    CHECK_THROWS_AS(classical_hitting_time(com, basis_dist(4, 0), {}), ArgumentError);
    CHECK_THROWS_AS(classical_hitting_time(com, basis_dist(4, 0), {4}), ArgumentError);
    CHECK_THROWS_AS(classical_hitting_time(com, basis_dist(4, 0), {1, 1}), ArgumentError);
    CHECK_THROWS_AS(classical_hitting_time(com, basis_dist(3, 0), {1}), ArgumentError);
    CHECK_THROWS_AS(monte_carlo_hitting_time(com, basis_dist(4, 0), {1}, 0, 1), ArgumentError);
}

TEST_CASE("linear solve agrees with Monte-Carlo on the hypercube corner run") {
    TransitionMatrix hc = transition_matrix(WalkGraph::hypercube(4));
    const double exact = classical_hitting_time(hc, basis_dist(16, 0), {15});
    const double mc = monte_carlo_hitting_time(hc, basis_dist(16, 0), {15}, 200000, 17);
    CHECK(std::abs(mc - exact) / exact < 0.02);
}

TEST_CASE("linear solve agrees with Monte-Carlo on all four graphs") {
    struct Case {
        WalkGraph g;
        std::vector<std::uint64_t> marked;
    };
    const std::vector<Case> cases = {
        {WalkGraph::hypercube(4), {0b1011}},
        {WalkGraph::lattice2d(4), {0b1011}},
        {WalkGraph::complete_bipartite(8), {0b011}},
        {WalkGraph::complete(16), {0b1011, 0b1111}},
    };
    for (const Case& c : cases) {
        TransitionMatrix P = transition_matrix(c.g);
        const std::vector<double> start = uniform_dist(P.n);
        const double exact = classical_hitting_time(P, start, c.marked);
        const double mc = monte_carlo_hitting_time(P, start, c.marked, 100000, 23);
        CHECK(std::abs(mc - exact) / exact < 0.05);
    }
}

TEST_CASE("Monte-Carlo runs are seed-deterministic") {
    TransitionMatrix hc = transition_matrix(WalkGraph::hypercube(4));
    const double a = monte_carlo_hitting_time(hc, basis_dist(16, 0), {15}, 2000, 99);
    const double b = monte_carlo_hitting_time(hc, basis_dist(16, 0), {15}, 2000, 99);
    const double c = monte_carlo_hitting_time(hc, basis_dist(16, 0), {15}, 2000, 100);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("quantum hitting iterations undercut the classical expectation") {
    struct Case {
        WalkGraph g;
        std::vector<std::uint64_t> marked;
        int quantum_hits;
    };
    const std::vector<Case> cases = {
        {WalkGraph::hypercube(4), {0b1011}, 3},
        {WalkGraph::lattice2d(4), {0b1011}, 3},
        {WalkGraph::complete_bipartite(8), {0b011}, 2},
        {WalkGraph::complete(16), {0b1011, 0b1111}, 2},
    };
    for (const Case& c : cases) {
        TransitionMatrix P = transition_matrix(c.g);
        const double classical = classical_hitting_time(P, uniform_dist(P.n), c.marked);
        CHECK(static_cast<double>(c.quantum_hits) <= classical);
    }
}
