#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"
#include "test_util.hpp"

using namespace qwalk;
using namespace qwalk::testutil;

namespace {

Matrix grover_formula(int d) {
    Matrix g(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = (r == c ? -1.0 : 0.0) + 2.0 / d;
    return g;
}

// Image of a basis state under a permutation circuit; asserts the image is a
// single basis state with amplitude exactly moved (not recomputed).
std::uint64_t permute_basis(const Circuit& ck, std::uint64_t index) {
    StateVector s = StateVector::basis(ck.n_qubits(), index);
    run_inplace(ck, s);
    std::uint64_t hit = s.size();
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        if (std::abs(s.amps()[i]) > 0.5) {
            REQUIRE(hit == s.size());  // exactly one
            REQUIRE(std::abs(s.amps()[i] - Complex{1.0, 0.0}) < 1e-12);
            hit = i;
        }
    }
    REQUIRE(hit < s.size());
    return hit;
}

std::uint64_t pack(const WalkRegisters& regs, std::uint64_t coin, std::uint64_t node) {
    return coin | (node << regs.coin_count);
}

}  // namespace

TEST_CASE("graph shape and registers") {
    const WalkGraph hc = WalkGraph::hypercube(4);
    CHECK(hc.n_nodes() == 16);
    CHECK(hc.degree() == 4);
    CHECK(registers_for(hc).coin_count == 2);
    CHECK(registers_for(hc).node_count == 4);
    CHECK(hc.name() == "hypercube-4");

    const WalkGraph lat = WalkGraph::lattice2d(4);
    CHECK(lat.n_nodes() == 16);
    CHECK(lat.degree() == 4);
    CHECK(registers_for(lat).coin_count == 2);
    CHECK(registers_for(lat).node_count == 4);

    const WalkGraph bip = WalkGraph::complete_bipartite(8);
    CHECK(bip.n_nodes() == 8);
    CHECK(bip.degree() == 4);
    CHECK(registers_for(bip).coin_count == 2);
    CHECK(registers_for(bip).node_count == 3);

    const WalkGraph com = WalkGraph::complete(16);
    CHECK(com.n_nodes() == 16);
    CHECK(com.degree() == 16);
    CHECK(registers_for(com).coin_count == 4);
    CHECK(registers_for(com).node_count == 4);

    CHECK(registers_for(com).coin_qubits() == std::vector<int>{0, 1, 2, 3});
    CHECK(registers_for(com).node_qubits() == std::vector<int>{4, 5, 6, 7});

    CHECK_THROWS_AS(WalkGraph::hypercube(3), ArgumentError);
    CHECK_THROWS_AS(WalkGraph::hypercube(1), ArgumentError);
    CHECK_THROWS_AS(WalkGraph::lattice2d(3), ArgumentError);
    CHECK_THROWS_AS(WalkGraph::lattice2d(1), ArgumentError);
    CHECK_THROWS_AS(WalkGraph::complete_bipartite(6), ArgumentError);
    CHECK_THROWS_AS(WalkGraph::complete_bipartite(2), ArgumentError);
    CHECK_THROWS_AS(WalkGraph::complete(3), ArgumentError);
}

TEST_CASE("neighbor tables") {
    const WalkGraph hc = WalkGraph::hypercube(4);
    CHECK(hc.neighbors(0) == std::vector<int>{8, 4, 2, 1});
    CHECK(hc.neighbors(0b1010) == std::vector<int>{0b0010, 0b1110, 0b1000, 0b1011});

    const WalkGraph lat = WalkGraph::lattice2d(4);
    // v = x*4 + y; coin (d,s): a=0 x+1, a=1 x-1, a=2 y+1, a=3 y-1.
    CHECK(lat.neighbors(3 * 4 + 2) == std::vector<int>{0 * 4 + 2, 2 * 4 + 2, 3 * 4 + 3, 3 * 4 + 1});
    CHECK(lat.neighbors(0) == std::vector<int>{4, 12, 1, 3});

    const WalkGraph bip = WalkGraph::complete_bipartite(8);
    CHECK(bip.neighbors(3) == std::vector<int>{4, 5, 6, 7});
    CHECK(bip.neighbors(5) == std::vector<int>{0, 1, 2, 3});

    const WalkGraph com = WalkGraph::complete(4);
    CHECK(com.neighbors(2) == std::vector<int>{0, 1, 2, 3});

    CHECK_THROWS_AS(hc.neighbor(16, 0), ArgumentError);
    CHECK_THROWS_AS(hc.neighbor(0, 4), ArgumentError);
}

TEST_CASE("grover coin equals the diffusion formula exactly") {
    for (int c = 1; c <= 3; ++c) {
        const int d = 1 << c;
        Matrix m = matrix_of(grover_coin(c));
        CHECK(equal_up_to_global_phase(m, grover_formula(d), 1e-12));
        CHECK(approx_equal(m, grover_formula(d), 1e-12));  // exact, no stray -1
        CHECK(approx_equal(m * m, Matrix::identity(d), 1e-12));  // involution
    }
    // d = 2: formula gives plain X.
    CHECK(approx_equal(matrix_of(grover_coin(1)), Matrix(2, {0, 1, 1, 0}), 1e-12));
    // d = 4: diagonal -1/2, off-diagonal 1/2.
    Matrix g4 = grover_formula(4);
    CHECK(g4(0, 0) == Complex{-0.5, 0.0});
    CHECK(g4(2, 1) == Complex{0.5, 0.0});
    CHECK(approx_equal(matrix_of(grover_coin(2)), g4, 1e-12));
}

TEST_CASE("uniform coin state is a +1 eigenvector of the diffusion") {
    for (int c = 1; c <= 3; ++c) {
        StateVector s(c);
        for (int q = 0; q < c; ++q) apply_gate(s, target_matrix(h(0)), {q});
        StateVector out = run(grover_coin(c), s);
        Complex overlap{0.0, 0.0};
        for (std::uint64_t i = 0; i < s.size(); ++i) overlap += std::conj(s.amps()[i]) * out.amps()[i];
        CHECK(std::abs(overlap - Complex{1.0, 0.0}) < 1e-12);  // eigenvalue +1, not -1
    }
}

TEST_CASE("grover coin spectrum: one +1, d-1 copies of -1") {
    for (int c = 1; c <= 3; ++c) {
        const int d = 1 << c;
        Matrix m = matrix_of(grover_coin(c));
        // Trace (sum of eigenvalues) = 2 - d; with the involution and
        // real-symmetry checks above this pins the spectrum {+1 once,
        // -1 x (d-1)}.
        Complex tr{0.0, 0.0};
        for (int i = 0; i < d; ++i) tr += m(i, i);
        CHECK(std::abs(tr - Complex(2.0 - d, 0.0)) < 1e-9);
    }
}

TEST_CASE("hypercube shift") {
    const WalkGraph g = WalkGraph::hypercube(4);
    const WalkRegisters regs = registers_for(g);
    Circuit sh = shift_hypercube(4);

    // |a=00>|0000> -> |00>|1000>; |a=11>|0000> -> |11>|0001>.
    CHECK(permute_basis(sh, pack(regs, 0b00, 0b0000)) == pack(regs, 0b00, 0b1000));
    CHECK(permute_basis(sh, pack(regs, 0b11, 0b0000)) == pack(regs, 0b11, 0b0001));

    // Full oracle: node part moves to neighbor(v, a), coin part unchanged.
    for (int a = 0; a < 4; ++a)
        for (int v = 0; v < 16; ++v) {
            const std::uint64_t out = permute_basis(sh, pack(regs, a, v));
            CHECK((out & 0b11) == static_cast<std::uint64_t>(a));
            CHECK(static_cast<int>(out >> 2) == g.neighbor(v, a));
        }

    CHECK(is_permutation_matrix(matrix_of(sh), 1e-12));
    CHECK(approx_equal(matrix_of(power(sh, 2)), Matrix::identity(64), 1e-12));
}

TEST_CASE("lattice shift") {
    const WalkGraph g = WalkGraph::lattice2d(4);
    const WalkRegisters regs = registers_for(g);
    Circuit sh = shift_lattice(4);

    // |d=0,s=0>|x=3,y=2> -> |d=0,s=1>|x=0,y=2>.
    CHECK(permute_basis(sh, pack(regs, 0b00, 3 * 4 + 2)) == pack(regs, 0b01, 0 * 4 + 2));
    // |d=1,s=1>|0,0> -> |d=1,s=0>|0,3>.
    CHECK(permute_basis(sh, pack(regs, 0b11, 0)) == pack(regs, 0b10, 3));

    // Full oracle: node -> neighbor(v, a), coin -> (d, s^1).
    for (int a = 0; a < 4; ++a)
        for (int v = 0; v < 16; ++v) {
            const std::uint64_t out = permute_basis(sh, pack(regs, a, v));
            CHECK(static_cast<int>(out & 0b11) == (a ^ 1));
            CHECK(static_cast<int>(out >> 2) == g.neighbor(v, a));
        }

    CHECK(is_permutation_matrix(matrix_of(sh), 1e-12));
    CHECK(approx_equal(matrix_of(power(sh, 2)), Matrix::identity(64), 1e-12));
}

TEST_CASE("bipartite shift") {
    const WalkGraph g = WalkGraph::complete_bipartite(8);
    const WalkRegisters regs = registers_for(g);
    Circuit sh = shift_bipartite(8);

    // |c=01>|j=011> -> |11>|101> (labels MSB-first).
    CHECK(permute_basis(sh, pack(regs, 0b01, 0b011)) == pack(regs, 0b11, 0b101));
    // |c=00>|j=000> -> |00>|100>.
    CHECK(permute_basis(sh, pack(regs, 0b00, 0b000)) == pack(regs, 0b00, 0b100));

    // Full oracle: node -> neighbor(v, a) (leading bit flipped, rest = coin),
    // coin -> low bits of the old node. Bipartition always alternates.
    for (int a = 0; a < 4; ++a)
        for (int v = 0; v < 8; ++v) {
            const std::uint64_t out = permute_basis(sh, pack(regs, a, v));
            CHECK(static_cast<int>(out >> 2) == g.neighbor(v, a));
            CHECK(static_cast<int>(out & 0b11) == (v & 0b11));
            CHECK(((out >> 4) & 1) == 1 - ((v >> 2) & 1));
        }

    CHECK(is_permutation_matrix(matrix_of(sh), 1e-12));
    CHECK(approx_equal(matrix_of(power(sh, 2)), Matrix::identity(32), 1e-12));
}

TEST_CASE("complete shift") {
    const WalkGraph g16 = WalkGraph::complete(16);
    const WalkRegisters regs = registers_for(g16);
    Circuit sh = shift_complete(16);

    CHECK(permute_basis(sh, pack(regs, 0b1011, 0b0000)) == pack(regs, 0b0000, 0b1011));

    for (int a = 0; a < 16; a += 3)
        for (int v = 0; v < 16; ++v) {
            const std::uint64_t out = permute_basis(sh, pack(regs, a, v));
            CHECK(static_cast<int>(out >> 4) == g16.neighbor(v, a));
            CHECK(static_cast<int>(out & 0b1111) == v);
        }

    CHECK(is_permutation_matrix(matrix_of(shift_complete(4)), 1e-12));
    CHECK(approx_equal(matrix_of(power(shift_complete(4), 2)), Matrix::identity(16), 1e-12));
}

TEST_CASE("walk step = coin then shift") {
    for (const WalkGraph& g : {WalkGraph::hypercube(4), WalkGraph::complete_bipartite(8)}) {
        const WalkRegisters regs = registers_for(g);
        Matrix got = matrix_of(walk_step(g));
        Matrix expect = matrix_of(shift_of(g)) *
                        kron(Matrix::identity(std::size_t{1} << regs.node_count),
                             matrix_of(grover_coin(regs.coin_count)));
        CHECK(approx_equal(got, expect, 1e-10));
        CHECK(got.is_unitary(1e-9));
    }
}

TEST_CASE("hypercube walk step spreads to the four neighbors") {
    const WalkGraph g = WalkGraph::hypercube(4);
    const WalkRegisters regs = registers_for(g);
    StateVector s(regs.total());  // |00>|0000>
    run_inplace(walk_step(g), s);
    auto node_marg = marginal_probabilities(s, regs.node_qubits());
    for (int v = 0; v < 16; ++v) {
        const bool neighbor_of_0 = v == 1 || v == 2 || v == 4 || v == 8;
        CHECK(node_marg[v] == doctest::Approx(neighbor_of_0 ? 0.25 : 0.0).epsilon(1e-10));
    }
}

TEST_CASE("hypercube step moves Hamming weight by exactly one") {
    const WalkGraph g = WalkGraph::hypercube(4);
    const WalkRegisters regs = registers_for(g);
    Circuit step = walk_step(g);
    for (std::uint64_t idx = 0; idx < 64; idx += 5) {
        StateVector s = StateVector::basis(regs.total(), idx);
        run_inplace(step, s);
        const int w0 = std::popcount(idx >> 2);
        auto marg = marginal_probabilities(s, regs.node_qubits());
        for (std::uint64_t v = 0; v < 16; ++v) {
            const int dw = std::abs(std::popcount(v) - w0);
            if (dw != 1) CHECK(marg[v] < 1e-12);
        }
    }
}

TEST_CASE("walk norm stays fixed over many steps") {
    const WalkGraph g = WalkGraph::lattice2d(4);
    Circuit step = walk_step(g);
    StateVector s = random_state(registers_for(g).total(), 202);
    for (int i = 0; i < 10; ++i) {
        run_inplace(step, s);
        CHECK(std::abs(s.norm_sq() - 1.0) < 1e-9);
    }
}

TEST_CASE("complete-graph walk fixes the uniform state up to phase") {
    const WalkGraph g = WalkGraph::complete(4);
    const WalkRegisters regs = registers_for(g);
    StateVector u(regs.total());
    for (int q = 0; q < regs.total(); ++q) apply_gate(u, target_matrix(h(0)), {q});
    StateVector out = run(walk_step(g), u);
    Complex overlap{0.0, 0.0};
    for (std::uint64_t i = 0; i < u.size(); ++i)
        overlap += std::conj(u.amps()[i]) * out.amps()[i];
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
}
