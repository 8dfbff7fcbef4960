#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "foamcalc/errors.hpp"
#include "foamcalc/homology.hpp"
#include "oracles/khovanov_cube.hpp"

using namespace foamcalc;

namespace {

const Specialization kh = Specialization::khovanov();

// Universal coefficients: dim H(C; F_2) in degree h is the free rank plus one
// for each even invariant factor in degrees h and h+1.
void check_against_cube(const PDLink& d, const HomologyTable& t) {
    auto ranks = oracle::khovanov_cube_ranks(d);
    std::map<std::pair<int, int>, long> q, f2;
    for (auto& [k, g] : t.groups) {
        if (g.rank) q[k] += g.rank;
        long even = static_cast<long>(
            std::count_if(g.torsion.begin(), g.torsion.end(), [](const mpz_class& x) { return x % 2 == 0; }));
        if (g.rank + even) f2[k] += g.rank + even;
        if (even) f2[{k.first - 1, k.second}] += even;
    }
    CHECK(q == ranks.overQ);
    CHECK(f2 == ranks.overF2);
}

std::vector<int> random_word(std::mt19937& rng, int strands, int len) {
    std::vector<int> w;
    std::uniform_int_distribution<int> gen(1, strands - 1), coin(0, 1);
    for (int i = 0; i < len; ++i) w.push_back(coin(rng) ? gen(rng) : -gen(rng));
    return w;
}

}  // namespace

TEST_CASE("PD parsing, orientation and round trip") {
    auto d = PDLink::parse("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]");
    REQUIRE(d.crossings.size() == 3);
    CHECK(d.n_plus() == 3);
    CHECK(d.n_minus() == 0);
    CHECK(PDLink::parse(d.to_string()).to_string() == d.to_string());

    auto left = PDLink::parse("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]");
    CHECK(left.n_minus() == 3);

    auto u = PDLink::parse("O");
    CHECK(u.crossings.empty());
    CHECK(u.freeLoops == 1);
    CHECK(PDLink::parse("").freeLoops == 0);

    CHECK(PDLink::parse("X[1,1,2,2]").n_plus() == 1);
    CHECK(PDLink::parse("X[1,2,2,1]").n_minus() == 1);

    CHECK_THROWS_AS(PDLink::parse("X[1,2,3]"), InvalidPD);
    CHECK_THROWS_AS(PDLink::parse("X[1,1,1,2]"), InvalidPD);
    CHECK_THROWS_AS(PDLink::parse("Y[1,2,3,4]"), InvalidPD);
    // both occurrences of label 1 are incoming under-strands
    CHECK_THROWS_AS(PDLink::parse("X[1,2,3,4],X[1,3,2,4]"), InvalidPD);

    for (auto& p : diagrams::reidemeister_pairs())
        for (auto* x : {&p.left, &p.right}) {
            auto back = PDLink::parse(x->to_string());
            CHECK(back.n_plus() == x->n_plus());
            CHECK(back.to_string() == x->to_string());
        }
}

TEST_CASE("braid closures") {
    auto t = diagrams::right_trefoil();
    CHECK(t.crossings.size() == 3);
    CHECK(t.n_plus() == 3);
    CHECK(diagrams::left_trefoil().n_minus() == 3);
    CHECK(PDLink::braid_closure(3, {}).freeLoops == 3);
    CHECK(PDLink::braid_closure(3, {1}).freeLoops == 1);
    CHECK_THROWS_AS(PDLink::braid_closure(2, {2}), InvalidPD);
    auto r = diagrams::hopf().reverse_component(1);
    CHECK(r.n_minus() == 2);
}

TEST_CASE("resolutions") {
    auto u = resolutions(diagrams::unknot());
    REQUIRE(u.size() == 1);
    CHECK(u[0].web.thin_components() == 1);

    CHECK(resolutions(diagrams::hopf()).size() == 4);

    auto t = diagrams::right_trefoil();
    auto rs = resolutions(t);
    REQUIRE(rs.size() == 8);
    CHECK(rs[0].web.thin_components() == 2);
    // the thin one-manifold of each resolution is a smoothing of the diagram
    for (auto& v : rs) {
        CHECK(v.web.thin_components() == oracle::smoothing_circles(t, v.mask));
        v.web.validate();
    }
    CHECK(rs[7].hdeg == 3);
    CHECK(rs[0].qshift == 3);

    auto f8 = diagrams::figure_eight();
    for (auto& v : resolutions(f8)) CHECK(v.web.thin_components() == oracle::smoothing_circles(f8, v.mask));

    // a Hopf link with one crossing flipped cannot be drawn in the plane
    PDLink bad = diagrams::hopf();
    std::swap(bad.crossings[0].labels[1], bad.crossings[0].labels[3]);
    bad.crossings[0].overIn = 4 - bad.crossings[0].overIn;
    CHECK_THROWS_AS(resolutions(bad), InvalidPD);
}

TEST_CASE("cube edges are movies between neighbouring resolutions") {
    auto d = diagrams::figure_eight();
    auto rs = resolutions(d);
    for (auto& v : rs)
        for (int c = 0; c < 4; ++c) {
            if ((v.mask >> c) & 1) continue;
            auto f = cube_edge_movie(d, v, c);
            CHECK(f.end().same_as(rs[v.mask | (1u << c)].web));
            CHECK(f.degree() == 1);
        }
    CHECK_THROWS_AS(cube_edge_movie(d, rs[1], 0), InvalidMove);
}

TEST_CASE("unknot complex and homology") {
    auto c = build_complex(diagrams::unknot(), kh);
    REQUIRE(c.qdeg.size() == 1);
    CHECK(graded_euler(c) == LaurentPoly::quantum_two());
    auto t = homology(c);
    CHECK(t.groups.size() == 2);
    CHECK(t.groups.at({0, 1}) == HomologyGroup{1, {}});
    CHECK(t.groups.at({0, -1}) == HomologyGroup{1, {}});
    CHECK(t.to_tsv() == "h\tq\trank\ttorsion\n0\t-1\t1\t-\n0\t1\t1\t-\n");
}

TEST_CASE("kinked unknots have the unknot's homology") {
    auto plain = homology(build_complex(diagrams::unknot(), kh));
    for (int g : {1, -1}) {
        auto c = build_complex(PDLink::braid_closure(2, {g}), kh);
        CHECK(c.d_squared_zero());
        CHECK(c.graded);
        CHECK(homology(c) == plain);
    }
}

TEST_CASE("right trefoil against the Frobenius cube") {
    auto d = diagrams::right_trefoil();
    auto c = build_complex(d, kh);
    CHECK(c.d_squared_zero());
    auto t = homology(c);
    check_against_cube(d, t);
    CHECK(graded_euler(c) == oracle::bracket(d));
    // frozen after the oracle check above
    CHECK(t.to_tsv() ==
          "h\tq\trank\ttorsion\n0\t1\t1\t-\n0\t3\t1\t-\n2\t5\t1\t-\n3\t7\t0\t2\n3\t9\t1\t-\n");
}

TEST_CASE("Hopf link and figure eight against the Frobenius cube") {
    for (auto d : {diagrams::hopf(), diagrams::hopf().reverse_component(1), diagrams::figure_eight(),
                   diagrams::left_trefoil()}) {
        auto c = build_complex(d, kh);
        CHECK(c.d_squared_zero());
        check_against_cube(d, homology(c));
        CHECK(graded_euler(c) == oracle::bracket(d));
    }
}

TEST_CASE("random braid closures: d^2 = 0, Euler characteristic, cube oracle") {
    std::mt19937 rng(20261019);
    for (int trial = 0; trial < 12; ++trial) {
        int strands = 2 + trial % 2;
        int len = 1 + static_cast<int>(rng() % 4);
        auto d = PDLink::braid_closure(strands, random_word(rng, strands, len));
        CAPTURE(d.to_string());
        auto c = build_complex(d, kh);
        CHECK(c.d_squared_zero());
        CHECK(c.graded);
        CHECK(graded_euler(c) == oracle::bracket(d));
        check_against_cube(d, homology(c));
    }
}

TEST_CASE("unlinks") {
    for (int n = 1; n <= 3; ++n) {
        auto c = build_complex(diagrams::unlink(n), kh);
        auto t = homology(c);
        CHECK(t.total_rank() == (1L << n));
        LaurentPoly p;
        for (auto& [k, g] : t.groups) p += LaurentPoly::monomial(k.second, g.rank);
        CHECK(p == LaurentPoly::quantum_two().pow(n));
    }
}

TEST_CASE("crossing order does not change the table") {
    for (auto d : {diagrams::right_trefoil(), diagrams::figure_eight()}) {
        auto base = homology(build_complex(d, kh));
        std::vector<int> perm(d.crossings.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        CHECK(homology(build_complex(d.permuted(perm), kh)) == base);
        std::rotate(perm.begin(), perm.begin() + 1, perm.end());
        CHECK(homology(build_complex(d.permuted(perm), kh)) == base);
    }
}

TEST_CASE("Reidemeister pairs under two presets") {
    for (auto s : {Specialization::khovanov(), Specialization::multiplicative()})
        for (auto& p : diagrams::reidemeister_pairs()) {
            CAPTURE(s.name);
            CAPTURE(p.name);
            auto rep = reidemeister_check(p.left, p.right, s);
            CHECK(rep.equal);
            CHECK(rep.firstDifference.empty());
        }
}

TEST_CASE("Reidemeister check reports the first difference") {
    auto rep = reidemeister_check(diagrams::unknot(), diagrams::hopf(), kh);
    CHECK_FALSE(rep.equal);
    CHECK(rep.firstDifference == "(0,-1): rank 1 vs 0");
}

TEST_CASE("non-unit rho is rejected") {
    Specialization s;
    s.name = "bad";
    s.groundTarget = GroundTarget{0, 0, 0, 2};
    CHECK_THROWS_AS(build_complex(diagrams::hopf(), s), NonUnitRho);
    Specialization none;
    CHECK_THROWS_AS(build_complex(diagrams::hopf(), none), NonUnitRho);
}

TEST_CASE("Smith normal form") {
    CHECK(smith_invariants({{2, 4}, {6, 8}}) == std::vector<mpz_class>{2, 4});
    CHECK(smith_invariants({{2, 0}, {0, 3}}) == std::vector<mpz_class>{1, 6});
    CHECK(smith_invariants({{0, 0}, {0, 0}}).empty());
    CHECK(smith_invariants({}).empty());
    CHECK(smith_invariants({{4, 6, 8}}) == std::vector<mpz_class>{2});
    // property: product of invariants equals |det| for random nonsingular 3x3
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix A(3, std::vector<mpz_class>(3));
        for (auto& row : A)
            for (auto& x : row) x = static_cast<int>(rng() % 13) - 6;
        mpz_class det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                        A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                        A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
        auto inv = smith_invariants(A);
        if (det == 0) {
            CHECK(inv.size() < 3);
            continue;
        }
        REQUIRE(inv.size() == 3);
        CHECK(inv[0] * inv[1] * inv[2] == abs(det));
        CHECK(inv[1] % inv[0] == 0);
        CHECK(inv[2] % inv[1] == 0);
    }
}
