#include "doctest.h"

#include <random>

#include "foamcalc/errors.hpp"
#include "foamcalc/webs.hpp"
#include "oracles/generators.hpp"

using namespace foamcalc;

namespace {

using R = GroundRingElem;

Move mv(MoveKind k, std::vector<std::string> args, std::vector<std::string> outs = {}) {
    return Move{k, std::move(args), std::move(outs)};
}

FoamMovie movie(const Web& start, std::vector<Move> moves) { return FoamMovie{start, std::move(moves)}; }

// theta foam as a movie: two circles side by side, zipped and unzipped
FoamMovie theta_movie(int leftDots, int rightDots) {
    std::vector<Move> ms = {mv(MoveKind::BirthThinCircle, {}, {"ja", "a"}),
                            mv(MoveKind::BirthThinCircle, {}, {"jb", "b"})};
    for (int i = 0; i < leftDots; ++i) ms.push_back(mv(MoveKind::Dot, {"a"}));
    for (int i = 0; i < rightDots; ++i) ms.push_back(mv(MoveKind::Dot, {"b"}));
    ms.push_back(mv(MoveKind::Zip, {"ja", "jb"}, {"M", "S", "D"}));
    ms.push_back(mv(MoveKind::Unzip, {"D"}, {"ja", "jb"}));
    ms.push_back(mv(MoveKind::DeathThinCircle, {"ja"}));
    ms.push_back(mv(MoveKind::DeathThinCircle, {"jb"}));
    return movie(Web{}, ms);
}

bool is_unit(const R& r) { return r.is_unit(); }

using gen::random_movie;

}  // namespace

TEST_CASE("one circle: Gram matrix and rank") {
    StateSpace ss = state_space_basis(webs::thin_circle());
    REQUIRE(ss.basis.size() == 2);
    CHECK(ss.degrees == std::vector<int>{-1, 1});
    CHECK(ss.gram[0][0] == R::rho0());
    CHECK(ss.gram[0][1] == R::rho1());
    CHECK(ss.gram[1][0] == R::rho1());
    CHECK(ss.gram[1][1] == R::rho_n(2));
    CHECK(determinant(ss.gram) == R::rho());
    CHECK(ss.graded_rank() == LaurentPoly::quantum_two());
}

TEST_CASE("empty web has a one-dimensional state space") {
    StateSpace ss = state_space_basis(Web{});
    REQUIRE(ss.basis.size() == 1);
    CHECK(ss.gram[0][0] == R(1));
}

TEST_CASE("dot acts on a circle by the companion matrix") {
    Web c = webs::thin_circle();
    StateSpace ss = state_space_basis(c);
    RMatrix M = foam_map_matrix(movie(c, {mv(MoveKind::Dot, {"c"})}), ss, ss);
    CHECK(M[0][0] == R());
    CHECK(M[0][1] == -R::E2());
    CHECK(M[1][0] == R(1));
    CHECK(M[1][1] == R::E1());
}

TEST_CASE("cup and cap columns") {
    Web c = webs::thin_circle();
    StateSpace e = state_space_basis(Web{}), ss = state_space_basis(c);
    RMatrix cup = foam_map_matrix(movie(Web{}, {mv(MoveKind::BirthThinCircle, {}, {"c.j", "c"})}), e, ss);
    CHECK(cup[0][0] == R(1));
    CHECK(cup[1][0] == R());
    RMatrix cap = foam_map_matrix(movie(c, {mv(MoveKind::DeathThinCircle, {"c.j"})}), ss, e);
    CHECK(cap[0][0] == R::rho0());
    CHECK(cap[0][1] == R::rho1());
}

TEST_CASE("closed movies trace the expected prefoams") {
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            FoamMovie f = theta_movie(a, b);
            Gl2Prefoam F = compose_and_close({f});
            CHECK(F.thin.size() == 2);
            CHECK(F.dbl.size() == 1);
            CHECK(F.seams.size() == 1);
            CHECK(F.thin_euler() == 2);
            CHECK(f.degree() == -F.thin_euler() + 2 * F.total_dots());
            CHECK(eval_exact_gl2(F) == eval_exact_gl2(foams::theta(a, b)));
        }
    // a sphere cut by a thin saddle into two and re-merged is a torus
    FoamMovie t = movie(Web{}, {mv(MoveKind::BirthThinCircle, {}, {"j", "s"}),
                                mv(MoveKind::Subdivide, {"s"}, {"k", "s2"}),
                                mv(MoveKind::ThinSaddle, {"j", "k"}),
                                mv(MoveKind::ThinSaddle, {"j", "k"}),
                                mv(MoveKind::Smooth, {"k"}),
                                mv(MoveKind::DeathThinCircle, {"j"})});
    Gl2Prefoam T = compose_and_close({t});
    REQUIRE(T.thin.size() == 1);
    CHECK(T.thin[0].genus == 1);
    CHECK(t.degree() == 0);
}

TEST_CASE("closed movie boundary checks") {
    FoamMovie open = movie(Web{}, {mv(MoveKind::BirthThinCircle, {}, {"j", "s"})});
    CHECK_THROWS_AS(compose_and_close({open}), BoundaryMismatch);
    CHECK_THROWS_AS(open.then(open), BoundaryMismatch);
    CHECK_THROWS_AS(apply_move(*new Web(), mv(MoveKind::DeathThinCircle, {"x"})), InvalidMove);
}

TEST_CASE("theta web: one digon removal") {
    Web w = webs::theta_web();
    w.validate();
    CHECK(w.thin_components() == 1);
    ReductionTrace tr = reduce_web(w);
    bool digon = false;
    for (auto& s : tr.steps) digon |= s.kind == "digon";
    CHECK(digon);
    StateSpace ss = state_space_basis(w);
    CHECK(ss.graded_rank() == moy_rank(w));
    CHECK(is_unit(determinant(ss.gram)));
}

TEST_CASE("figure web: rank, degrees and Gram") {
    Web w = webs::figure_web();
    w.validate();
    CHECK(w.thin_components() == 3);
    CHECK(moy_rank(w) == LaurentPoly::quantum_two().pow(3));
    ReductionTrace tr = reduce_web(w);
    bool saddle = false;
    for (auto& s : tr.steps) saddle |= s.kind == "double saddle";
    CHECK(saddle);
    StateSpace ss = state_space_basis(w, 2);
    CHECK(ss.basis.size() == 8);
    CHECK(ss.graded_rank() == moy_rank(w));
    CHECK(is_unit(determinant(ss.gram)));
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j) CHECK(ss.gram[i][j] == ss.gram[j][i]);
}

TEST_CASE("non-planar rotation systems are rejected") {
    Web w = webs::theta_web();
    // two merges sharing a double edge cannot close up
    w.vertices["S"].kind = VertexKind::Merge;
    CHECK_THROWS_AS(w.validate(), InvalidWeb);
    // reversing one rotation of two theta webs glued via a double saddle
    Web fig = webs::figure_web();
    std::swap(fig.vertices["MA"].rotation[1], fig.vertices["MA"].rotation[2]);
    CHECK_THROWS_AS(fig.validate(), InvalidWeb);
}

TEST_CASE("web and movie json round trip") {
    Web w = webs::figure_web();
    CHECK(Web::from_json(w.to_json()).same_as(w));
    nlohmann::json shorthand = {{"edges", {{{"id", "c"}, {"thickness", 1}, {"from", nullptr}, {"to", nullptr}}}}};
    CHECK(Web::from_json(shorthand).same_as(webs::thin_circle()));
    FoamMovie f = theta_movie(1, 0);
    FoamMovie g = FoamMovie::from_json(f.to_json());
    CHECK(eval_exact_gl2(compose_and_close({g})) == eval_exact_gl2(compose_and_close({f})));
    nlohmann::json ss = {{"move", "SingularSaddle"}, {"args", {"x", "y"}}};
    CHECK(Move::from_json(ss).kind == MoveKind::Zip);
    CHECK_THROWS_AS(Move::from_json({{"move", "Teleport"}}), InvalidMove);
}

TEST_CASE("induced maps are functorial and graded") {
    std::mt19937 rng(20261019);
    int counter = 0, checked = 0;
    std::vector<Web> starts = {webs::thin_circle(), webs::theta_web(),
                               webs::disjoint_union(webs::thin_circle("u"), webs::thin_circle("v"))};
    for (int trial = 0; trial < 24; ++trial) {
        Web w0 = starts[trial % starts.size()];
        FoamMovie f = random_movie(w0, rng, 4, counter);
        FoamMovie g = random_movie(f.end(), rng, 4, counter);
        StateSpace s0 = state_space_basis(w0), s1 = state_space_basis(f.end()),
                   s2 = state_space_basis(g.end());
        RMatrix Mf = foam_map_matrix(f, s0, s1), Mg = foam_map_matrix(g, s1, s2);
        RMatrix Mgf = foam_map_matrix(f.then(g), s0, s2);
        CHECK(Mgf == mat_mul(Mg, Mf));
        for (size_t i = 0; i < Mf.size(); ++i)
            for (size_t j = 0; j < Mf[i].size(); ++j) {
                int d = 0;
                if (Mf[i][j].is_zero()) continue;
                REQUIRE(Mf[i][j].homogeneous_degree(d));
                CHECK(d == f.degree() + s0.degrees[j] - s1.degrees[i]);
            }
        ++checked;
    }
    CHECK(checked == 24);
}

TEST_CASE("adjoint undoes the movie") {
    std::mt19937 rng(7);
    int counter = 0;
    for (int trial = 0; trial < 10; ++trial) {
        FoamMovie f = random_movie(webs::theta_web(), rng, 6, counter);
        FoamMovie a = f.adjoint();
        CHECK(a.start.same_as(f.end()));
        CHECK(a.end().same_as(f.start));
        CHECK(a.degree() == f.degree());
    }
}
