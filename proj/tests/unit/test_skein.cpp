#include "doctest.h"

#include <random>

#include "foamcalc/skein.hpp"
#include "oracles/alternant.hpp"

using namespace foamcalc;

TEST_CASE("every relation holds on every closure") {
    for (RelationId id : all_relations()) {
        SkeinReport rep = verify_relation(id, closure_family(), 2);
        CAPTURE(relation_name(id));
        CHECK(rep.cases.size() >= 3 * relation_variants(id).size());
        for (auto& c : rep.cases) {
            CAPTURE(c.variant);
            CAPTURE(c.closure);
            CAPTURE(c.error);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("singular neck cut on a dotted theta") {
    Closure c{"dot on top", {1, 0, 0, 0}, {}, {}};
    SkeinReport rep = verify_relation(RelationId::SingularNeckCut, {c});
    REQUIRE(rep.cases.size() == 1);
    CHECK(rep.cases[0].pass);
    CHECK(rep.cases[0].lhs == -GroundRingElem::rho());
}

TEST_CASE("relations that are broken on purpose fail") {
    // flipping the sign of one term of a two-term relation must be detected
    int detected = 0;
    for (auto& c : closure_family()) {
        SkeinInstance inst = build_instance(RelationId::DotMigrationE1, "theta", c);
        GroundRingElem lhs = eval_exact_gl2(inst.lhs[0].foam) - eval_exact_gl2(inst.lhs[1].foam);
        GroundRingElem rhs = inst.rhs[0].coeff * eval_exact_gl2(inst.rhs[0].foam);
        if (!(lhs == rhs)) ++detected;
    }
    CHECK(detected >= 3);
}

TEST_CASE("neck-cut coefficients are units") {
    for (RelationId id : {RelationId::NeckCut, RelationId::NeckCutTop, RelationId::DoubleNeckCut,
                          RelationId::CancelDoubleDisks}) {
        for (auto& v : relation_variants(id)) {
            SkeinInstance inst = build_instance(id, v, closure_family()[0]);
            for (auto& t : inst.rhs) CHECK(t.coeff.is_unit());
        }
    }
}

TEST_CASE("unknown relation names are rejected") {
    CHECK(relation_from_name("TubeCut") == RelationId::TubeCut);
    CHECK_THROWS_AS(relation_from_name("NoSuchRelation"), Unsupported);
    CHECK_THROWS_AS(build_instance(RelationId::TubeCut, "sideways", closure_family()[0]), Unsupported);
}

TEST_CASE("closed forms agree with the evaluator") {
    int D = 10;
    TruncSeries p = generic_p(D);
    using K = ClosedFormSpec::Kind;
    for (int g = 0; g <= 3; ++g)
        for (int n = 0; n <= 4; ++n) {
            ClosedFormSpec s{K::ThinSurface, g, n};
            TruncSeries a = closed_form_oracle(s, p), b = eval_deformed_gl2(foams::thin_surface(g, n), p);
            CAPTURE(g);
            CAPTURE(n);
            CHECK(equal_up_to(a, b, std::min(a.valid_deg(), b.valid_deg())));
        }
    for (int g = 0; g <= 3; ++g) {
        ClosedFormSpec s{K::DoubleSurface, g};
        TruncSeries a = closed_form_oracle(s, p), b = eval_deformed_gl2(foams::double_surface(g), p);
        CHECK(equal_up_to(a, b, std::min(a.valid_deg(), b.valid_deg())));
        CHECK(eval_exact_gl2(foams::double_surface(g)) == GroundRingElem::rho_pow(1 - g));
    }
    for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2) {
            ClosedFormSpec s{K::Theta, 0, 0, n1, n2};
            TruncSeries a = closed_form_oracle(s, p), b = eval_deformed_gl2(foams::theta(n1, n2), p);
            CHECK(equal_up_to(a, b, std::min(a.valid_deg(), b.valid_deg())));
        }
}

TEST_CASE("Schur polynomials from tableaux match the bialternant") {
    for (int N = 2; N <= 4; ++N) {
        std::vector<std::vector<int>> shapes = {{0}, {1}, {2}, {1, 1}, {2, 1}, {3, 1}, {2, 2}, {2, 1, 1}};
        for (auto lambda : shapes) {
            lambda.resize(N, 0);
            std::vector<int> n(N);
            for (int i = 0; i < N; ++i) n[i] = lambda[i] + N - 1 - i;
            IntSeries a = schur_polynomial(lambda, N, 8), b = oracle::alternant_quotient(n, 8);
            CHECK(equal_up_to(a, b, 8));
        }
    }
}

TEST_CASE("GL(N) theta closed form with unsorted dots") {
    for (auto dots : std::vector<std::vector<int>>{{0, 2, 1}, {3, 0, 1}, {1, 1, 0}, {0, 1, 2, 4}}) {
        int N = static_cast<int>(dots.size());
        IntSeries p = IntSeries::one(2, 8);
        p.add_term(pack_exponents({1, 0}), 2);
        p.add_term(pack_exponents({0, 1}), -1);
        p.add_term(pack_exponents({1, 1}), 3);
        ClosedFormSpec s{ClosedFormSpec::Kind::GlNTheta};
        s.glnDots = dots;
        IntSeries a = closed_form_oracle(s, p), b = eval_deformed_glN(foams::gln_theta(dots), p);
        CAPTURE(N);
        CHECK(equal_up_to(a, b, std::min(a.valid_deg(), b.valid_deg())));
    }
}
