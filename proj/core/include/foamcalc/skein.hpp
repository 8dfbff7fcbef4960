#pragma once

#include <array>
#include <string>
#include <vector>

#include "foamcalc/prefoam.hpp"

namespace foamcalc {

enum class RelationId {
    SingularNeckCut,
    SingularNeckCutReversed,
    CancelDoubleDisks,
    NeckCut,
    NeckCutTop,
    DiskFlip,
    OrientationReversal,
    DotReduction,
    DoubleNeckCut,
    DotMigrationE1,
    DotMigrationE2,
    TubeCut,
    GammaPair
};

const std::vector<RelationId>& all_relations();
std::string relation_name(RelationId id);
// Throws Unsupported for unknown names.
RelationId relation_from_name(const std::string& name);

// Completion of a local patch to a closed prefoam. Each patch exposes up to
// four outer thin facets (slots); slot k receives dots[k] extra dots, genus[k]
// extra handles and, if thetaCap[k], a small theta foam glued on by a new seam
// with the slot facet preferred.
struct Closure {
    std::string name;
    std::array<int, 4> dots{};
    std::array<int, 4> genus{};
    std::array<bool, 4> thetaCap{};
};

// caps, dotted caps, theta caps, genus tubes, mixed
const std::vector<Closure>& closure_family();

struct SkeinTerm {
    GroundRingElem coeff;
    Gl2Prefoam foam;
};

struct SkeinInstance {
    std::vector<SkeinTerm> lhs, rhs;
};

// Orientation cases a relation is exercised on (at least one).
std::vector<std::string> relation_variants(RelationId id);
SkeinInstance build_instance(RelationId id, const std::string& variant, const Closure& closure);

struct SkeinCase {
    std::string closure;
    std::string variant;
    bool pass = false;
    GroundRingElem lhs, rhs;
    std::string error;
};

struct SkeinReport {
    RelationId id{};
    std::vector<SkeinCase> cases;
    bool pass() const;
    nlohmann::json to_json() const;
};

// Evaluates both sides of every (variant, closure) instance exactly.
SkeinReport verify_relation(RelationId id, const std::vector<Closure>& closures, int jobs = 1);

// Closed forms of the standard surfaces and theta foams, expanded from p.
struct ClosedFormSpec {
    enum class Kind { ThinSurface, DoubleSurface, Theta, GlNTheta };
    Kind kind = Kind::ThinSurface;
    int genus = 0;
    int dots = 0;
    int n1 = 0, n2 = 0;
    std::vector<int> glnDots;
};

template <class C>
Series<C> closed_form_oracle(const ClosedFormSpec& spec, const Series<C>& p);

// Schur polynomial s_lambda(x_1..x_N) by semistandard tableaux.
IntSeries schur_polynomial(const std::vector<int>& lambda, int N, int D);

}  // namespace foamcalc
