#pragma once

#include <map>
#include <string>
#include <vector>

#include "foamcalc/prefoam.hpp"

namespace foamcalc {

// Laurent polynomial in q with integer coefficients.
struct LaurentPoly {
    std::map<int, mpz_class> coeffs;

    static LaurentPoly monomial(int e, const mpz_class& c = 1);
    static LaurentPoly quantum_two() { return monomial(1) + monomial(-1); }
    LaurentPoly& operator+=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly pow(int e) const;
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.coeffs == b.coeffs; }
    std::string to_string() const;
};

enum class VertexKind { Merge, Split, Joint };

// Joints are 2-valent points on an edge. They carry no topology; moves that
// act on edges (saddles, zips, circle deaths) are stated at joints.
struct WebVertex {
    std::string id;
    VertexKind kind = VertexKind::Joint;
    // counterclockwise segment ids; for a joint [in, out]
    std::vector<std::string> rotation;
};

struct WebSegment {
    std::string id;
    int thickness = 1;
    std::string from, to;  // vertex ids
};

class Web {
public:
    std::map<std::string, WebVertex> vertices;
    std::map<std::string, WebSegment> segments;

    bool empty() const { return vertices.empty() && segments.empty(); }
    // Flow at every vertex and a planar rotation system (V - E + F = 2 per
    // component). Throws InvalidWeb.
    void validate() const;
    // Number of components of the thin one-manifold.
    int thin_components() const;
    // Identical ids, kinds, endpoints and rotations (up to cyclic shift).
    bool same_as(const Web& o) const;

    const WebVertex& vertex(const std::string& id) const;
    const WebSegment& segment(const std::string& id) const;
    // Segment ending / starting at a joint.
    const std::string& joint_in(const std::string& j) const { return vertex(j).rotation.at(0); }
    const std::string& joint_out(const std::string& j) const { return vertex(j).rotation.at(1); }

    // Edges may be given with "from"/"to" null for closed loops; each loop
    // gets a joint named <edge id>.j.
    nlohmann::json to_json() const;
    static Web from_json(const nlohmann::json& j);
};

enum class MoveKind {
    BirthThinCircle,    // outs {joint, segment}
    DeathThinCircle,    // args {joint of a one-joint loop}
    BirthDoubleCircle,  // outs {joint, segment}
    DeathDoubleCircle,  // args {joint}
    ThinSaddle,         // args {J1, J2}: the joints exchange outgoing segments
    DoubleSaddle,       // args {J1, J2}
    Zip,                // args {left joint, right joint}, outs {merge, split, double segment}
    Unzip,              // args {double segment}, outs {left joint, right joint}
    Dot,                // args {thin segment}
    Subdivide,          // args {segment}, outs {joint, new segment after the joint}
    Smooth              // args {joint}: removes it, keeping the incoming segment
};

std::string move_name(MoveKind k);
MoveKind move_from_name(const std::string& n);

struct Move {
    MoveKind kind = MoveKind::Dot;
    std::vector<std::string> args;
    std::vector<std::string> outs;
    nlohmann::json to_json() const;
    static Move from_json(const nlohmann::json& j);
};

// Applies one move; throws InvalidMove when its precondition fails and
// returns the move that undoes it.
Move apply_move(Web& w, const Move& m);

struct FoamMovie {
    Web start;
    std::vector<Move> moves;

    Web end() const;
    // -chi(thin surface) + 2 dots
    int degree() const;
    // Time-reversed movie with every move undone; goes from end() to start.
    FoamMovie adjoint() const;
    // this followed by g; throws BoundaryMismatch
    FoamMovie then(const FoamMovie& g) const;
    nlohmann::json to_json() const;
    static FoamMovie from_json(const nlohmann::json& j);
};

// Closed prefoam traced from a sequence of movies running from the empty web
// back to the empty web.
Gl2Prefoam compose_and_close(const std::vector<FoamMovie>& movies);

LaurentPoly moy_rank(const Web& w);

struct ReductionStep {
    std::string kind;              // double circle, digon, double saddle, joint
    std::vector<Move> reduction;   // moves applied to the web
    std::vector<Move> build;       // inverse moves, in the build direction
    std::string normalization;     // scalar making the step an isomorphism
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    Web reduced;  // disjoint thin circles, one joint each
    nlohmann::json to_json() const;
};

ReductionTrace reduce_web(const Web& w);

using RMatrix = std::vector<std::vector<GroundRingElem>>;

struct StateSpace {
    Web web;
    std::vector<FoamMovie> basis;  // from the empty web
    std::vector<int> degrees;
    RMatrix gram;
    ReductionTrace trace;
    LaurentPoly graded_rank() const;
    nlohmann::json to_json() const;
};

StateSpace state_space_basis(const Web& w, int jobs = 1);

// Matrix of the induced map in the given bases (columns are images of the
// domain basis).
RMatrix foam_map_matrix(const FoamMovie& f, const StateSpace& dom, const StateSpace& cod, int jobs = 1);
// Closed evaluations <dom_j, f, cod_i^*>; foam_map_matrix solves gram^T X = P.
RMatrix foam_pairing_matrix(const FoamMovie& f, const StateSpace& dom, const StateSpace& cod, int jobs = 1);

// Exact solution of A X = B over R by fraction-free elimination.
RMatrix solve_over_ring(const RMatrix& A, const RMatrix& B);
GroundRingElem determinant(const RMatrix& A);
RMatrix mat_mul(const RMatrix& A, const RMatrix& B);
RMatrix kronecker(const RMatrix& A, const RMatrix& B);
nlohmann::json matrix_json(const RMatrix& A);

namespace webs {
Web thin_circle(const std::string& id = "c");
Web double_circle(const std::string& id = "dc");
Web disjoint_union(const Web& a, const Web& b);
// Thin circle with one attached double edge: two vertices, two thin edges.
Web theta_web();
// Two thin cycles joined by two double edges, plus a thin and a double circle.
Web figure_web();
}  // namespace webs

}  // namespace foamcalc
