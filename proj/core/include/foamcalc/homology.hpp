#pragma once

#include <array>
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "foamcalc/webs.hpp"

namespace foamcalc {

// One crossing in PD notation: labels counterclockwise starting from the
// incoming under-strand. overIn is the position (1 or 3) where the over-strand
// enters; entering at 3 makes the crossing positive.
struct PDCrossing {
    std::array<int, 4> labels{};
    int overIn = 3;
    int sign() const { return overIn == 3 ? 1 : -1; }
};

struct PDLink {
    std::vector<PDCrossing> crossings;
    int freeLoops = 0;  // crossingless components

    int n_plus() const;
    int n_minus() const;
    // Labels occur twice and every strand is consistently oriented. Throws InvalidPD.
    void validate() const;
    // "X[1,5,2,4],X[3,1,4,6],..." ; a bare "O" is a crossingless circle.
    // Over-strand directions are propagated along strands; where nothing
    // fixes them, labels are taken to increase along the strand.
    static PDLink parse(const std::string& text);
    std::string to_string() const;
    // Closure of a braid word on `strands` strands; generator k > 0 is a
    // positive crossing of strands k and k+1, -k its inverse.
    static PDLink braid_closure(int strands, const std::vector<int>& word);
    // Same diagram with the component through `label` running backwards.
    PDLink reverse_component(int label) const;
    // Crossings listed in the order perm[0], perm[1], ...
    PDLink permuted(const std::vector<int>& perm) const;
};

struct CubeVertex {
    unsigned mask = 0;  // bit i is the coordinate of crossing i
    Web web;
    int hdeg = 0;
    int qshift = 0;
};

// All 2^n resolutions. Coordinate 0 is the oriented smoothing at a positive
// crossing and the double-edge web at a negative one.
std::vector<CubeVertex> resolutions(const PDLink& d);
// Zip (positive crossing) or unzip (negative) from `from` across crossing i.
FoamMovie cube_edge_movie(const PDLink& d, const CubeVertex& from, int crossing);

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Quantum degree value marking a complex whose differential mixes degrees.
constexpr int kUngraded = INT_MIN;

struct ChainComplex {
    int hmin = 0;
    std::vector<std::vector<int>> qdeg;  // per homological degree, generator q-degrees
    std::vector<IntMatrix> d;            // d[k]: C^{hmin+k} -> C^{hmin+k+1}, rows = targets
    bool graded = true;                  // every nonzero entry preserves q

    int hmax() const { return hmin + static_cast<int>(qdeg.size()) - 1; }
    bool d_squared_zero() const;
};

ChainComplex build_complex(const PDLink& d, const Specialization& s, int jobs = 1);

struct HomologyGroup {
    long rank = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1, ascending
    bool operator==(const HomologyGroup& o) const { return rank == o.rank && torsion == o.torsion; }
};

struct HomologyTable {
    std::map<std::pair<int, int>, HomologyGroup> groups;  // (h, q); zero groups omitted

    bool operator==(const HomologyTable& o) const { return groups == o.groups; }
    long total_rank() const;
    // h, q, rank, torsion (comma separated, "-" when none); q prints "*" when ungraded.
    std::string to_tsv() const;
    nlohmann::json to_json() const;
};

// Smith normal form diagonal of an integer matrix: nonzero invariant factors
// in divisibility order.
std::vector<mpz_class> smith_invariants(IntMatrix A);

HomologyTable homology(const ChainComplex& c);
// Sum over generators of (-1)^h q^q.
LaurentPoly graded_euler(const ChainComplex& c);

struct ReidemeisterReport {
    bool equal = false;
    std::string firstDifference;  // "(h,q): a vs b"
    HomologyTable left, right;
    nlohmann::json to_json() const;
};

ReidemeisterReport reidemeister_check(const PDLink& a, const PDLink& b, const Specialization& s, int jobs = 1);

struct DiagramPair {
    std::string name;
    PDLink left, right;
};

namespace diagrams {
PDLink unknot();
PDLink unlink(int n);
PDLink hopf();
PDLink right_trefoil();
PDLink left_trefoil();
PDLink figure_eight();
// R1+, R1-, R2 with parallel and antiparallel strands, R2 on a trefoil, R3.
std::vector<DiagramPair> reidemeister_pairs();
}  // namespace diagrams

}  // namespace foamcalc
