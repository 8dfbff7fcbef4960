#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "foamcalc/ground_ring.hpp"

namespace foamcalc {

struct ThinFacet {
    std::string id;
    int genus = 0;
    int boundary = 0;
    int dots = 0;
    int euler() const { return 2 - 2 * genus - boundary; }
};

struct DoubleFacet {
    std::string id;
    int genus = 0;
    int boundary = 0;
    int euler() const { return 2 - 2 * genus - boundary; }
};

struct Gl2Seam {
    std::string preferred;
    std::string other;
    std::string doubleFacet;
};

// Closed GL(2) foam reduced to combinatorial data: facets by genus, boundary
// count and dots, and one entry per singular circle.
struct Gl2Prefoam {
    std::vector<ThinFacet> thin;
    std::vector<DoubleFacet> dbl;
    std::vector<Gl2Seam> seams;

    // Throws MalformedFoam naming the offending id.
    void validate() const;
    int thin_euler() const;    // chi(F12)
    int double_euler() const;  // chi(F1 cap 2)
    int total_dots() const;
    // sum_i chi(F_i(c)); independent of c
    int foam_euler() const { return thin_euler() + 2 * double_euler(); }
    // swap preferred and other at every seam
    Gl2Prefoam reversed() const;

    nlohmann::json to_json() const;
    static Gl2Prefoam from_json(const nlohmann::json& j);
};

// colorOf[k] in {1, 2} for thin facet k (index into Gl2Prefoam::thin)
struct Gl2Coloring {
    std::vector<int> colorOf;
};

struct GlNFacet {
    std::string id;
    int thickness = 1;
    int genus = 0;
    int boundary = 0;
    // exponents m_k of e_k, k = 1..thickness
    std::vector<int> decoration;
    int euler() const { return 2 - 2 * genus - boundary; }
};

struct GlNSeam {
    std::string a;
    std::string b;
    std::string ab;
    bool flag = true;
};

struct GlNPrefoam {
    int N = 2;
    std::vector<GlNFacet> facets;
    std::vector<GlNSeam> seams;

    void validate() const;
    int index_of(const std::string& id) const;
    nlohmann::json to_json() const;
    static GlNPrefoam from_json(const nlohmann::json& j);
    // Thin facets become thickness 1 with e_1^dots, seams keep
    // a = preferred, b = other, flag = true.
    static GlNPrefoam from_gl2(const Gl2Prefoam& f);
};

// subsetOf[k] is a bitmask over colors 1..N (bit i-1 for color i)
struct GlNColoring {
    std::vector<unsigned> subsetOf;
};

std::vector<Gl2Coloring> enumerate_colorings(const Gl2Prefoam& F);
std::vector<GlNColoring> enumerate_colorings(const GlNPrefoam& F);

// Per-coloring data of the GL(N) formula.
struct ColoringData {
    std::vector<int> chi;                  // chi_i, i = 1..N at index i-1
    std::map<std::pair<int, int>, int> chiPair;  // chi_ij, i < j (1-based)
    int thetaPlus = 0;
};
ColoringData coloring_data(const GlNPrefoam& F, const GlNColoring& c);

// Sum over colorings of the deformed GL(2) formula with p12 = p, p21 = p
// with swapped arguments. Generic coefficients: C = CoeffPoly; numeric: mpz.
template <class C>
Series<C> eval_deformed_gl2(const Gl2Prefoam& F, const Series<C>& p, int jobs = 1);

// Exact value in R.
GroundRingElem eval_exact_gl2(const Gl2Prefoam& F);

// GL(N) formula with p_ij = p(x_i, x_j).
template <class C>
Series<C> eval_deformed_glN(const GlNPrefoam& F, const Series<C>& p, int jobs = 1);

// Undeformed evaluation with the original sign s(F, c), as a polynomial in
// x_1..x_N truncated at D.
IntSeries eval_rw(const GlNPrefoam& F, int D);

struct KempeReport {
    bool pass = true;
    std::vector<std::pair<std::string, bool>> checks;
    std::string firstFailure;
    IntSeries ratio;  // p(c')/p(c) for the requested components together
    nlohmann::json to_json() const;
};

// Kempe move in colors (1, 2) along the given connected components of
// F_12(c), named by any facet id they contain. Uses numeric p.
KempeReport kempe_ratio_check(const GlNPrefoam& F, const GlNColoring& c,
                              const std::vector<std::string>& componentFacets, const IntSeries& p);
// Components of F_12(c) as lists of facet indices.
std::vector<std::vector<int>> kempe_components(const GlNPrefoam& F, const GlNColoring& c);

// Standard test foams.
namespace foams {
Gl2Prefoam thin_sphere(int dots);
Gl2Prefoam thin_surface(int genus, int dots);
Gl2Prefoam double_surface(int genus);
Gl2Prefoam theta(int preferredDots, int otherDots);
Gl2Prefoam disjoint_union(const Gl2Prefoam& a, const Gl2Prefoam& b);
// N thin disks, nested double, ..., one thickness-N disk; dots[i] on thin disk i
GlNPrefoam gln_theta(const std::vector<int>& dots);
}  // namespace foams

}  // namespace foamcalc
