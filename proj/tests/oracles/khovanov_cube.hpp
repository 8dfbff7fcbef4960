#pragma once

#include <map>
#include <utility>

#include "foamcalc/homology.hpp"

namespace oracle {

// Khovanov cube built straight from the PD smoothings with the algebra
// Z[x]/(x^2), v+ in degree 1 and v- in degree -1. Ranks are computed by exact
// elimination over the rationals and over F_2.
struct CubeRanks {
    std::map<std::pair<int, int>, long> overQ;   // (h, q) -> dim H(C tensor Q)
    std::map<std::pair<int, int>, long> overF2;  // (h, q) -> dim H(C tensor F_2)
    std::map<int, long> chainRank;               // generators per h
};

CubeRanks khovanov_cube_ranks(const foamcalc::PDLink& d);

// State sum over all smoothings: (-1)^h q^{r + n+ - 2n-} (q + q^-1)^{circles}.
foamcalc::LaurentPoly bracket(const foamcalc::PDLink& d);

// Number of circles in the smoothing selected by mask (bit set = 1-smoothing).
int smoothing_circles(const foamcalc::PDLink& d, unsigned mask);

}  // namespace oracle
