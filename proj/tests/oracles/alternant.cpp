#include "oracles/alternant.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

using foamcalc::GroundRingElem;
using foamcalc::IntSeries;

IntSeries alternant_quotient(const std::vector<int>& n, int D) {
    int N = static_cast<int>(n.size());
    int vdeg = N * (N - 1) / 2;
    IntSeries det(N, D + vdeg);
    std::vector<int> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                if (perm[a] > perm[b]) ++inversions;
        std::vector<int> e(N, 0);
        for (int i = 0; i < N; ++i) e[perm[i]] = n[i];
        det += IntSeries::monomial(N, D + vdeg, e, inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) det = det.divide_exact(i, j, 1);
    IntSeries out(N, D);
    for (auto& [k, c] : det.terms()) out.add_term(k, c);
    return out;
}

GroundRingElem power_sum(int n) {
    GroundRingElem a = 2, b = GroundRingElem::E1();
    if (n == 0) return a;
    for (int k = 1; k < n; ++k) {
        GroundRingElem c = GroundRingElem::E1() * b - GroundRingElem::E2() * a;
        a = b;
        b = c;
    }
    return b;
}

}  // namespace oracle
