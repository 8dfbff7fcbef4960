#include "foamcalc/coeff_poly.hpp"

#include "foamcalc/series.hpp"

namespace foamcalc {

BetaMonomial monomial_product(const BetaMonomial& a, const BetaMonomial& b) {
    BetaMonomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return r;
}

std::string monomial_to_string(const BetaMonomial& m) {
    std::string s;
    for (auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        if (v.kind == VarKind::Log) s += "l" + std::to_string(v.k);
        else if (v.kind == VarKind::Param) s += v.k + v.l == 1 ? "beta" : "beta" + std::to_string(v.k + v.l);
        else if (v.k > 9 || v.l > 9) s += "b" + std::to_string(v.k) + "_" + std::to_string(v.l);
        else s += "b" + std::to_string(v.k) + std::to_string(v.l);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string monomial_key(const BetaMonomial& m) {
    std::string s;
    for (auto& [v, e] : m) {
        if (!s.empty()) s += ";";
        if (v.kind == VarKind::Log) s += "l";
        if (v.kind == VarKind::Param) s += "p";
        s += std::to_string(v.k) + "," + std::to_string(v.l) + ":" + std::to_string(e);
    }
    return s;
}

bool beta_monomial_print_less(const BetaMonomial& a, const BetaMonomial& b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da > db;
    return a < b;
}

ExpKey pack_exponents(const std::vector<int>& e) {
    if (e.size() > static_cast<size_t>(kMaxVars)) throw DimensionMismatch("too many variables");
    ExpKey k = 0;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] > 255) throw DimensionMismatch("exponent out of range");
        k |= ExpKey(e[i]) << (8 * i);
    }
    return k;
}

std::vector<int> unpack_exponents(ExpKey k, int n) {
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = exp_of(k, i);
    return e;
}

ExpKey swap_exponents(ExpKey k, int i, int j) {
    int ei = exp_of(k, i), ej = exp_of(k, j);
    ExpKey mask = ~((ExpKey(0xff) << (8 * i)) | (ExpKey(0xff) << (8 * j)));
    return (k & mask) | (ExpKey(ej) << (8 * i)) | (ExpKey(ei) << (8 * j));
}

}  // namespace foamcalc
