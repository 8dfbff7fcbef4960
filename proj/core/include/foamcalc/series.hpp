#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <unordered_map>
#include <vector>

#include "foamcalc/coeff_poly.hpp"
#include "foamcalc/errors.hpp"

namespace foamcalc {

// Exponent vectors are packed 8 bits per variable into a 64-bit key, so
// multiplying monomials is plain integer addition of keys.
using ExpKey = std::uint64_t;
constexpr int kMaxVars = 8;
constexpr int kMaxTrunc = 200;

inline int exp_of(ExpKey k, int i) { return static_cast<int>((k >> (8 * i)) & 0xff); }
inline ExpKey exp_unit(int i) { return ExpKey(1) << (8 * i); }
inline int exp_total(ExpKey k) {
    int s = 0;
    while (k) {
        s += static_cast<int>(k & 0xff);
        k >>= 8;
    }
    return s;
}
ExpKey pack_exponents(const std::vector<int>& e);
std::vector<int> unpack_exponents(ExpKey k, int n);
ExpKey swap_exponents(ExpKey k, int i, int j);

// Coefficient ring adapters for mpz_class, mpq_class, CoeffPoly and QPoly.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<mpz_class> {
    static bool is_zero(const mpz_class& c) { return c == 0; }
    static void addmul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static bool degree(const mpz_class&, int& d) { return d = 0, true; }
    static std::string str(const mpz_class& c) { return c.get_str(); }
    static nlohmann::json json(const mpz_class& c) { return c.get_str(); }
    static bool is_unit(const mpz_class& c) { return c == 1 || c == -1; }
    static mpz_class unit_inverse(const mpz_class& c) { return c; }
    static bool is_scalar(const mpz_class&) { return true; }
};

template <>
struct CoeffOps<mpq_class> {
    static bool is_zero(const mpq_class& c) { return c == 0; }
    static void addmul(mpq_class& acc, const mpq_class& a, const mpq_class& b) { acc += a * b; }
    static bool degree(const mpq_class&, int& d) { return d = 0, true; }
    static std::string str(const mpq_class& c) { return c.get_str(); }
    static nlohmann::json json(const mpq_class& c) { return c.get_str(); }
    static bool is_unit(const mpq_class& c) { return c != 0; }
    static mpq_class unit_inverse(const mpq_class& c) { return mpq_class(1) / c; }
    static bool is_scalar(const mpq_class&) { return true; }
};

template <class R>
struct CoeffOps<MPoly<R>> {
    using P = MPoly<R>;
    static bool is_zero(const P& c) { return c.is_zero(); }
    static void addmul(P& acc, const P& a, const P& b) { acc += a * b; }
    static bool degree(const P& c, int& d) { return c.homogeneous_degree(d); }
    static std::string str(const P& c) {
        return c.to_string();
    }
    static nlohmann::json json(const P& c) { return c.to_json(); }
    static bool is_unit(const P& c) {
        return c.is_constant() && CoeffOps<R>::is_unit(c.constant_term());
    }
    static P unit_inverse(const P& c) { return P(CoeffOps<R>::unit_inverse(c.constant_term())); }
    static bool is_scalar(const P& c) { return c.is_constant(); }
};

// Truncated multivariate power series in x_0..x_{n-1}. Terms above validDeg
// are never stored, so every stored coefficient is exact.
template <class C>
class Series {
public:
    using Terms = std::map<ExpKey, C>;

    Series() = default;
    Series(int numVars, int truncDeg) : n_(numVars), trunc_(truncDeg), valid_(truncDeg) {
        if (numVars < 1 || numVars > kMaxVars)
            throw DimensionMismatch("series supports 1.." + std::to_string(kMaxVars) + " variables");
        if (truncDeg < 0 || truncDeg > kMaxTrunc)
            throw DimensionMismatch("truncation degree out of range");
    }

    static Series constant(int n, int D, const C& c) {
        Series s(n, D);
        s.add_term(0, c);
        return s;
    }
    static Series one(int n, int D) { return constant(n, D, C(1)); }
    static Series var(int n, int D, int i, const C& c = C(1)) {
        Series s(n, D);
        if (D >= 1) s.add_term(exp_unit(i), c);
        return s;
    }
    static Series monomial(int n, int D, const std::vector<int>& e, const C& c = C(1)) {
        Series s(n, D);
        ExpKey k = pack_exponents(e);
        if (exp_total(k) <= D) s.add_term(k, c);
        return s;
    }

    int num_vars() const { return n_; }
    int trunc_deg() const { return trunc_; }
    int valid_deg() const { return valid_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    C coeff(ExpKey k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? C(0) : it->second;
    }
    C coeff(const std::vector<int>& e) const { return coeff(pack_exponents(e)); }

    void add_term(ExpKey k, const C& c) {
        if (CoeffOps<C>::is_zero(c) || exp_total(k) > valid_) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
        }
    }

    // Lowers validDeg and drops terms above it.
    void restrict_valid(int v) {
        if (v >= valid_) return;
        valid_ = std::max(v, -1);
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (exp_total(it->first) > valid_) it = terms_.erase(it);
            else ++it;
        }
    }

    void check_compatible(const Series& o) const {
        if (n_ != o.n_ || trunc_ != o.trunc_)
            throw DimensionMismatch("series shapes differ: (" + std::to_string(n_) + "," +
                                    std::to_string(trunc_) + ") vs (" + std::to_string(o.n_) + "," +
                                    std::to_string(o.trunc_) + ")");
    }

    Series& operator+=(const Series& o) {
        check_compatible(o);
        restrict_valid(o.valid_);
        for (auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    Series& operator-=(const Series& o) {
        check_compatible(o);
        restrict_valid(o.valid_);
        for (auto& [k, c] : o.terms_) add_term(k, C(-c));
        return *this;
    }
    Series operator-() const {
        Series r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    friend Series operator*(const Series& a, const Series& b) {
        a.check_compatible(b);
        Series r(a.n_, a.trunc_);
        r.valid_ = std::min(a.valid_, b.valid_);
        if (a.terms_.empty() || b.terms_.empty()) return r;
        struct T {
            ExpKey k;
            int d;
            const C* c;
        };
        auto flatten = [](const Terms& t) {
            std::vector<T> v;
            v.reserve(t.size());
            for (auto& [k, c] : t) v.push_back({k, exp_total(k), &c});
            std::sort(v.begin(), v.end(), [](const T& x, const T& y) { return x.d < y.d; });
            return v;
        };
        auto va = flatten(a.terms_), vb = flatten(b.terms_);
        std::unordered_map<ExpKey, C> acc;
        acc.reserve(va.size() * 4);
        for (auto& x : va) {
            if (x.d > r.valid_) break;
            for (auto& y : vb) {
                if (x.d + y.d > r.valid_) break;
                auto [it, fresh] = acc.try_emplace(x.k + y.k, C(0));
                CoeffOps<C>::addmul(it->second, *x.c, *y.c);
            }
        }
        for (auto& [k, c] : acc)
            if (!CoeffOps<C>::is_zero(c)) r.terms_.emplace(k, std::move(c));
        return r;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const C& s) const {
        Series r(n_, trunc_);
        r.valid_ = valid_;
        for (auto& [k, c] : terms_) {
            C v(0);
            CoeffOps<C>::addmul(v, c, s);
            if (!CoeffOps<C>::is_zero(v)) r.terms_.emplace(k, std::move(v));
        }
        return r;
    }

    // Multiplication by (x_i - x_j)^k.
    Series times_difference(int i, int j, int k) const {
        Series r = *this;
        for (int t = 0; t < k; ++t) {
            Series nr(n_, trunc_);
            nr.valid_ = r.valid_;
            for (auto& [key, c] : r.terms_) {
                nr.add_term(key + exp_unit(i), c);
                nr.add_term(key + exp_unit(j), C(-c));
            }
            r = std::move(nr);
        }
        return r;
    }

    // Exact division by (x_i - x_j)^k; validDeg drops by k. Throws NotDivisible
    // on a nonzero remainder in any degree that is still valid.
    Series divide_exact(int i, int j, int k) const {
        if (k < 1) throw DimensionMismatch("divide_exact needs k >= 1");
        if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
            throw DimensionMismatch("divide_exact index out of range");
        if (valid_ < k) throw NotDivisible("validDeg " + std::to_string(valid_) + " < k = " + std::to_string(k));
        Series cur = *this;
        for (int t = 0; t < k; ++t) cur = cur.divide_once(i, j);
        return cur;
    }

    Series divide_once(int i, int j) const;

    // Multiplicative inverse; the constant term must be a unit of C.
    Series inverse() const;
    Series pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Series r = one(n_, trunc_);
        r.valid_ = valid_;
        Series b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    Series swap_vars(int i, int j) const {
        Series r(n_, trunc_);
        r.valid_ = valid_;
        for (auto& [k, c] : terms_) r.terms_.emplace(swap_exponents(k, i, j), c);
        return r;
    }
    Series permute_vars(const std::vector<int>& perm) const {
        // perm[i] = image index of variable i
        Series r(n_, trunc_);
        r.valid_ = valid_;
        for (auto& [k, c] : terms_) {
            ExpKey nk = 0;
            for (int i = 0; i < n_; ++i) nk += ExpKey(exp_of(k, i)) << (8 * perm[i]);
            r.terms_.emplace(nk, c);
        }
        return r;
    }

    bool is_symmetric() const {
        for (int i = 0; i + 1 < n_; ++i)
            if (!(swap_vars(i, i + 1) == *this)) return false;
        return true;
    }

    // Homogeneity with x-degree 2 and coefficient degrees from CoeffOps.
    bool homogeneous_degree(int& d) const {
        bool first = true;
        for (auto& [k, c] : terms_) {
            int cd = 0;
            if (!CoeffOps<C>::degree(c, cd)) return false;
            int td = 2 * exp_total(k) + cd;
            if (first) {
                d = td;
                first = false;
            } else if (td != d) {
                return false;
            }
        }
        if (first) d = 0;
        return true;
    }

    // Component of x-degree exactly m.
    Series x_component(int m) const {
        Series r(n_, trunc_);
        r.valid_ = valid_;
        for (auto& [k, c] : terms_)
            if (exp_total(k) == m) r.terms_.emplace(k, c);
        return r;
    }

    template <class D2, class F>
    Series<D2> map_coeffs(F&& f) const {
        Series<D2> r(n_, trunc_);
        r.restrict_valid(valid_);
        for (auto& [k, c] : terms_) r.add_term(k, f(c));
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.n_ == b.n_ && a.valid_ == b.valid_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;
    nlohmann::json to_json() const;

private:
    int n_ = 1;
    int trunc_ = 0;
    int valid_ = 0;
    Terms terms_;
};

// Equality of the two series in every x-degree <= deg.
template <class C>
bool equal_up_to(const Series<C>& a, const Series<C>& b, int deg) {
    auto low = [deg](const Series<C>& s) {
        std::map<ExpKey, C> m;
        for (auto& [k, c] : s.terms())
            if (exp_total(k) <= deg) m.emplace(k, c);
        return m;
    };
    return low(a) == low(b);
}

template <class C>
Series<C> Series<C>::divide_once(int i, int j) const {
    // Group terms by the exponents of the other variables and the total
    // degree in (x_i, x_j); each group is a binary form c_a x_i^a x_j^{e-a}
    // and the quotient coefficients satisfy r_{a-1} = c_a + r_a.
    ExpKey mask = ~((ExpKey(0xff) << (8 * i)) | (ExpKey(0xff) << (8 * j)));
    std::map<std::pair<ExpKey, int>, std::map<int, C>> groups;
    for (auto& [k, c] : terms_) {
        int e = exp_of(k, i) + exp_of(k, j);
        groups[{k & mask, e}][exp_of(k, i)] = c;
    }
    Series r(n_, trunc_);
    r.valid_ = valid_ - 1;
    for (auto& [g, cs] : groups) {
        auto [rest, e] = g;
        int total = exp_total(rest) + e;
        if (e == 0) {
            throw NotDivisible("constant remainder in degree " + std::to_string(total));
        }
        C run(0);  // r_a for the current a
        std::vector<C> q(e);
        for (int a = e; a >= 1; --a) {
            auto it = cs.find(a);
            if (it != cs.end()) run += it->second;
            q[a - 1] = run;
        }
        // remainder: c_0 + r_0 must vanish
        C rem = q[0];
        auto it0 = cs.find(0);
        if (it0 != cs.end()) rem += it0->second;
        if (!CoeffOps<C>::is_zero(rem))
            throw NotDivisible("nonzero remainder in degree " + std::to_string(total));
        for (int b = 0; b < e; ++b) {
            if (CoeffOps<C>::is_zero(q[b])) continue;
            ExpKey k = rest + ExpKey(b) * exp_unit(i) + ExpKey(e - 1 - b) * exp_unit(j);
            r.add_term(k, q[b]);
        }
    }
    return r;
}

template <class C>
Series<C> Series<C>::inverse() const {
    C c0 = coeff(ExpKey(0));
    if (!CoeffOps<C>::is_unit(c0)) throw NotDivisible("series constant term is not a unit");
    C inv0 = CoeffOps<C>::unit_inverse(c0);
    std::vector<Series> comp;  // homogeneous x-components of *this
    for (int d = 0; d <= valid_; ++d) comp.push_back(x_component(d));
    std::vector<Series> out;
    Series r(n_, trunc_);
    r.valid_ = valid_;
    Series first = constant(n_, trunc_, inv0);
    out.push_back(first);
    for (int d = 1; d <= valid_; ++d) {
        Series acc(n_, trunc_);
        for (int e = 1; e <= d; ++e) {
            if (comp[e].is_zero() || out[d - e].is_zero()) continue;
            acc += comp[e] * out[d - e];
        }
        out.push_back((-acc).scaled(inv0));
    }
    for (auto& s : out)
        for (auto& [k, c] : s.terms()) r.add_term(k, c);
    return r;
}

template <class C>
std::string Series<C>::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<ExpKey, const C*>> v;
    for (auto& [k, c] : terms_) v.push_back({k, &c});
    // degree-lex: lower total degree first, then larger exponent of x1 first
    std::sort(v.begin(), v.end(), [this](auto& a, auto& b) {
        int da = exp_total(a.first), db = exp_total(b.first);
        if (da != db) return da < db;
        for (int i = 0; i < n_; ++i) {
            int ea = exp_of(a.first, i), eb = exp_of(b.first, i);
            if (ea != eb) return ea > eb;
        }
        return false;
    });
    std::string out;
    bool first = true;
    for (auto& [k, c] : v) {
        std::string mono;
        for (int i = 0; i < n_; ++i) {
            int e = exp_of(k, i);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string cs = CoeffOps<C>::str(*c);
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        if (!first) out += " + ";
        first = false;
        if (mono.empty()) out += compound ? "(" + cs + ")" : cs;
        else if (cs == "1") out += mono;
        else if (cs == "-1") out += "-" + mono;
        else out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
    return out;
}

template <class C>
nlohmann::json Series<C>::to_json() const {
    std::map<std::string, nlohmann::json> flat;
    for (auto& [k, c] : terms_) {
        std::string key;
        for (int i = 0; i < n_; ++i) {
            if (i) key += ",";
            key += std::to_string(exp_of(k, i));
        }
        flat[key] = CoeffOps<C>::json(c);
    }
    nlohmann::json terms = nlohmann::json::object();
    for (auto& [k, v] : flat) terms[k] = v;
    return nlohmann::json{{"num_vars", n_}, {"trunc_deg", trunc_}, {"valid_deg", valid_}, {"terms", terms}};
}

using TruncSeries = Series<CoeffPoly>;
using IntSeries = Series<mpz_class>;
using QSeries = Series<QPoly>;

}  // namespace foamcalc
