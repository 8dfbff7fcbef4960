#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace foamcalc {

// What a coefficient variable stands for; only affects printing.
//   Beta   beta_{k,l}, printed bKL
//   Log    logarithm coefficient l_k stored as (k, 0), printed lK
//   Param  a formal group law parameter of degree -2(k+l), printed beta or
//          beta^2-style names (beta, beta2, ...)
enum class VarKind : std::uint8_t { Beta, Log, Param };

// A coefficient variable of degree -2(k+l).
struct VarIndex {
    int k = 0;
    int l = 0;
    VarKind kind = VarKind::Beta;
    auto operator<=>(const VarIndex&) const = default;
    int degree() const { return -2 * (k + l); }
};

// Sorted (var, exponent) list, exponents > 0.
using BetaMonomial = std::vector<std::pair<VarIndex, int>>;

inline int monomial_degree(const BetaMonomial& m) {
    int d = 0;
    for (auto& [v, e] : m) d += v.degree() * e;
    return d;
}

BetaMonomial monomial_product(const BetaMonomial& a, const BetaMonomial& b);

template <class R>
class MPoly {
public:
    using Coef = R;
    using Terms = std::map<BetaMonomial, R>;

    MPoly() = default;
    MPoly(long c) {  // NOLINT: implicit constant embedding is intended
        if (c != 0) terms_[{}] = R(c);
    }
    explicit MPoly(const R& c) {
        if (c != 0) terms_[{}] = c;
    }
    static MPoly var(VarIndex v, int e = 1) {
        MPoly p;
        p.terms_[{{v, e}}] = R(1);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    R constant_term() const {
        auto it = terms_.find({});
        return it == terms_.end() ? R(0) : it->second;
    }

    void add_term(const BetaMonomial& m, const R& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, R(-c));
        return *this;
    }
    MPoly operator-() const {
        MPoly r;
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        if (a.is_constant()) return b.scaled(a.constant_term());
        if (b.is_constant()) return a.scaled(b.constant_term());
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), R(ca * cb));
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly scaled(const R& s) const {
        MPoly r;
        if (s == 0) return r;
        for (auto& [m, c] : terms_) r.terms_[m] = R(c * s);
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    // Returns true and sets d when every term has the same degree.
    bool homogeneous_degree(int& d) const {
        bool first = true;
        for (auto& [m, c] : terms_) {
            int md = monomial_degree(m);
            if (first) {
                d = md;
                first = false;
            } else if (md != d) {
                return false;
            }
        }
        if (first) d = 0;
        return true;
    }

    MPoly homogeneous_component(int d) const {
        MPoly r;
        for (auto& [m, c] : terms_)
            if (monomial_degree(m) == d) r.terms_[m] = c;
        return r;
    }

    // Substitute integer values for every variable (unassigned vars -> 0).
    R evaluate(const std::map<VarIndex, R>& values) const {
        R acc = 0;
        for (auto& [m, c] : terms_) {
            R t = c;
            for (auto& [v, e] : m) {
                auto it = values.find(v);
                if (it == values.end()) {
                    t = 0;
                    break;
                }
                for (int i = 0; i < e; ++i) t *= it->second;
            }
            acc += t;
        }
        return acc;
    }

    std::string to_string() const;
    nlohmann::json to_json() const;

private:
    Terms terms_;
};

using CoeffPoly = MPoly<mpz_class>;
using QPoly = MPoly<mpq_class>;

std::string monomial_to_string(const BetaMonomial& m);
std::string monomial_key(const BetaMonomial& m);

// Deterministic ordering for printing: degree (descending, i.e. closest to 0
// first), then lexicographic.
bool beta_monomial_print_less(const BetaMonomial& a, const BetaMonomial& b);

template <class R>
std::string MPoly<R>::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const typename Terms::value_type*> order;
    for (auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return beta_monomial_print_less(a->first, b->first);
    });
    std::string out;
    bool first = true;
    for (auto* t : order) {
        R c = t->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        first = false;
        std::string mono = monomial_to_string(t->first);
        if (mono.empty()) out += c.get_str();
        else if (c == 1) out += mono;
        else out += c.get_str() + "*" + mono;
    }
    return out;
}

template <class R>
nlohmann::json MPoly<R>::to_json() const {
    // std::map over sorted keys yields canonical member order.
    std::map<std::string, std::string> flat;
    for (auto& [m, c] : terms_) flat[monomial_key(m)] = c.get_str();
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, v] : flat) j[k] = v;
    return j;
}

}  // namespace foamcalc
