#pragma once

#include <gmpxx.h>

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foamcalc/series.hpp"

namespace foamcalc {

// Monomial rho1^n1 rho0^n2 rho^n3 E1^a E2^b with n1 in {0,1}.
struct GroundMonomial {
    int n1 = 0;
    int n2 = 0;
    int n3 = 0;
    int a = 0;
    int b = 0;
    auto operator<=>(const GroundMonomial&) const = default;
    int degree() const { return 2 * a + 4 * b - 2 * n2; }
};

// Exact element of Z[E1,E2,rho0,rho1,rho^{+-1}] kept in the normal form with
// rho1 exponent at most one.
class GroundRingElem {
public:
    using Terms = std::map<GroundMonomial, mpz_class>;

    GroundRingElem() = default;
    GroundRingElem(long c) {  // NOLINT
        if (c) terms_[{}] = c;
    }
    explicit GroundRingElem(const mpz_class& c) {
        if (c != 0) terms_[{}] = c;
    }

    static GroundRingElem E1() { return mono({0, 0, 0, 1, 0}); }
    static GroundRingElem E2() { return mono({0, 0, 0, 0, 1}); }
    static GroundRingElem rho0() { return mono({0, 1, 0, 0, 0}); }
    static GroundRingElem rho1() { return mono({1, 0, 0, 0, 0}); }
    static GroundRingElem rho() { return mono({0, 0, 1, 0, 0}); }
    static GroundRingElem rho_pow(int k) { return mono({0, 0, k, 0, 0}); }
    // Dotted thin sphere value rho_n, via rho_{n+2} = E1 rho_{n+1} - E2 rho_n.
    static GroundRingElem rho_n(int n);
    static GroundRingElem mono(GroundMonomial m, const mpz_class& c = 1) {
        GroundRingElem e;
        e.add_term(m, c);
        return e;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c*m, reducing rho1^2 -> E1 rho0 rho1 - E2 rho0^2 - rho as needed.
    void add_term(GroundMonomial m, const mpz_class& c);

    GroundRingElem& operator+=(const GroundRingElem& o);
    GroundRingElem& operator-=(const GroundRingElem& o);
    GroundRingElem operator-() const;
    friend GroundRingElem operator+(GroundRingElem a, const GroundRingElem& b) { return a += b; }
    friend GroundRingElem operator-(GroundRingElem a, const GroundRingElem& b) { return a -= b; }
    friend GroundRingElem operator*(const GroundRingElem& a, const GroundRingElem& b);
    GroundRingElem& operator*=(const GroundRingElem& o) { return *this = *this * o; }
    GroundRingElem scaled(const mpz_class& s) const;
    GroundRingElem pow(int e) const;  // negative e only for units +-rho^k
    friend bool operator==(const GroundRingElem& a, const GroundRingElem& b) { return a.terms_ == b.terms_; }

    bool homogeneous_degree(int& d) const;
    // Units of R are exactly +-rho^k; returns k and the sign.
    bool is_unit(int* rhoExp = nullptr, int* sign = nullptr) const;
    std::optional<GroundRingElem> unit_inverse() const;

    std::string to_string() const;
    nlohmann::json to_json() const;
    static GroundRingElem from_json(const nlohmann::json& j);

private:
    Terms terms_;
};

// Parses a formal word such as "rho1^2 - 3*E1*rho0*rho^-1" and returns its
// normal form. Symbols: E1 E2 rho0 rho1 rho; integer coefficients; ^ with a
// (possibly negative) integer exponent; parentheses.
GroundRingElem ground_normal_form(const std::string& expr);

// Exact division in R. Returns nullopt when b does not divide a.
std::optional<GroundRingElem> ground_divide(const GroundRingElem& a, const GroundRingElem& b);

struct GroundTarget {
    mpz_class E1 = 0, E2 = 0, rho0 = 0, rho1 = 0;
    mpz_class rho() const { return -(rho1 * rho1 - E1 * rho1 * rho0 + E2 * rho0 * rho0); }
};

struct Specialization {
    std::string name;
    std::map<VarIndex, mpz_class> betaValues;
    std::optional<GroundTarget> groundTarget;

    static Specialization khovanov();
    static Specialization multiplicative();
    static Specialization from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Ring homomorphism R -> Z given by the ground target.
mpz_class specialize(const GroundRingElem& e, const Specialization& s);

// p(x,y) = 1 + sum beta_{k,l} x^k y^l truncated at D, in two variables.
TruncSeries generic_p(int D);
// 1 - b y with a single symbol b (printed b01).
TruncSeries multiplicative_p(int D);
// p with the beta values of a specialization substituted.
IntSeries specialized_p(const std::map<VarIndex, mpz_class>& beta, int D);
// Reorders a two-variable p into p(x_i, x_j) inside an N-variable series.
template <class C>
Series<C> embed_p(const Series<C>& p2, int N, int i, int j) {
    Series<C> r(N, p2.trunc_deg());
    r.restrict_valid(p2.valid_deg());
    for (auto& [k, c] : p2.terms())
        r.add_term(ExpKey(exp_of(k, 0)) * exp_unit(i) + ExpKey(exp_of(k, 1)) * exp_unit(j), c);
    return r;
}

template <class C>
struct RhoSeries {
    Series<C> rho0, rho1, rho, rhoInv, E1, E2;
};

// Series expansions of rho0, rho1, rho, rho^{-1}, E1, E2 from (p12, p21).
// rhoInv stays empty unless withInverse is set.
template <class C>
RhoSeries<C> rho_series(const Series<C>& p12, const Series<C>& p21, bool withInverse = true);

template <class C>
Series<C> expand_in_series(const GroundRingElem& e, const Series<C>& p12, const Series<C>& p21);

// Rewrites a symmetric two-variable series in E1, E2; keys are (a, b) for
// E1^a E2^b.
template <class C>
std::map<std::pair<int, int>, C> to_elementary_symmetric(const Series<C>& s);

// Expands sum c_{ab} E1^a E2^b back into x1, x2.
template <class C>
Series<C> from_elementary_symmetric(const std::map<std::pair<int, int>, C>& poly, int D, int valid);

// Checks that the ground target agrees with the expansion of rho0 and rho1
// from the specialized p (up to the valid degree).
bool specialization_consistent(const Specialization& s, int D);

// Polynomials in x1, x2 over Z[rho0, rho^{+-1}], paired with a rho1 part:
// the working ring for exact GL(2) evaluation.
class RhoPoly {
public:
    struct Key {
        int n2 = 0, n3 = 0, e1 = 0, e2 = 0;
        auto operator<=>(const Key&) const = default;
    };
    using Part = std::map<Key, mpz_class>;

    RhoPoly() = default;
    static RhoPoly constant(long c);
    static RhoPoly x(int i);  // i = 0 or 1
    static RhoPoly rho0();
    static RhoPoly rho1();
    static RhoPoly rho_pow(int k);

    RhoPoly& operator+=(const RhoPoly& o);
    friend RhoPoly operator+(RhoPoly a, const RhoPoly& b) { return a += b; }
    friend RhoPoly operator*(const RhoPoly& a, const RhoPoly& b);
    RhoPoly scaled(long s) const;
    RhoPoly pow(int e) const;
    bool is_zero() const { return part0_.empty() && part1_.empty(); }

    // Exact division by (x1 - x2)^k; throws NotDivisible.
    RhoPoly divide_difference(int k) const;
    RhoPoly times_difference(int k) const;
    // Rewrites in E1, E2 (throws NotSymmetric).
    GroundRingElem to_ground() const;

    const Part& part0() const { return part0_; }
    const Part& part1() const { return part1_; }

private:
    Part part0_, part1_;  // value = part0 + part1 * rho1
};

}  // namespace foamcalc
