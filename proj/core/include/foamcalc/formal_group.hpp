#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foamcalc/series.hpp"

namespace foamcalc {

enum class RingTag { Integral, Rational };
enum class LawKind { Additive, Multiplicative, Lorentz, UniversalRational };

// F(x, y) = x + y + sum a_ij x^i y^j, kept as a two-variable rational series
// truncated at total degree D.
class FormalGroupLaw {
public:
    static FormalGroupLaw additive(int D);
    // beta symbolic when no value is given
    static FormalGroupLaw multiplicative(int D, std::optional<long> beta = std::nullopt);
    // parameter is beta^2 (degree -4)
    static FormalGroupLaw lorentz(int D, std::optional<long> betaSquared = std::nullopt);
    // exp(log x + log y) with log x = sum_k l_k x^{k+1}/(k+1), l_0 = 1
    static FormalGroupLaw universal_rational(int D);
    static FormalGroupLaw by_name(const std::string& name, int D, std::optional<long> param = std::nullopt);

    LawKind kind() const { return kind_; }
    RingTag ring() const { return ring_; }
    const std::string& name() const { return name_; }
    int trunc_deg() const { return D_; }
    const QSeries& series() const { return F_; }
    QPoly coeff(int i, int j) const { return F_.coeff({i, j}); }

    // Same law with the rational tag, which the logarithm requires.
    FormalGroupLaw as_rational() const;
    // The same law rebuilt at another truncation.
    FormalGroupLaw at_trunc(int D) const;

    bool is_commutative() const;
    bool is_unital() const;
    bool is_associative() const;

    nlohmann::json to_json() const;

private:
    FormalGroupLaw() = default;
    LawKind kind_ = LawKind::Additive;
    RingTag ring_ = RingTag::Integral;
    std::string name_;
    std::optional<long> param_;
    int D_ = 0;
    QSeries F_;
};

// Substitutes subs[k] for variable k of g. Every substituted series must have
// zero constant term so that truncation stays exact.
QSeries substitute(const QSeries& g, const std::vector<QSeries>& subs);
// Compositional inverse of a one-variable series with leading term x.
QSeries compositional_inverse(const QSeries& g);

// [-1]x as a one-variable series.
QSeries formal_negative(const FormalGroupLaw& F);
// x [-1] y = F(x, [-1]y).
QSeries formal_difference(const FormalGroupLaw& F);
// q(x, y) with (x - y) q(x, y) = x [-1] y.
QSeries q_series(const FormalGroupLaw& F);
// log_F(x); throws RequiresRational for integral-tagged laws.
QSeries fgl_log(const FormalGroupLaw& F);

// q(x_i, x_j) placed inside an n-variable series truncated at D.
QSeries q_embedded(const FormalGroupLaw& F, int n, int D, int i, int j);

enum class DDMode {
    Classical,    // D(f) = (f - r f) / (x_i - x_j)
    Generalized,  // A(f) = D(q(x_i,x_j)^{-1} f)
    Twisted       // Q o A, i.e. f -> q(x_i,x_j) A(f)
};

struct DividedDiffOp {
    int i = 0;
    int j = 1;
    DDMode mode = DDMode::Generalized;
    const FormalGroupLaw* law = nullptr;
};

QSeries apply_divided_difference(const DividedDiffOp& op, const QSeries& f);

struct IdentityCheck {
    std::string name;
    bool pass = true;
    int tested = 0;      // instances compared
    std::string detail;  // first failing instance
};

struct NilHeckeReport {
    std::string law;
    int n = 0;
    int D = 0;
    std::vector<IdentityCheck> checks;
    bool all_pass() const;
    nlohmann::json to_json() const;
};

// Operator identities on all monomials of degree <= D in n <= 4 variables,
// compared up to the valid degree of each result.
NilHeckeReport check_nilhecke(const FormalGroupLaw& F, int n, int D);

}  // namespace foamcalc
