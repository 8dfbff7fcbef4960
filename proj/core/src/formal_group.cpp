#include "foamcalc/formal_group.hpp"

#include <functional>

namespace foamcalc {

namespace {

QPoly param_symbol(int degreeHalf, std::optional<long> value) {
    if (value) return QPoly(mpq_class(*value));
    return QPoly::var({degreeHalf, 0, VarKind::Param});
}

QSeries qvar(int n, int D, int i) { return QSeries::var(n, D, i); }

// Univariate series from a coefficient vector c[k] x^k.
QSeries univariate(int D, const std::vector<QPoly>& c) {
    QSeries s(1, D);
    for (size_t k = 0; k < c.size() && static_cast<int>(k) <= D; ++k) s.add_term(pack_exponents({int(k)}), c[k]);
    return s;
}

bool is_integral(const QPoly& p) {
    for (auto& [m, c] : p.terms())
        if (c.get_den() != 1) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------- substitution

QSeries substitute(const QSeries& g, const std::vector<QSeries>& subs) {
    if (static_cast<int>(subs.size()) != g.num_vars()) throw DimensionMismatch("substitute: one series per variable");
    if (subs.empty()) throw DimensionMismatch("substitute: nothing to substitute");
    int n = subs[0].num_vars(), D = subs[0].trunc_deg();
    int valid = D;
    for (auto& s : subs) {
        s.check_compatible(subs[0]);
        if (!CoeffOps<QPoly>::is_zero(s.coeff(ExpKey(0))))
            throw DimensionMismatch("substitute: substituted series must vanish at 0");
        valid = std::min(valid, s.valid_deg());
    }
    valid = std::min(valid, g.valid_deg());
    // powers[k][e] = subs[k]^e
    std::vector<std::vector<QSeries>> powers(subs.size());
    auto power = [&](size_t k, int e) -> const QSeries& {
        auto& v = powers[k];
        if (v.empty()) v.push_back(QSeries::one(n, D));
        while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * subs[k]);
        return v[e];
    };
    QSeries out(n, D);
    out.restrict_valid(valid);
    for (auto& [key, c] : g.terms()) {
        // every substituted variable raises degree by at least one
        if (exp_total(key) > valid) continue;
        QSeries t = QSeries::constant(n, D, c);
        for (int k = 0; k < g.num_vars(); ++k) {
            int e = exp_of(key, k);
            if (e) t *= power(k, e);
        }
        out += t;
    }
    return out;
}

QSeries compositional_inverse(const QSeries& g) {
    if (g.num_vars() != 1) throw DimensionMismatch("compositional inverse needs one variable");
    if (!CoeffOps<QPoly>::is_zero(g.coeff({0})) || !(g.coeff({1}) == QPoly(1)))
        throw DimensionMismatch("compositional inverse needs leading term x");
    int D = g.trunc_deg();
    QSeries h = qvar(1, D, 0);
    h.restrict_valid(g.valid_deg());
    // fix the x^d coefficient of g(h(x)) one degree at a time
    for (int d = 2; d <= h.valid_deg(); ++d) {
        QSeries gh = substitute(g, {h});
        QPoly c = gh.coeff({d});
        if (!c.is_zero()) h.add_term(pack_exponents({d}), -c);
    }
    return h;
}

// ---------------------------------------------------------------- laws

FormalGroupLaw FormalGroupLaw::additive(int D) {
    FormalGroupLaw f;
    f.kind_ = LawKind::Additive;
    f.name_ = "additive";
    f.D_ = D;
    f.F_ = qvar(2, D, 0) + qvar(2, D, 1);
    return f;
}

FormalGroupLaw FormalGroupLaw::multiplicative(int D, std::optional<long> beta) {
    FormalGroupLaw f;
    f.kind_ = LawKind::Multiplicative;
    f.name_ = "multiplicative";
    f.param_ = beta;
    f.D_ = D;
    auto x = qvar(2, D, 0), y = qvar(2, D, 1);
    f.F_ = x + y - (x * y).scaled(param_symbol(1, beta));
    if (!f.is_associative()) throw DomainError("NotAssociative", "multiplicative law failed associativity");
    return f;
}

FormalGroupLaw FormalGroupLaw::lorentz(int D, std::optional<long> betaSquared) {
    FormalGroupLaw f;
    f.kind_ = LawKind::Lorentz;
    f.name_ = "lorentz";
    f.param_ = betaSquared;
    f.D_ = D;
    auto x = qvar(2, D, 0), y = qvar(2, D, 1);
    auto den = QSeries::one(2, D) + (x * y).scaled(param_symbol(2, betaSquared));
    f.F_ = (x + y) * den.inverse();
    if (!f.is_associative()) throw DomainError("NotAssociative", "lorentz law failed associativity");
    return f;
}

FormalGroupLaw FormalGroupLaw::universal_rational(int D) {
    FormalGroupLaw f;
    f.kind_ = LawKind::UniversalRational;
    f.ring_ = RingTag::Rational;
    f.name_ = "universal";
    f.D_ = D;
    std::vector<QPoly> logc(D + 1, QPoly(0));
    for (int k = 0; k + 1 <= D; ++k) {
        QPoly lk = k == 0 ? QPoly(1) : QPoly::var({k, 0, VarKind::Log});
        logc[k + 1] = lk.scaled(mpq_class(1, k + 1));
    }
    QSeries lg = univariate(D, logc);
    QSeries ex = compositional_inverse(lg);
    QSeries sum = substitute(lg, {qvar(2, D, 0)}) + substitute(lg, {qvar(2, D, 1)});
    f.F_ = substitute(ex, {sum});
    return f;
}

FormalGroupLaw FormalGroupLaw::by_name(const std::string& name, int D, std::optional<long> param) {
    if (name == "additive") return additive(D);
    if (name == "multiplicative" || name == "mult") return multiplicative(D, param);
    if (name == "lorentz") return lorentz(D, param);
    if (name == "universal" || name == "universalRational") return universal_rational(D);
    throw DomainError("UnknownLaw", "unknown formal group law '" + name + "'");
}

FormalGroupLaw FormalGroupLaw::as_rational() const {
    FormalGroupLaw f = *this;
    f.ring_ = RingTag::Rational;
    return f;
}

FormalGroupLaw FormalGroupLaw::at_trunc(int D) const {
    FormalGroupLaw f = by_name(name_, D, param_);
    f.ring_ = ring_;
    return f;
}

bool FormalGroupLaw::is_commutative() const { return F_.swap_vars(0, 1) == F_; }

bool FormalGroupLaw::is_unital() const {
    auto x = qvar(1, D_, 0);
    QSeries zero(1, D_);
    auto fx0 = substitute(F_, {x, zero});
    auto f0x = substitute(F_, {zero, x});
    return equal_up_to(fx0, x, fx0.valid_deg()) && equal_up_to(f0x, x, f0x.valid_deg());
}

bool FormalGroupLaw::is_associative() const {
    auto x = qvar(3, D_, 0), y = qvar(3, D_, 1), z = qvar(3, D_, 2);
    auto fyz = substitute(F_, {y, z});
    auto fxy = substitute(F_, {x, y});
    auto lhs = substitute(F_, {x, fyz});
    auto rhs = substitute(F_, {fxy, z});
    int v = std::min(lhs.valid_deg(), rhs.valid_deg());
    return equal_up_to(lhs, rhs, v);
}

nlohmann::json FormalGroupLaw::to_json() const {
    nlohmann::json j;
    j["law"] = name_;
    j["ring"] = ring_ == RingTag::Integral ? "integral" : "rational";
    j["truncDeg"] = D_;
    if (param_) j["param"] = *param_;
    j["series"] = F_.to_json();
    j["text"] = F_.to_string();
    return j;
}

// ---------------------------------------------------------------- derived series

QSeries formal_negative(const FormalGroupLaw& F) {
    int D = F.trunc_deg();
    QSeries neg = -qvar(1, D, 0);
    auto x = qvar(1, D, 0);
    // dF/dy(0,0) = 1, so a correction at x^d changes F(x, neg) at x^d only
    for (int d = 2; d <= D; ++d) {
        QPoly c = substitute(F.series(), {x, neg}).coeff({d});
        if (!c.is_zero()) neg.add_term(pack_exponents({d}), -c);
    }
    return neg;
}

QSeries formal_difference(const FormalGroupLaw& F) {
    int D = F.trunc_deg();
    QSeries neg = formal_negative(F);
    QSeries negy = substitute(neg, {qvar(2, D, 1)});
    return substitute(F.series(), {qvar(2, D, 0), negy});
}

QSeries q_series(const FormalGroupLaw& F) { return formal_difference(F).divide_exact(0, 1, 1); }

QSeries fgl_log(const FormalGroupLaw& F) {
    if (F.ring() != RingTag::Rational)
        throw RequiresRational("the logarithm of '" + F.name() + "' needs rational mode");
    int D = F.trunc_deg();
    // dF/dy (x, 0) = 1 + sum_i a_{i1} x^i
    std::vector<QPoly> d(D + 1, QPoly(0));
    for (auto& [k, c] : F.series().terms())
        if (exp_of(k, 1) == 1) d[exp_of(k, 0)] += c;
    QSeries deriv = univariate(D, d);
    deriv.restrict_valid(D - 1);
    QSeries inv = deriv.inverse();
    QSeries lg(1, D);
    for (auto& [k, c] : inv.terms()) {
        int e = exp_of(k, 0);
        lg.add_term(pack_exponents({e + 1}), c.scaled(mpq_class(1, e + 1)));
    }
    return lg;
}

QSeries q_embedded(const FormalGroupLaw& F, int n, int D, int i, int j) {
    FormalGroupLaw G = F.trunc_deg() >= D + 1 ? F : F.at_trunc(D + 1);
    QSeries q = q_series(G);
    QSeries r(n, D);
    r.restrict_valid(std::min(D, q.valid_deg()));
    for (auto& [k, c] : q.terms())
        r.add_term(ExpKey(exp_of(k, 0)) * exp_unit(i) + ExpKey(exp_of(k, 1)) * exp_unit(j), c);
    return r;
}

// ---------------------------------------------------------------- operators

QSeries apply_divided_difference(const DividedDiffOp& op, const QSeries& f) {
    int n = f.num_vars(), D = f.trunc_deg();
    if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= n || op.j >= n)
        throw DimensionMismatch("divided difference root out of range");
    auto classical = [&](const QSeries& g) { return (g - g.swap_vars(op.i, op.j)).divide_exact(op.i, op.j, 1); };
    if (op.mode == DDMode::Classical) return classical(f);
    if (!op.law) throw DimensionMismatch("generalized divided difference needs a formal group law");
    QSeries q = q_embedded(*op.law, n, D, op.i, op.j);
    QSeries a = classical(q.inverse() * f);
    if (op.mode == DDMode::Generalized) return a;
    return q * a;
}

bool NilHeckeReport::all_pass() const {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json NilHeckeReport::to_json() const {
    nlohmann::json j;
    j["law"] = law;
    j["n"] = n;
    j["truncDeg"] = D;
    j["pass"] = all_pass();
    j["checks"] = nlohmann::json::array();
    for (auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"tested", c.tested}, {"detail", c.detail}});
    return j;
}

namespace {

std::vector<std::vector<int>> monomials_up_to(int n, int D) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[pos] = k;
            rec(pos + 1, left - k);
        }
        e[pos] = 0;
    };
    rec(0, D);
    return out;
}

std::string mono_name(const std::vector<int>& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

void record(IdentityCheck& c, const QSeries& lhs, const QSeries& rhs, const std::string& what) {
    int v = std::min(lhs.valid_deg(), rhs.valid_deg());
    ++c.tested;
    if (c.pass && !equal_up_to(lhs, rhs, v)) {
        c.pass = false;
        c.detail = what;
    }
}

QSeries elementary(int n, int D, int k) {
    // e_k(x_1..x_n)
    QSeries s(n, D);
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::vector<int> e(n, 0);
        for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1;
        s += QSeries::monomial(n, D, e);
    }
    return s;
}

}  // namespace

NilHeckeReport check_nilhecke(const FormalGroupLaw& F, int n, int D) {
    if (n < 2 || n > 4) throw DimensionMismatch("nilHecke checks support 2 <= n <= 4");
    NilHeckeReport rep;
    rep.law = F.name();
    rep.n = n;
    rep.D = D;
    FormalGroupLaw G = F.trunc_deg() >= D + 1 ? F : F.at_trunc(D + 1);

    std::vector<QSeries> q(n - 1), qinv(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        q[i] = q_embedded(G, n, D, i, i + 1);
        qinv[i] = q[i].inverse();
    }
    auto D_ = [&](int i, const QSeries& f) {
        return apply_divided_difference({i, i + 1, DDMode::Classical, &G}, f);
    };
    auto A = [&](int i, const QSeries& f) { return D_(i, qinv[i] * f); };
    auto T = [&](int i, const QSeries& f) { return q[i] * A(i, f); };

    IdentityCheck twistedSq{"twisted operator squares to zero"};
    IdentityCheck classicalSq{"classical operator squares to zero"};
    IdentityCheck braid{"braid relation for twisted operators"};
    IdentityCheck farComm{"distant twisted operators commute"};
    IdentityCheck defn{"A equals D after multiplying by q^-1 (defining formula)"};
    IdentityCheck module{"A is linear over x_i,x_j-symmetric series"};

    // x_i [-1] x_j and x_j [-1] x_i inside n variables
    QSeries fd2 = formal_difference(G);
    auto embed2 = [&](const QSeries& s, int i, int j) {
        QSeries r(n, D);
        r.restrict_valid(std::min(D, s.valid_deg()));
        for (auto& [k, c] : s.terms())
            r.add_term(ExpKey(exp_of(k, 0)) * exp_unit(i) + ExpKey(exp_of(k, 1)) * exp_unit(j), c);
        return r;
    };

    for (auto& e : monomials_up_to(n, D)) {
        QSeries f = QSeries::monomial(n, D, e);
        std::string nm = mono_name(e);
        QSeries zero(n, D);
        for (int i = 0; i + 1 < n; ++i) {
            std::string at = " at " + nm + ", root " + std::to_string(i + 1);
            record(twistedSq, T(i, T(i, f)), zero, at);
            record(classicalSq, D_(i, D_(i, f)), zero, at);
            QSeries a = A(i, f);
            QSeries dij = embed2(fd2, i, i + 1), dji = embed2(fd2, i + 1, i);
            record(defn, a * dij * dji, f * dji + f.swap_vars(i, i + 1) * dij, at);
            QSeries xi = QSeries::var(n, D, i), xj = QSeries::var(n, D, i + 1);
            for (auto& g : {xi + xj, xi * xj}) record(module, A(i, f * g), a * g, at);
            if (i + 2 < n) {
                record(braid, T(i, T(i + 1, T(i, f))), T(i + 1, T(i, T(i + 1, f))), at);
            }
            for (int j = i + 2; j + 1 < n; ++j) record(farComm, T(i, T(j, f)), T(j, T(i, f)), at);
        }
    }
    rep.checks = {twistedSq, classicalSq, defn, module};
    if (n >= 3) rep.checks.push_back(braid);
    if (n >= 4) rep.checks.push_back(farComm);

    if (n <= 3) {
        IdentityCheck kernel{"q(positive roots) * symmetric lies in every kernel"};
        QSeries qpos = QSeries::one(n, D);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) qpos *= q_embedded(G, n, D, i, j);
        std::vector<std::pair<std::string, QSeries>> sym = {{"1", QSeries::one(n, D)}};
        for (int k = 1; k <= n; ++k) sym.push_back({"e" + std::to_string(k), elementary(n, D, k)});
        sym.push_back({"e1^2", elementary(n, D, 1) * elementary(n, D, 1)});
        QSeries zero(n, D);
        for (auto& [gn, g] : sym)
            for (int i = 0; i + 1 < n; ++i)
                record(kernel, A(i, qpos * g), zero, " at g=" + gn + ", root " + std::to_string(i + 1));
        rep.checks.push_back(kernel);
    }
    return rep;
}

}  // namespace foamcalc
