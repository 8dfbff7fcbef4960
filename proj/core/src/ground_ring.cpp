#include "foamcalc/ground_ring.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace foamcalc {

// ---------------------------------------------------------------- R itself

void GroundRingElem::add_term(GroundMonomial m, const mpz_class& c) {
    if (c == 0) return;
    if (m.n1 >= 2) {
        // rho1^2 = E1 rho0 rho1 - E2 rho0^2 - rho
        GroundMonomial base = m;
        base.n1 -= 2;
        add_term({base.n1 + 1, base.n2 + 1, base.n3, base.a + 1, base.b}, c);
        add_term({base.n1, base.n2 + 2, base.n3, base.a, base.b + 1}, -c);
        add_term({base.n1, base.n2, base.n3 + 1, base.a, base.b}, -c);
        return;
    }
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GroundRingElem& GroundRingElem::operator+=(const GroundRingElem& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GroundRingElem& GroundRingElem::operator-=(const GroundRingElem& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GroundRingElem GroundRingElem::operator-() const {
    GroundRingElem r;
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

GroundRingElem operator*(const GroundRingElem& a, const GroundRingElem& b) {
    GroundRingElem r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            r.add_term({ma.n1 + mb.n1, ma.n2 + mb.n2, ma.n3 + mb.n3, ma.a + mb.a, ma.b + mb.b},
                       ca * cb);
    return r;
}

GroundRingElem GroundRingElem::scaled(const mpz_class& s) const {
    GroundRingElem r;
    if (s == 0) return r;
    for (auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
}

GroundRingElem GroundRingElem::pow(int e) const {
    if (e < 0) {
        auto inv = unit_inverse();
        if (!inv) throw NonUnitRho("negative power of a non-unit of R");
        return inv->pow(-e);
    }
    GroundRingElem r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

GroundRingElem GroundRingElem::rho_n(int n) {
    if (n < 0) throw DimensionMismatch("rho_n needs n >= 0");
    GroundRingElem a = rho0(), b = rho1();
    if (n == 0) return a;
    for (int i = 1; i < n; ++i) {
        GroundRingElem c = E1() * b - E2() * a;
        a = b;
        b = c;
    }
    return b;
}

bool GroundRingElem::homogeneous_degree(int& d) const {
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (first) {
            d = m.degree();
            first = false;
        } else if (m.degree() != d) {
            return false;
        }
    }
    if (first) d = 0;
    return true;
}

bool GroundRingElem::is_unit(int* rhoExp, int* sign) const {
    if (terms_.size() != 1) return false;
    auto& [m, c] = *terms_.begin();
    if (m.n1 || m.n2 || m.a || m.b) return false;
    if (c != 1 && c != -1) return false;
    if (rhoExp) *rhoExp = m.n3;
    if (sign) *sign = c > 0 ? 1 : -1;
    return true;
}

std::optional<GroundRingElem> GroundRingElem::unit_inverse() const {
    int k = 0, s = 0;
    if (!is_unit(&k, &s)) return std::nullopt;
    return mono({0, 0, -k, 0, 0}, s);
}

namespace {

std::string ground_monomial_string(const GroundMonomial& m) {
    std::string s;
    auto put = [&s](const char* name, int e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += name;
        if (e != 1) s += "^" + std::to_string(e);
    };
    put("E1", m.a);
    put("E2", m.b);
    put("rho0", m.n2);
    put("rho1", m.n1);
    put("rho", m.n3);
    return s;
}

bool ground_print_less(const GroundMonomial& x, const GroundMonomial& y) {
    if (x.degree() != y.degree()) return x.degree() > y.degree();
    return std::tie(y.a, y.b, y.n2, y.n1, y.n3) < std::tie(x.a, x.b, x.n2, x.n1, x.n3);
}

}  // namespace

std::string GroundRingElem::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Terms::value_type*> v;
    for (auto& t : terms_) v.push_back(&t);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return ground_print_less(a->first, b->first); });
    std::string out;
    bool first = true;
    for (auto* t : v) {
        mpz_class c = t->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        first = false;
        std::string mono = ground_monomial_string(t->first);
        if (mono.empty()) out += c.get_str();
        else if (c == 1) out += mono;
        else out += c.get_str() + "*" + mono;
    }
    return out;
}

nlohmann::json GroundRingElem::to_json() const {
    std::map<std::string, std::string> flat;
    for (auto& [m, c] : terms_) {
        std::ostringstream k;
        k << m.n1 << "," << m.n2 << "," << m.n3 << "," << m.a << "," << m.b;
        flat[k.str()] = c.get_str();
    }
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, v] : flat) j[k] = v;
    return j;
}

GroundRingElem GroundRingElem::from_json(const nlohmann::json& j) {
    GroundRingElem e;
    for (auto& [k, v] : j.items()) {
        GroundMonomial m;
        char sep;
        std::istringstream in(k);
        in >> m.n1 >> sep >> m.n2 >> sep >> m.n3 >> sep >> m.a >> sep >> m.b;
        e.add_term(m, mpz_class(v.get<std::string>()));
    }
    return e;
}

// ---------------------------------------------------------------- parser

namespace {

class WordParser {
public:
    explicit WordParser(const std::string& s) : s_(s) {}

    GroundRingElem parse() {
        GroundRingElem e = sum();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw DomainError("ParseError", "cannot parse '" + s_ + "' at " + std::to_string(pos_) + ": " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        long v = std::stol(s_.substr(start, pos_ - start));
        return neg ? -v : v;
    }
    GroundRingElem sum() {
        GroundRingElem acc;
        bool neg = false;
        skip();
        if (eat('-')) neg = true;
        else eat('+');
        GroundRingElem t = product();
        acc += neg ? -t : t;
        for (;;) {
            if (eat('+')) acc += product();
            else if (eat('-')) acc -= product();
            else break;
        }
        return acc;
    }
    GroundRingElem product() {
        GroundRingElem acc = power();
        while (eat('*')) acc *= power();
        return acc;
    }
    GroundRingElem power() {
        if (eat('-')) return -power();
        GroundRingElem base = atom();
        if (eat('^')) return base.pow(static_cast<int>(integer()));
        return base;
    }
    GroundRingElem atom() {
        skip();
        if (eat('(')) {
            GroundRingElem e = sum();
            if (!eat(')')) fail("expected )");
            return e;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return GroundRingElem(integer());
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "E1") return GroundRingElem::E1();
        if (name == "E2") return GroundRingElem::E2();
        if (name == "rho0") return GroundRingElem::rho0();
        if (name == "rho1") return GroundRingElem::rho1();
        if (name == "rho") return GroundRingElem::rho();
        if (name.rfind("rho", 0) == 0 && name.size() > 3) {
            bool digits = true;
            for (size_t i = 3; i < name.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
            if (digits) return GroundRingElem::rho_n(std::stoi(name.substr(3)));
        }
        fail("unknown symbol '" + name + "'");
    }

    std::string s_;
    size_t pos_ = 0;
};

}  // namespace

GroundRingElem ground_normal_form(const std::string& expr) { return WordParser(expr).parse(); }

// ---------------------------------------------------------------- division in R

namespace {

// Plain polynomials in (rho1, rho0, E1, E2); lexicographic order on the array.
using PKey = std::array<int, 4>;
using Poly4 = std::map<PKey, mpz_class>;

void p4_add(Poly4& p, const PKey& k, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = p.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly4 p4_mul(const Poly4& a, const Poly4& b) {
    Poly4 r;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b)
            p4_add(r, {ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]}, ca * cb);
    return r;
}

Poly4 p4_rho() {
    // rho = -(rho1^2 - E1 rho1 rho0 + E2 rho0^2)
    Poly4 r;
    p4_add(r, {2, 0, 0, 0}, -1);
    p4_add(r, {1, 1, 1, 0}, 1);
    p4_add(r, {0, 2, 0, 1}, -1);
    return r;
}

Poly4 p4_pow(const Poly4& b, int e) {
    Poly4 r;
    p4_add(r, {0, 0, 0, 0}, 1);
    for (int i = 0; i < e; ++i) r = p4_mul(r, b);
    return r;
}

// x = P / rho^K
std::pair<Poly4, int> to_poly4(const GroundRingElem& x) {
    int K = 0;
    for (auto& [m, c] : x.terms()) K = std::max(K, -m.n3);
    Poly4 out;
    Poly4 rho = p4_rho();
    std::map<int, Poly4> rhoPow;
    for (auto& [m, c] : x.terms()) {
        int e = m.n3 + K;
        auto it = rhoPow.find(e);
        if (it == rhoPow.end()) it = rhoPow.emplace(e, p4_pow(rho, e)).first;
        Poly4 mono;
        p4_add(mono, {m.n1, m.n2, m.a, m.b}, c);
        for (auto& [k, v] : p4_mul(mono, it->second)) p4_add(out, k, v);
    }
    return {out, K};
}

GroundRingElem from_poly4(const Poly4& p) {
    GroundRingElem r;
    for (auto& [k, c] : p) r.add_term({k[0], k[1], 0, k[2], k[3]}, c);
    return r;
}

std::optional<Poly4> p4_divide(Poly4 a, const Poly4& b) {
    if (b.empty()) return std::nullopt;
    auto lt_b = *b.rbegin();
    Poly4 q;
    while (!a.empty()) {
        auto lt_a = *a.rbegin();
        PKey m;
        for (int i = 0; i < 4; ++i) {
            m[i] = lt_a.first[i] - lt_b.first[i];
            if (m[i] < 0) return std::nullopt;
        }
        if (!mpz_divisible_p(lt_a.second.get_mpz_t(), lt_b.second.get_mpz_t())) return std::nullopt;
        mpz_class c = lt_a.second / lt_b.second;
        p4_add(q, m, c);
        for (auto& [kb, cb] : b)
            p4_add(a, {kb[0] + m[0], kb[1] + m[1], kb[2] + m[2], kb[3] + m[3]}, -c * cb);
    }
    return q;
}

}  // namespace

std::optional<GroundRingElem> ground_divide(const GroundRingElem& a, const GroundRingElem& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return GroundRingElem();
    if (auto inv = b.unit_inverse()) return a * *inv;
    // pull out the smallest power of rho on each side first; expanding high
    // rho powers into the polynomial ring is what makes division expensive
    auto min_rho = [](const GroundRingElem& e) {
        int k = e.terms().begin()->first.n3;
        for (auto& [m, c] : e.terms()) k = std::min(k, m.n3);
        return k;
    };
    int ka = min_rho(a), kb = min_rho(b);
    if (ka != 0 || kb != 0) {
        auto q = ground_divide(a * GroundRingElem::rho_pow(-ka), b * GroundRingElem::rho_pow(-kb));
        if (!q) return std::nullopt;
        return *q * GroundRingElem::rho_pow(ka - kb);
    }
    // a monomial without rho1 multiplies normal forms term by term
    if (b.terms().size() == 1 && b.terms().begin()->first.n1 == 0) {
        const auto& [bm, bc] = *b.terms().begin();
        GroundRingElem q;
        for (auto& [m, c] : a.terms()) {
            if (m.n2 < bm.n2 || m.a < bm.a || m.b < bm.b || !mpz_divisible_p(c.get_mpz_t(), bc.get_mpz_t()))
                return std::nullopt;
            q.add_term({m.n1, m.n2 - bm.n2, m.n3 - bm.n3, m.a - bm.a, m.b - bm.b}, c / bc);
        }
        return q;
    }
    auto [A, Ka] = to_poly4(a);
    auto [B, Kb] = to_poly4(b);
    // a/b = (A rho^Kb) / (B rho^Ka); extra rho factors in B are absorbed by
    // trying A rho^t for small t.
    Poly4 rho = p4_rho();
    int maxT = 1;
    for (auto& [k, c] : B) maxT = std::max(maxT, (k[0] + k[1]) / 2 + 1);
    Poly4 At = A;
    for (int t = 0; t <= maxT; ++t) {
        if (auto q = p4_divide(At, B)) {
            return from_poly4(*q) * GroundRingElem::rho_pow(Kb - Ka - t);
        }
        At = p4_mul(At, rho);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- specializations

Specialization Specialization::khovanov() {
    Specialization s;
    s.name = "khovanov";
    s.groundTarget = GroundTarget{0, 0, 0, 1};
    return s;
}

Specialization Specialization::multiplicative() {
    Specialization s;
    s.name = "mult";
    s.betaValues[{1, 0}] = 1;
    s.groundTarget = GroundTarget{0, 0, 1, 1};
    return s;
}

Specialization Specialization::from_json(const nlohmann::json& j) {
    Specialization s;
    s.name = j.value("name", std::string("custom"));
    if (j.contains("beta")) {
        for (auto& [k, v] : j["beta"].items()) {
            auto comma = k.find(',');
            if (comma == std::string::npos) throw DomainError("ParseError", "beta key must be 'k,l'");
            VarIndex vi{std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))};
            s.betaValues[vi] = mpz_class(v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>()));
        }
    }
    if (j.contains("target")) {
        auto& t = j["target"];
        auto get = [&t](const char* k) { return mpz_class(t.value(k, 0L)); };
        s.groundTarget = GroundTarget{get("E1"), get("E2"), get("rho0"), get("rho1")};
    }
    return s;
}

nlohmann::json Specialization::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    nlohmann::json beta = nlohmann::json::object();
    for (auto& [v, c] : betaValues) beta[std::to_string(v.k) + "," + std::to_string(v.l)] = c.get_str();
    j["beta"] = beta;
    if (groundTarget) {
        j["target"] = {{"E1", groundTarget->E1.get_str()},
                       {"E2", groundTarget->E2.get_str()},
                       {"rho0", groundTarget->rho0.get_str()},
                       {"rho1", groundTarget->rho1.get_str()},
                       {"rho", groundTarget->rho().get_str()}};
    }
    return j;
}

mpz_class specialize(const GroundRingElem& e, const Specialization& s) {
    if (!s.groundTarget) throw DomainError("MissingTarget", "scalar specialization needs a ground target");
    const GroundTarget& t = *s.groundTarget;
    mpz_class rho = t.rho();
    mpz_class acc = 0;
    for (auto& [m, c] : e.terms()) {
        mpz_class v = c;
        auto mulpow = [&v](const mpz_class& base, int k) {
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
            v *= p;
        };
        mulpow(t.rho1, m.n1);
        mulpow(t.rho0, m.n2);
        mulpow(t.E1, m.a);
        mulpow(t.E2, m.b);
        if (m.n3 >= 0) {
            mulpow(rho, m.n3);
        } else {
            if (rho != 1 && rho != -1)
                throw NonUnitRho("rho specializes to " + rho.get_str() + ", which is not a unit");
            mulpow(rho, -m.n3);  // rho^{-1} = rho for rho = +-1
        }
        acc += v;
    }
    return acc;
}

// ---------------------------------------------------------------- p(x, y)

TruncSeries generic_p(int D) {
    TruncSeries p = TruncSeries::one(2, D);
    for (int d = 1; d <= D; ++d)
        for (int k = 0; k <= d; ++k)
            p.add_term(pack_exponents({k, d - k}), CoeffPoly::var({k, d - k}));
    return p;
}

TruncSeries multiplicative_p(int D) {
    TruncSeries p = TruncSeries::one(2, D);
    p.add_term(pack_exponents({0, 1}), -CoeffPoly::var({0, 1}));
    return p;
}

IntSeries specialized_p(const std::map<VarIndex, mpz_class>& beta, int D) {
    IntSeries p = IntSeries::one(2, D);
    for (auto& [v, c] : beta)
        if (v.k + v.l <= D && (v.k || v.l)) p.add_term(pack_exponents({v.k, v.l}), c);
    return p;
}

template <class C>
RhoSeries<C> rho_series(const Series<C>& p12, const Series<C>& p21, bool withInverse) {
    int D = p12.trunc_deg();
    auto x1 = Series<C>::var(2, D, 0), x2 = Series<C>::var(2, D, 1);
    RhoSeries<C> r;
    r.rho0 = (p12 - p21).divide_exact(0, 1, 1);
    r.rho1 = (x1 * p12 - x2 * p21).divide_exact(0, 1, 1);
    r.rho = -(p12 * p21);
    if (withInverse) r.rhoInv = r.rho.inverse();
    r.E1 = x1 + x2;
    r.E2 = x1 * x2;
    return r;
}

template <class C>
Series<C> expand_in_series(const GroundRingElem& e, const Series<C>& p12, const Series<C>& p21) {
    bool needInverse = false;
    for (auto& [m, c] : e.terms()) needInverse = needInverse || m.n3 < 0;
    RhoSeries<C> rs = rho_series(p12, p21, needInverse);
    int D = p12.trunc_deg();
    Series<C> acc(2, D);
    acc.restrict_valid(rs.rho0.valid_deg());
    std::map<std::pair<int, int>, Series<C>> cache;  // (which, exponent)
    auto power = [&](int which, int k) -> const Series<C>& {
        auto key = std::make_pair(which, k);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const Series<C>* base = nullptr;
        switch (which) {
            case 0: base = &rs.rho1; break;
            case 1: base = &rs.rho0; break;
            case 2: base = k >= 0 ? &rs.rho : &rs.rhoInv; break;
            case 3: base = &rs.E1; break;
            default: base = &rs.E2; break;
        }
        return cache.emplace(key, base->pow(k >= 0 ? k : -k)).first->second;
    };
    for (auto& [m, c] : e.terms()) {
        Series<C> t = power(0, m.n1) * power(1, m.n2);
        t *= power(2, m.n3);
        t *= power(3, m.a);
        t *= power(4, m.b);
        acc += t.scaled(C(c));
    }
    return acc;
}

template <class C>
std::map<std::pair<int, int>, C> to_elementary_symmetric(const Series<C>& s) {
    if (s.num_vars() != 2) throw DimensionMismatch("to_elementary_symmetric needs two variables");
    if (!(s.swap_vars(0, 1) == s)) throw NotSymmetric("series is not symmetric in x1, x2");
    std::map<std::pair<int, int>, C> work;  // (e1, e2) -> coefficient
    for (auto& [k, c] : s.terms()) work[{exp_of(k, 0), exp_of(k, 1)}] = c;
    std::map<std::pair<int, int>, C> out;
    // binomial table
    auto binom = [](int n, int k) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    };
    while (!work.empty()) {
        // lex-leading term: largest e1, then largest e2
        auto it = std::prev(work.end());
        auto [e1, e2] = it->first;
        C c = it->second;
        if (e1 < e2) throw NotSymmetric("leading exponent (" + std::to_string(e1) + "," + std::to_string(e2) + ")");
        int a = e1 - e2, b = e2;
        out[{a, b}] += c;
        // subtract c * E1^a E2^b = c * sum_i binom(a,i) x1^{i+b} x2^{a-i+b}
        for (int i = 0; i <= a; ++i) {
            C delta(0);
            CoeffOps<C>::addmul(delta, c, C(binom(a, i)));
            auto key = std::make_pair(i + b, a - i + b);
            auto [jt, fresh] = work.try_emplace(key, C(0));
            jt->second -= delta;
            if (CoeffOps<C>::is_zero(jt->second)) work.erase(jt);
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (CoeffOps<C>::is_zero(it->second)) it = out.erase(it);
        else ++it;
    }
    return out;
}

template <class C>
Series<C> from_elementary_symmetric(const std::map<std::pair<int, int>, C>& poly, int D, int valid) {
    Series<C> r(2, D);
    r.restrict_valid(valid);
    for (auto& [ab, c] : poly) {
        auto [a, b] = ab;
        for (int i = 0; i <= a; ++i) {
            mpz_class bin;
            mpz_bin_uiui(bin.get_mpz_t(), a, i);
            if (i + b + a - i + b > valid) continue;
            C v(0);
            CoeffOps<C>::addmul(v, c, C(bin));
            r.add_term(pack_exponents({i + b, a - i + b}), v);
        }
    }
    return r;
}

bool specialization_consistent(const Specialization& s, int D) {
    if (!s.groundTarget) return true;
    IntSeries p12 = specialized_p(s.betaValues, D);
    IntSeries p21 = p12.swap_vars(0, 1);
    auto rs = rho_series(p12, p21);
    auto eval = [&](const IntSeries& ser) {
        mpz_class acc = 0;
        for (auto& [ab, c] : to_elementary_symmetric(ser)) {
            mpz_class t = c, p;
            mpz_pow_ui(p.get_mpz_t(), s.groundTarget->E1.get_mpz_t(), ab.first);
            t *= p;
            mpz_pow_ui(p.get_mpz_t(), s.groundTarget->E2.get_mpz_t(), ab.second);
            t *= p;
            acc += t;
        }
        return acc;
    };
    return eval(rs.rho0) == s.groundTarget->rho0 && eval(rs.rho1) == s.groundTarget->rho1;
}

template RhoSeries<CoeffPoly> rho_series(const TruncSeries&, const TruncSeries&, bool);
template RhoSeries<mpz_class> rho_series(const IntSeries&, const IntSeries&, bool);
template TruncSeries expand_in_series(const GroundRingElem&, const TruncSeries&, const TruncSeries&);
template IntSeries expand_in_series(const GroundRingElem&, const IntSeries&, const IntSeries&);
template std::map<std::pair<int, int>, CoeffPoly> to_elementary_symmetric(const TruncSeries&);
template std::map<std::pair<int, int>, mpz_class> to_elementary_symmetric(const IntSeries&);
template std::map<std::pair<int, int>, QPoly> to_elementary_symmetric(const QSeries&);
template TruncSeries from_elementary_symmetric(const std::map<std::pair<int, int>, CoeffPoly>&, int, int);
template IntSeries from_elementary_symmetric(const std::map<std::pair<int, int>, mpz_class>&, int, int);

// ---------------------------------------------------------------- RhoPoly

namespace {

void part_add(RhoPoly::Part& p, const RhoPoly::Key& k, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = p.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

RhoPoly::Part part_mul(const RhoPoly::Part& a, const RhoPoly::Part& b) {
    RhoPoly::Part r;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b)
            part_add(r, {ka.n2 + kb.n2, ka.n3 + kb.n3, ka.e1 + kb.e1, ka.e2 + kb.e2}, ca * cb);
    return r;
}

void part_accumulate(RhoPoly::Part& into, const RhoPoly::Part& p, long s = 1) {
    for (auto& [k, c] : p) part_add(into, k, c * s);
}

RhoPoly::Part part_divide_difference(const RhoPoly::Part& p) {
    // group by (n2, n3, e1 + e2); quotient coefficients r_{a-1} = c_a + r_a
    std::map<std::tuple<int, int, int>, std::map<int, mpz_class>> groups;
    for (auto& [k, c] : p) groups[{k.n2, k.n3, k.e1 + k.e2}][k.e1] = c;
    RhoPoly::Part r;
    for (auto& [g, cs] : groups) {
        auto [n2, n3, e] = g;
        if (e == 0) throw NotDivisible("constant term left after dividing by x1 - x2");
        mpz_class run = 0;
        std::vector<mpz_class> q(e);
        for (int a = e; a >= 1; --a) {
            auto it = cs.find(a);
            if (it != cs.end()) run += it->second;
            q[a - 1] = run;
        }
        mpz_class rem = q[0];
        if (auto it0 = cs.find(0); it0 != cs.end()) rem += it0->second;
        if (rem != 0) throw NotDivisible("numerator is not divisible by x1 - x2");
        for (int b = 0; b < e; ++b) part_add(r, {n2, n3, b, e - 1 - b}, q[b]);
    }
    return r;
}

// Symmetric part -> {(n2, n3, a, b) -> c} in E1, E2.
std::map<std::array<int, 4>, mpz_class> part_to_elementary(const RhoPoly::Part& p) {
    std::map<std::pair<int, int>, std::map<std::pair<int, int>, mpz_class>> byRho;
    for (auto& [k, c] : p) byRho[{k.n2, k.n3}][{k.e1, k.e2}] = c;
    std::map<std::array<int, 4>, mpz_class> out;
    for (auto& [rk, poly] : byRho) {
        auto work = poly;
        while (!work.empty()) {
            auto it = std::prev(work.end());
            auto [e1, e2] = it->first;
            mpz_class c = it->second;
            if (e1 < e2) throw NotSymmetric("evaluation numerator is not symmetric in x1, x2");
            int a = e1 - e2, b = e2;
            out[{rk.first, rk.second, a, b}] += c;
            for (int i = 0; i <= a; ++i) {
                mpz_class bin;
                mpz_bin_uiui(bin.get_mpz_t(), a, i);
                auto key = std::make_pair(i + b, a - i + b);
                auto [jt, fresh] = work.try_emplace(key, 0);
                jt->second -= c * bin;
                if (jt->second == 0) work.erase(jt);
            }
        }
    }
    return out;
}

}  // namespace

RhoPoly RhoPoly::constant(long c) {
    RhoPoly r;
    part_add(r.part0_, {}, c);
    return r;
}

RhoPoly RhoPoly::x(int i) {
    RhoPoly r;
    part_add(r.part0_, {0, 0, i == 0 ? 1 : 0, i == 0 ? 0 : 1}, 1);
    return r;
}

RhoPoly RhoPoly::rho0() {
    RhoPoly r;
    part_add(r.part0_, {1, 0, 0, 0}, 1);
    return r;
}

RhoPoly RhoPoly::rho1() {
    RhoPoly r;
    part_add(r.part1_, {}, 1);
    return r;
}

RhoPoly RhoPoly::rho_pow(int k) {
    RhoPoly r;
    part_add(r.part0_, {0, k, 0, 0}, 1);
    return r;
}

RhoPoly& RhoPoly::operator+=(const RhoPoly& o) {
    part_accumulate(part0_, o.part0_);
    part_accumulate(part1_, o.part1_);
    return *this;
}

RhoPoly operator*(const RhoPoly& a, const RhoPoly& b) {
    RhoPoly r;
    r.part0_ = part_mul(a.part0_, b.part0_);
    r.part1_ = part_mul(a.part0_, b.part1_);
    part_accumulate(r.part1_, part_mul(a.part1_, b.part0_));
    if (!a.part1_.empty() && !b.part1_.empty()) {
        // rho1^2 = (x1 + x2) rho0 rho1 - x1 x2 rho0^2 - rho
        RhoPoly::Part sq = part_mul(a.part1_, b.part1_);
        RhoPoly::Part lin, con;
        part_add(lin, {1, 0, 1, 0}, 1);
        part_add(lin, {1, 0, 0, 1}, 1);
        part_add(con, {2, 0, 1, 1}, -1);
        part_add(con, {0, 1, 0, 0}, -1);
        part_accumulate(r.part1_, part_mul(sq, lin));
        part_accumulate(r.part0_, part_mul(sq, con));
    }
    return r;
}

RhoPoly RhoPoly::scaled(long s) const {
    RhoPoly r;
    part_accumulate(r.part0_, part0_, s);
    part_accumulate(r.part1_, part1_, s);
    return r;
}

RhoPoly RhoPoly::pow(int e) const {
    if (e < 0) throw DimensionMismatch("RhoPoly::pow needs e >= 0");
    RhoPoly r = constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

RhoPoly RhoPoly::divide_difference(int k) const {
    RhoPoly r = *this;
    for (int i = 0; i < k; ++i) {
        r.part0_ = part_divide_difference(r.part0_);
        r.part1_ = part_divide_difference(r.part1_);
    }
    return r;
}

RhoPoly RhoPoly::times_difference(int k) const {
    RhoPoly d;
    part_add(d.part0_, {0, 0, 1, 0}, 1);
    part_add(d.part0_, {0, 0, 0, 1}, -1);
    RhoPoly r = *this;
    for (int i = 0; i < k; ++i) r = r * d;
    return r;
}

GroundRingElem RhoPoly::to_ground() const {
    GroundRingElem g;
    for (auto& [k, c] : part_to_elementary(part0_)) g.add_term({0, k[0], k[1], k[2], k[3]}, c);
    for (auto& [k, c] : part_to_elementary(part1_)) g.add_term({1, k[0], k[1], k[2], k[3]}, c);
    return g;
}

}  // namespace foamcalc
