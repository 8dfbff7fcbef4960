#include "foamcalc/prefoam.hpp"

#include <functional>
#include <numeric>

#include "foamcalc/parallel.hpp"

namespace foamcalc {

namespace {

std::string id_string(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

[[noreturn]] void malformed(const std::string& id, const std::string& why) {
    throw MalformedFoam("facet '" + id + "': " + why);
}

int half_of(int chi, const char* what) {
    if (chi % 2 != 0) throw OddEuler(std::string(what) + " has odd Euler characteristic " + std::to_string(chi));
    return chi / 2;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

// ---------------------------------------------------------------- GL(2) data

void Gl2Prefoam::validate() const {
    std::map<std::string, int> kind;  // 1 thin, 2 double
    std::map<std::string, int> incidences;
    for (auto& f : thin) {
        if (!kind.emplace(f.id, 1).second) malformed(f.id, "duplicate id");
        if (f.genus < 0 || f.boundary < 0 || f.dots < 0) malformed(f.id, "negative genus, boundary or dots");
    }
    for (auto& f : dbl) {
        if (!kind.emplace(f.id, 2).second) malformed(f.id, "duplicate id");
        if (f.genus < 0 || f.boundary < 0) malformed(f.id, "negative genus or boundary");
    }
    for (auto& s : seams) {
        auto need = [&](const std::string& id, int k, const char* role) {
            auto it = kind.find(id);
            if (it == kind.end()) malformed(id, std::string("unknown ") + role + " facet of a seam");
            if (it->second != k) malformed(id, std::string(role) + " facet has the wrong thickness");
            ++incidences[id];
        };
        need(s.preferred, 1, "preferred");
        need(s.other, 1, "other");
        need(s.doubleFacet, 2, "double");
        if (s.preferred == s.other) malformed(s.preferred, "seam has the same preferred and other facet");
    }
    for (auto& f : thin)
        if (incidences[f.id] != f.boundary)
            malformed(f.id, "boundary count " + std::to_string(f.boundary) + " but " +
                                std::to_string(incidences[f.id]) + " seam incidences");
    for (auto& f : dbl)
        if (incidences[f.id] != f.boundary)
            malformed(f.id, "boundary count " + std::to_string(f.boundary) + " but " +
                                std::to_string(incidences[f.id]) + " seam incidences");
}

int Gl2Prefoam::thin_euler() const {
    int s = 0;
    for (auto& f : thin) s += f.euler();
    return s;
}

int Gl2Prefoam::double_euler() const {
    int s = 0;
    for (auto& f : dbl) s += f.euler();
    return s;
}

int Gl2Prefoam::total_dots() const {
    int s = 0;
    for (auto& f : thin) s += f.dots;
    return s;
}

Gl2Prefoam Gl2Prefoam::reversed() const {
    Gl2Prefoam r = *this;
    for (auto& s : r.seams) std::swap(s.preferred, s.other);
    return r;
}

nlohmann::json Gl2Prefoam::to_json() const {
    nlohmann::json j;
    j["type"] = "gl2_prefoam";
    j["thin_facets"] = nlohmann::json::array();
    for (auto& f : thin)
        j["thin_facets"].push_back({{"id", f.id}, {"genus", f.genus}, {"boundary", f.boundary}, {"dots", f.dots}});
    j["double_facets"] = nlohmann::json::array();
    for (auto& f : dbl) j["double_facets"].push_back({{"id", f.id}, {"genus", f.genus}, {"boundary", f.boundary}});
    j["seams"] = nlohmann::json::array();
    for (auto& s : seams)
        j["seams"].push_back({{"preferred", s.preferred}, {"other", s.other}, {"double", s.doubleFacet}});
    return j;
}

Gl2Prefoam Gl2Prefoam::from_json(const nlohmann::json& j) {
    if (j.value("type", std::string("gl2_prefoam")) != "gl2_prefoam")
        throw MalformedFoam("expected type gl2_prefoam");
    Gl2Prefoam f;
    for (auto& t : j.value("thin_facets", nlohmann::json::array()))
        f.thin.push_back({id_string(t.at("id")), t.value("genus", 0), t.value("boundary", 0), t.value("dots", 0)});
    for (auto& t : j.value("double_facets", nlohmann::json::array()))
        f.dbl.push_back({id_string(t.at("id")), t.value("genus", 0), t.value("boundary", 0)});
    for (auto& s : j.value("seams", nlohmann::json::array()))
        f.seams.push_back({id_string(s.at("preferred")), id_string(s.at("other")), id_string(s.at("double"))});
    f.validate();
    return f;
}

// ---------------------------------------------------------------- GL(N) data

int GlNPrefoam::index_of(const std::string& id) const {
    for (size_t i = 0; i < facets.size(); ++i)
        if (facets[i].id == id) return static_cast<int>(i);
    malformed(id, "unknown facet");
}

void GlNPrefoam::validate() const {
    if (N < 1 || N > 8) throw MalformedFoam("N must be between 1 and 8");
    std::set<std::string> ids;
    for (auto& f : facets) {
        if (!ids.insert(f.id).second) malformed(f.id, "duplicate id");
        if (f.thickness < 1 || f.thickness > N) malformed(f.id, "thickness out of range");
        if (f.genus < 0 || f.boundary < 0) malformed(f.id, "negative genus or boundary");
        if (static_cast<int>(f.decoration.size()) > f.thickness) malformed(f.id, "decoration longer than thickness");
        for (int m : f.decoration)
            if (m < 0) malformed(f.id, "negative decoration exponent");
    }
    std::vector<int> inc(facets.size(), 0);
    for (auto& s : seams) {
        int a = index_of(s.a), b = index_of(s.b), ab = index_of(s.ab);
        if (facets[ab].thickness != facets[a].thickness + facets[b].thickness)
            malformed(s.ab, "thickness is not the sum across the seam");
        if (a == b) malformed(s.a, "seam joins a facet to itself");
        ++inc[a];
        ++inc[b];
        ++inc[ab];
    }
    for (size_t i = 0; i < facets.size(); ++i)
        if (inc[i] != facets[i].boundary)
            malformed(facets[i].id, "boundary count " + std::to_string(facets[i].boundary) + " but " +
                                        std::to_string(inc[i]) + " seam incidences");
}

nlohmann::json GlNPrefoam::to_json() const {
    nlohmann::json j;
    j["type"] = "gln_prefoam";
    j["N"] = N;
    j["facets"] = nlohmann::json::array();
    for (auto& f : facets)
        j["facets"].push_back({{"id", f.id},
                               {"thickness", f.thickness},
                               {"genus", f.genus},
                               {"boundary", f.boundary},
                               {"decoration", f.decoration}});
    j["seams"] = nlohmann::json::array();
    for (auto& s : seams) j["seams"].push_back({{"a", s.a}, {"b", s.b}, {"ab", s.ab}, {"flag", s.flag}});
    return j;
}

GlNPrefoam GlNPrefoam::from_json(const nlohmann::json& j) {
    if (j.value("type", std::string("gln_prefoam")) != "gln_prefoam") throw MalformedFoam("expected type gln_prefoam");
    GlNPrefoam f;
    f.N = j.at("N").get<int>();
    for (auto& t : j.value("facets", nlohmann::json::array()))
        f.facets.push_back({id_string(t.at("id")), t.value("thickness", 1), t.value("genus", 0), t.value("boundary", 0),
                            t.value("decoration", std::vector<int>{})});
    for (auto& s : j.value("seams", nlohmann::json::array()))
        f.seams.push_back({id_string(s.at("a")), id_string(s.at("b")), id_string(s.at("ab")), s.value("flag", true)});
    f.validate();
    return f;
}

GlNPrefoam GlNPrefoam::from_gl2(const Gl2Prefoam& g) {
    GlNPrefoam f;
    f.N = 2;
    for (auto& t : g.thin)
        f.facets.push_back({t.id, 1, t.genus, t.boundary, t.dots ? std::vector<int>{t.dots} : std::vector<int>{}});
    for (auto& d : g.dbl) f.facets.push_back({d.id, 2, d.genus, d.boundary, {}});
    for (auto& s : g.seams) f.seams.push_back({s.preferred, s.other, s.doubleFacet, true});
    return f;
}

// ---------------------------------------------------------------- colorings

std::vector<Gl2Coloring> enumerate_colorings(const Gl2Prefoam& F) {
    F.validate();
    int n = static_cast<int>(F.thin.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[F.thin[i].id] = i;
    std::vector<std::vector<int>> adj(n);
    for (auto& s : F.seams) {
        int a = idx.at(s.preferred), b = idx.at(s.other);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // side[k]: 0/1 relative to the component root; comp[k]: component number
    std::vector<int> side(n, -1), comp(n, -1);
    int m = 0;
    for (int r = 0; r < n; ++r) {
        if (side[r] >= 0) continue;
        side[r] = 0;
        comp[r] = m;
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (side[w] < 0) {
                    side[w] = 1 - side[v];
                    comp[w] = m;
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    throw NotBipartite("thin facets around '" + F.thin[w].id + "' admit no proper coloring");
                }
            }
        }
        ++m;
    }
    if (m > 24) throw DimensionMismatch("too many thin components to enumerate colorings");
    std::vector<Gl2Coloring> out;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        Gl2Coloring c;
        c.colorOf.resize(n);
        for (int k = 0; k < n; ++k) c.colorOf[k] = 1 + (side[k] ^ static_cast<int>((mask >> comp[k]) & 1));
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<GlNColoring> enumerate_colorings(const GlNPrefoam& F) {
    F.validate();
    int n = static_cast<int>(F.facets.size());
    struct S {
        int a, b, ab, last;
    };
    std::vector<std::vector<S>> ready(n);  // seams fully assigned at facet index `last`
    for (auto& s : F.seams) {
        S x{F.index_of(s.a), F.index_of(s.b), F.index_of(s.ab), 0};
        x.last = std::max({x.a, x.b, x.ab});
        ready[x.last].push_back(x);
    }
    std::vector<std::vector<unsigned>> choices(F.N + 1);
    for (unsigned m = 0; m < (1u << F.N); ++m) choices[__builtin_popcount(m)].push_back(m);
    std::vector<GlNColoring> out;
    GlNColoring cur;
    cur.subsetOf.assign(n, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            out.push_back(cur);
            return;
        }
        for (unsigned m : choices[F.facets[k].thickness]) {
            cur.subsetOf[k] = m;
            bool ok = true;
            for (auto& s : ready[k]) {
                unsigned a = cur.subsetOf[s.a], b = cur.subsetOf[s.b], ab = cur.subsetOf[s.ab];
                if ((a & b) || (a | b) != ab) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(k + 1);
        }
    };
    rec(0);
    return out;
}

ColoringData coloring_data(const GlNPrefoam& F, const GlNColoring& c) {
    ColoringData d;
    d.chi.assign(F.N, 0);
    for (size_t k = 0; k < F.facets.size(); ++k) {
        int chi = F.facets[k].euler();
        for (int i = 0; i < F.N; ++i)
            if (c.subsetOf[k] >> i & 1) d.chi[i] += chi;
    }
    for (int i = 0; i < F.N; ++i)
        for (int j = i + 1; j < F.N; ++j) {
            int s = 0;
            for (size_t k = 0; k < F.facets.size(); ++k) {
                bool hi = c.subsetOf[k] >> i & 1, hj = c.subsetOf[k] >> j & 1;
                if (hi != hj) s += F.facets[k].euler();
            }
            d.chiPair[{i + 1, j + 1}] = s;
        }
    for (auto& s : F.seams) {
        unsigned a = c.subsetOf[F.index_of(s.a)], b = c.subsetOf[F.index_of(s.b)];
        for (int i = 0; i < F.N; ++i)
            for (int j = i + 1; j < F.N; ++j) {
                bool split = ((a >> i & 1) && (b >> j & 1)) || ((a >> j & 1) && (b >> i & 1));
                if (!split) continue;
                bool iInA = a >> i & 1;
                if (iInA != !s.flag) ++d.thetaPlus;
            }
    }
    return d;
}

// ---------------------------------------------------------------- evaluation

namespace {

template <class C>
class PowerCache {
public:
    explicit PowerCache(Series<C> base) : base_(std::move(base)) {}
    const Series<C>& get(int e) {
        auto it = cache_.find(e);
        if (it != cache_.end()) return it->second;
        Series<C> v = e >= 0 ? base_.pow(e) : inverse().pow(-e);
        return cache_.emplace(e, std::move(v)).first->second;
    }

private:
    const Series<C>& inverse() {
        if (!inv_) inv_ = base_.inverse();
        return *inv_;
    }
    Series<C> base_;
    std::optional<Series<C>> inv_;
    std::map<int, Series<C>> cache_;
};

// e_k in the variables selected by mask
template <class C>
Series<C> elementary_in(unsigned mask, int k, int N, int D) {
    Series<C> s(N, D);
    std::vector<int> vars;
    for (int i = 0; i < N; ++i)
        if (mask >> i & 1) vars.push_back(i);
    int m = static_cast<int>(vars.size());
    for (unsigned sub = 0; sub < (1u << m); ++sub) {
        if (__builtin_popcount(sub) != k) continue;
        std::vector<int> e(N, 0);
        for (int t = 0; t < m; ++t)
            if (sub >> t & 1) e[vars[t]] = 1;
        s += Series<C>::monomial(N, D, e);
    }
    return s;
}

template <class C>
Series<C> decoration_value(const GlNFacet& f, unsigned mask, int N, int D) {
    Series<C> r = Series<C>::one(N, D);
    for (size_t k = 0; k < f.decoration.size(); ++k)
        if (f.decoration[k]) r *= elementary_in<C>(mask, static_cast<int>(k) + 1, N, D).pow(f.decoration[k]);
    return r;
}

struct Gl2Term {
    int sign = 1;
    int d1 = 0, d2 = 0;
    int a = 0, b = 0;  // exponents of p12, p21
};

Gl2Term gl2_term(const Gl2Prefoam& F, const Gl2Coloring& c) {
    int chi1 = F.double_euler(), chi2 = F.double_euler();
    Gl2Term t;
    for (size_t k = 0; k < F.thin.size(); ++k) {
        if (c.colorOf[k] == 1) {
            chi1 += F.thin[k].euler();
            t.d1 += F.thin[k].dots;
        } else {
            chi2 += F.thin[k].euler();
            t.d2 += F.thin[k].dots;
        }
    }
    std::map<std::string, int> idx;
    for (size_t k = 0; k < F.thin.size(); ++k) idx[F.thin[k].id] = static_cast<int>(k);
    int theta = 0;
    for (auto& s : F.seams)
        if (c.colorOf[idx.at(s.preferred)] == 1) ++theta;
    t.a = half_of(chi1, "F_1(c)");
    t.b = half_of(chi2, "F_2(c)");
    t.sign = ((theta + t.b) % 2 == 0) ? 1 : -1;
    return t;
}

}  // namespace

template <class C>
Series<C> eval_deformed_gl2(const Gl2Prefoam& F, const Series<C>& p, int jobs) {
    if (p.num_vars() != 2) throw DimensionMismatch("p must be a two-variable series");
    auto colorings = enumerate_colorings(F);
    int K = half_of(F.thin_euler(), "the thin surface");
    int D = p.trunc_deg();
    if (K > 0 && p.valid_deg() < K) throw NotDivisible("truncation too low for the division by (x1-x2)^" + std::to_string(K));
    std::vector<Gl2Term> terms;
    for (auto& c : colorings) terms.push_back(gl2_term(F, c));
    PowerCache<C> p12(p), p21(p.swap_vars(0, 1));
    // warm the caches serially; workers only read
    for (auto& t : terms) {
        p12.get(t.a);
        p21.get(t.b);
    }
    auto parts = parallel_map<Series<C>>(terms.size(), jobs, [&](size_t k) {
        const Gl2Term& t = terms[k];
        Series<C> v = Series<C>::monomial(2, D, {t.d1, t.d2}, C(t.sign));
        v.restrict_valid(p.valid_deg());
        return v * p12.get(t.a) * p21.get(t.b);
    });
    Series<C> sum(2, D);
    sum.restrict_valid(p.valid_deg());
    for (auto& s : parts) sum += s;
    if (K > 0) return sum.divide_exact(0, 1, K);
    if (K < 0) return sum.times_difference(0, 1, -K);
    return sum;
}

GroundRingElem eval_exact_gl2(const Gl2Prefoam& F) {
    auto colorings = enumerate_colorings(F);
    int K = half_of(F.thin_euler(), "the thin surface");
    RhoPoly P12 = RhoPoly::rho1() + (RhoPoly::rho0() * RhoPoly::x(1)).scaled(-1);
    RhoPoly P21 = RhoPoly::rho1() + (RhoPoly::rho0() * RhoPoly::x(0)).scaled(-1);
    RhoPoly rhoInv = RhoPoly::rho_pow(-1);
    RhoPoly P12inv = (P21 * rhoInv).scaled(-1), P21inv = (P12 * rhoInv).scaled(-1);
    RhoPoly sum;
    for (auto& c : colorings) {
        Gl2Term t = gl2_term(F, c);
        RhoPoly v = RhoPoly::x(0).pow(t.d1) * RhoPoly::x(1).pow(t.d2);
        v = v * (t.a >= 0 ? P12.pow(t.a) : P12inv.pow(-t.a));
        v = v * (t.b >= 0 ? P21.pow(t.b) : P21inv.pow(-t.b));
        sum += v.scaled(t.sign);
    }
    if (K > 0) sum = sum.divide_difference(K);
    if (K < 0) sum = sum.times_difference(-K);
    return sum.to_ground();
}

template <class C>
Series<C> eval_deformed_glN(const GlNPrefoam& F, const Series<C>& p, int jobs) {
    if (p.num_vars() != 2) throw DimensionMismatch("p must be a two-variable series");
    int N = F.N, D = p.trunc_deg();
    auto colorings = enumerate_colorings(F);
    std::vector<ColoringData> data;
    std::map<std::pair<int, int>, int> K;
    for (auto& c : colorings) {
        data.push_back(coloring_data(F, c));
        for (int i = 0; i < N; ++i) half_of(data.back().chi[i], "F_i(c)");
        for (auto& [ij, x] : data.back().chiPair) {
            int h = half_of(x, "F_ij(c)");
            auto it = K.find(ij);
            if (it == K.end()) K[ij] = h;
            else it->second = std::max(it->second, h);
        }
    }
    int totalDiv = 0;
    for (auto& [ij, k] : K) totalDiv += std::max(k, 0);
    if (totalDiv > 0 && p.valid_deg() < totalDiv)
        throw NotDivisible("truncation too low for the common denominator");

    std::map<std::pair<int, int>, PowerCache<C>> pc;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j) pc.emplace(std::make_pair(i, j), PowerCache<C>(embed_p(p, N, i, j)));
    for (auto& d : data)
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                pc.at({i, j}).get(d.chi[i] / 2);
                pc.at({j, i}).get(d.chi[j] / 2);
            }
    auto parts = parallel_map<Series<C>>(colorings.size(), jobs, [&](size_t k) {
        const ColoringData& d = data[k];
        int s = d.thetaPlus;
        for (int j = 0; j < N; ++j) s += j * d.chi[j] / 2;
        Series<C> v = Series<C>::constant(N, D, C(s % 2 == 0 ? 1 : -1));
        v.restrict_valid(p.valid_deg());
        for (size_t f = 0; f < F.facets.size(); ++f)
            if (!F.facets[f].decoration.empty()) v *= decoration_value<C>(F.facets[f], colorings[k].subsetOf[f], N, D);
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                v *= pc.at({i, j}).get(d.chi[i] / 2);
                v *= pc.at({j, i}).get(d.chi[j] / 2);
                int extra = K.at({i + 1, j + 1}) - d.chiPair.at({i + 1, j + 1}) / 2;
                if (extra) v = v.times_difference(i, j, extra);
            }
        return v;
    });
    Series<C> sum(N, D);
    sum.restrict_valid(p.valid_deg());
    for (auto& s : parts) sum += s;
    for (auto& [ij, k] : K) {
        if (k > 0) sum = sum.divide_exact(ij.first - 1, ij.second - 1, k);
        if (k < 0) sum = sum.times_difference(ij.first - 1, ij.second - 1, -k);
    }
    return sum;
}

IntSeries eval_rw(const GlNPrefoam& F, int D) {
    int N = F.N;
    auto colorings = enumerate_colorings(F);
    std::vector<ColoringData> data;
    std::map<std::pair<int, int>, int> K;
    for (auto& c : colorings) {
        data.push_back(coloring_data(F, c));
        for (int i = 0; i < N; ++i) half_of(data.back().chi[i], "F_i(c)");
        for (auto& [ij, x] : data.back().chiPair) {
            int h = half_of(x, "F_ij(c)");
            auto it = K.find(ij);
            if (it == K.end()) K[ij] = h;
            else it->second = std::max(it->second, h);
        }
    }
    int totalDiv = 0;
    for (auto& [ij, k] : K) totalDiv += std::max(k, 0);
    IntSeries sum(N, D + totalDiv);
    for (size_t k = 0; k < colorings.size(); ++k) {
        const ColoringData& d = data[k];
        int s = d.thetaPlus;
        for (int i = 0; i < N; ++i) s += (i + 1) * d.chi[i] / 2;
        IntSeries v = IntSeries::constant(N, D + totalDiv, mpz_class(s % 2 == 0 ? 1 : -1));
        for (size_t f = 0; f < F.facets.size(); ++f)
            if (!F.facets[f].decoration.empty())
                v *= decoration_value<mpz_class>(F.facets[f], colorings[k].subsetOf[f], N, D + totalDiv);
        for (auto& [ij, kk] : K) {
            int extra = kk - d.chiPair.at(ij) / 2;
            if (extra) v = v.times_difference(ij.first - 1, ij.second - 1, extra);
        }
        sum += v;
    }
    for (auto& [ij, k] : K) {
        if (k > 0) sum = sum.divide_exact(ij.first - 1, ij.second - 1, k);
        if (k < 0) sum = sum.times_difference(ij.first - 1, ij.second - 1, -k);
    }
    // re-truncate at D
    IntSeries out(N, D);
    for (auto& [key, c] : sum.terms()) out.add_term(key, c);
    return out;
}

template Series<CoeffPoly> eval_deformed_gl2(const Gl2Prefoam&, const Series<CoeffPoly>&, int);
template Series<mpz_class> eval_deformed_gl2(const Gl2Prefoam&, const Series<mpz_class>&, int);
template Series<CoeffPoly> eval_deformed_glN(const GlNPrefoam&, const Series<CoeffPoly>&, int);
template Series<mpz_class> eval_deformed_glN(const GlNPrefoam&, const Series<mpz_class>&, int);

// ---------------------------------------------------------------- Kempe moves

std::vector<std::vector<int>> kempe_components(const GlNPrefoam& F, const GlNColoring& c) {
    int n = static_cast<int>(F.facets.size());
    auto inF12 = [&](int k) { return ((c.subsetOf[k] & 1u) != 0) != ((c.subsetOf[k] & 2u) != 0); };
    UnionFind uf(n);
    for (auto& s : F.seams) {
        int idx[3] = {F.index_of(s.a), F.index_of(s.b), F.index_of(s.ab)};
        for (int x = 0; x < 3; ++x)
            for (int y = x + 1; y < 3; ++y)
                if (inF12(idx[x]) && inF12(idx[y])) uf.join(idx[x], idx[y]);
    }
    std::map<int, std::vector<int>> groups;
    for (int k = 0; k < n; ++k)
        if (inF12(k)) groups[uf.find(k)].push_back(k);
    std::vector<std::vector<int>> out;
    for (auto& [r, g] : groups) out.push_back(g);
    return out;
}

nlohmann::json KempeReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["checks"] = nlohmann::json::object();
    for (auto& [n, ok] : checks) j["checks"][n] = ok;
    if (!firstFailure.empty()) j["firstFailure"] = firstFailure;
    j["ratio"] = ratio.to_string();
    return j;
}

namespace {

IntSeries p_of_coloring(const GlNPrefoam& F, const ColoringData& d, const IntSeries& p) {
    int N = F.N, D = p.trunc_deg();
    IntSeries r = IntSeries::one(N, D);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            IntSeries pij = embed_p(p, N, i, j), pji = embed_p(p, N, j, i);
            int a = half_of(d.chi[i], "F_i(c)"), b = half_of(d.chi[j], "F_j(c)");
            r *= a >= 0 ? pij.pow(a) : pij.inverse().pow(-a);
            r *= b >= 0 ? pji.pow(b) : pji.inverse().pow(-b);
        }
    return r;
}

GlNColoring kempe_move(const GlNColoring& c, const std::vector<int>& facets) {
    GlNColoring r = c;
    for (int k : facets) {
        unsigned m = r.subsetOf[k];
        unsigned b1 = m & 1u, b2 = (m >> 1) & 1u;
        r.subsetOf[k] = (m & ~3u) | (b1 << 1) | b2;
    }
    return r;
}

bool is_coloring(const GlNPrefoam& F, const GlNColoring& c) {
    for (auto& s : F.seams) {
        unsigned a = c.subsetOf[F.index_of(s.a)], b = c.subsetOf[F.index_of(s.b)], ab = c.subsetOf[F.index_of(s.ab)];
        if ((a & b) || (a | b) != ab) return false;
    }
    return true;
}

}  // namespace

KempeReport kempe_ratio_check(const GlNPrefoam& F, const GlNColoring& c,
                              const std::vector<std::string>& componentFacets, const IntSeries& p) {
    if (F.N < 2) throw DimensionMismatch("Kempe moves need N >= 2");
    KempeReport rep;
    auto comps = kempe_components(F, c);
    std::vector<std::vector<int>> chosen;
    for (auto& id : componentFacets) {
        int k = F.index_of(id);
        bool found = false;
        for (auto& g : comps)
            if (std::find(g.begin(), g.end(), k) != g.end()) {
                if (std::find(chosen.begin(), chosen.end(), g) == chosen.end()) chosen.push_back(g);
                found = true;
            }
        if (!found) malformed(id, "not on the surface F_12(c)");
    }
    auto note = [&](const std::string& name, bool ok) {
        rep.checks.push_back({name, ok});
        if (!ok && rep.pass) {
            rep.pass = false;
            rep.firstFailure = name;
        }
    };
    int N = F.N, D = p.trunc_deg();
    ColoringData d0 = coloring_data(F, c);
    IntSeries pc = p_of_coloring(F, d0, p);
    IntSeries pcInv = pc.inverse();

    std::vector<int> all;
    for (auto& g : chosen) all.insert(all.end(), g.begin(), g.end());
    GlNColoring moved = kempe_move(c, all);
    note("Kempe move gives a coloring", is_coloring(F, moved));
    IntSeries ratio = p_of_coloring(F, coloring_data(F, moved), p) * pcInv;
    rep.ratio = ratio;

    note("ratio starts with 1", ratio.coeff(ExpKey(0)) == 1);
    IntSeries sw = ratio.swap_vars(0, 1) * ratio;
    note("sigma(ratio) * ratio = 1", equal_up_to(sw, IntSeries::one(N, D), sw.valid_deg()));
    bool mod = true;
    try {
        (ratio - IntSeries::one(N, D)).divide_exact(0, 1, 1);
    } catch (const NotDivisible&) {
        mod = false;
    }
    note("ratio = 1 mod (x1 - x2)", mod);

    // closed form per component and the product law
    IntSeries prod = IntSeries::one(N, D);
    bool closed = true;
    for (auto& g : chosen) {
        IntSeries rs = p_of_coloring(F, coloring_data(F, kempe_move(c, g)), p) * pcInv;
        prod *= rs;
        int chi1 = 0, chi2 = 0;
        for (int k : g) {
            if (c.subsetOf[k] & 1u) chi1 += F.facets[k].euler();
            if (c.subsetOf[k] & 2u) chi2 += F.facets[k].euler();
        }
        int a = half_of(chi2 - chi1, "component difference");
        auto powr = [](const IntSeries& s, int e) { return e >= 0 ? s.pow(e) : s.inverse().pow(-e); };
        IntSeries cf = powr(embed_p(p, N, 0, 1), a) * powr(embed_p(p, N, 1, 0), -a);
        for (int j = 2; j < N; ++j) cf *= powr(embed_p(p, N, 0, j), a) * powr(embed_p(p, N, 1, j), -a);
        closed = closed && equal_up_to(cf, rs, std::min(cf.valid_deg(), rs.valid_deg()));
    }
    note("per-component ratio matches the closed form", closed);
    note("ratio is the product over components", equal_up_to(prod, ratio, std::min(prod.valid_deg(), ratio.valid_deg())));
    return rep;
}

// ---------------------------------------------------------------- standard foams

namespace foams {

Gl2Prefoam thin_sphere(int dots) { return thin_surface(0, dots); }

Gl2Prefoam thin_surface(int genus, int dots) {
    Gl2Prefoam f;
    f.thin.push_back({"s", genus, 0, dots});
    return f;
}

Gl2Prefoam double_surface(int genus) {
    Gl2Prefoam f;
    f.dbl.push_back({"d", genus, 0});
    return f;
}

Gl2Prefoam theta(int preferredDots, int otherDots) {
    Gl2Prefoam f;
    f.thin.push_back({"top", 0, 1, preferredDots});
    f.thin.push_back({"bottom", 0, 1, otherDots});
    f.dbl.push_back({"middle", 0, 1});
    f.seams.push_back({"top", "bottom", "middle"});
    return f;
}

Gl2Prefoam disjoint_union(const Gl2Prefoam& a, const Gl2Prefoam& b) {
    Gl2Prefoam r;
    auto add = [&r](const Gl2Prefoam& f, const std::string& pre) {
        for (auto t : f.thin) {
            t.id = pre + t.id;
            r.thin.push_back(t);
        }
        for (auto d : f.dbl) {
            d.id = pre + d.id;
            r.dbl.push_back(d);
        }
        for (auto s : f.seams) r.seams.push_back({pre + s.preferred, pre + s.other, pre + s.doubleFacet});
    };
    add(a, "a.");
    add(b, "b.");
    return r;
}

GlNPrefoam gln_theta(const std::vector<int>& dots) {
    int N = static_cast<int>(dots.size());
    if (N < 2) throw DimensionMismatch("theta foam needs N >= 2");
    GlNPrefoam f;
    f.N = N;
    for (int i = 0; i < N; ++i)
        f.facets.push_back({"f" + std::to_string(i + 1), 1, 0, 1, dots[i] ? std::vector<int>{dots[i]} : std::vector<int>{}});
    for (int k = 2; k <= N; ++k) f.facets.push_back({"g" + std::to_string(k), k, 0, k == N ? 1 : 2, {}});
    f.seams.push_back({"f1", "f2", "g2", true});
    for (int k = 3; k <= N; ++k)
        f.seams.push_back({"g" + std::to_string(k - 1), "f" + std::to_string(k), "g" + std::to_string(k), true});
    return f;
}

}  // namespace foams

}  // namespace foamcalc
