#include "foamcalc/skein.hpp"

#include <algorithm>
#include <functional>

#include "foamcalc/parallel.hpp"

namespace foamcalc {

namespace {

const std::vector<std::pair<RelationId, std::string>>& names() {
    static const std::vector<std::pair<RelationId, std::string>> n = {
        {RelationId::SingularNeckCut, "SingularNeckCut"},
        {RelationId::SingularNeckCutReversed, "SingularNeckCutReversed"},
        {RelationId::CancelDoubleDisks, "CancelDoubleDisks"},
        {RelationId::NeckCut, "NeckCut"},
        {RelationId::NeckCutTop, "NeckCutTop"},
        {RelationId::DiskFlip, "DiskFlip"},
        {RelationId::OrientationReversal, "OrientationReversal"},
        {RelationId::DotReduction, "DotReduction"},
        {RelationId::DoubleNeckCut, "DoubleNeckCut"},
        {RelationId::DotMigrationE1, "DotMigrationE1"},
        {RelationId::DotMigrationE2, "DotMigrationE2"},
        {RelationId::TubeCut, "TubeCut"},
        {RelationId::GammaPair, "GammaPair"},
    };
    return n;
}

// ---- building blocks

void add_thin(Gl2Prefoam& F, const std::string& id, int genus = 0) { F.thin.push_back({id, genus, 0, 0}); }
void add_double(Gl2Prefoam& F, const std::string& id, int genus = 0) { F.dbl.push_back({id, genus, 0}); }
void add_seam(Gl2Prefoam& F, const std::string& p, const std::string& o, const std::string& d) {
    F.seams.push_back({p, o, d});
}

ThinFacet& thin_of(Gl2Prefoam& F, const std::string& id) {
    for (auto& t : F.thin)
        if (t.id == id) return t;
    throw MalformedFoam("facet '" + id + "': not a thin facet of the patch");
}

// Boundary counts follow from the seams.
void fix_boundaries(Gl2Prefoam& F) {
    for (auto& t : F.thin) t.boundary = 0;
    for (auto& d : F.dbl) d.boundary = 0;
    for (auto& s : F.seams) {
        ++thin_of(F, s.preferred).boundary;
        ++thin_of(F, s.other).boundary;
        for (auto& d : F.dbl)
            if (d.id == s.doubleFacet) ++d.boundary;
    }
}

// slots[k] names the facet receiving closure slot k; several slots may name
// the same facet when the patch merges them.
Gl2Prefoam close(Gl2Prefoam F, const std::vector<std::string>& slots, const Closure& c) {
    for (size_t k = 0; k < slots.size() && k < 4; ++k) {
        ThinFacet& t = thin_of(F, slots[k]);
        t.dots += c.dots[k];
        t.genus += c.genus[k];
        if (c.thetaCap[k]) {
            std::string disk = "cap" + std::to_string(k) + ".disk", dd = "cap" + std::to_string(k) + ".double";
            std::string host = t.id;
            add_thin(F, disk);
            add_double(F, dd);
            add_seam(F, host, disk, dd);
        }
    }
    fix_boundaries(F);
    F.validate();
    return F;
}

Gl2Prefoam with_dots(Gl2Prefoam F, const std::string& id, int k) {
    thin_of(F, id).dots += k;
    return F;
}

// Removes a seam whose double facet is a disk bounded by it alone, capping
// both thin sides; the dot goes on the preferred or the other side.
Gl2Prefoam cut_seam(Gl2Prefoam F, size_t idx, bool dotOnPreferred) {
    Gl2Seam s = F.seams.at(idx);
    auto it = std::find_if(F.dbl.begin(), F.dbl.end(), [&](const DoubleFacet& d) { return d.id == s.doubleFacet; });
    if (it == F.dbl.end() || it->boundary != 1 || it->genus != 0)
        throw MalformedFoam("facet '" + s.doubleFacet + "': singular neck cut needs a double disk");
    F.dbl.erase(it);
    F.seams.erase(F.seams.begin() + static_cast<long>(idx));
    thin_of(F, dotOnPreferred ? s.preferred : s.other).dots += 1;
    fix_boundaries(F);
    F.validate();
    return F;
}

Gl2Prefoam flip_seam(Gl2Prefoam F, size_t idx) {
    std::swap(F.seams.at(idx).preferred, F.seams.at(idx).other);
    return F;
}

// Singular neck cut: <F> = -<dot on preferred side> + <dot on other side>.
std::vector<SkeinTerm> neck_cut_expansion(const Gl2Prefoam& F, size_t idx, const GroundRingElem& scale) {
    return {{-scale, cut_seam(F, idx, true)}, {scale, cut_seam(F, idx, false)}};
}

// ---- standard patches

// Two thin facets T (top) and B (bottom) on one seam bounding a double disk.
Gl2Prefoam theta_patch(bool topPreferred) {
    Gl2Prefoam F;
    add_thin(F, "T");
    add_thin(F, "B");
    add_double(F, "D");
    if (topPreferred) add_seam(F, "T", "B", "D");
    else add_seam(F, "B", "T", "D");
    return F;
}
const std::vector<std::string> kThetaSlots = {"T", "B"};

// Thin tube cut by two parallel double disks: Ttop | M | Tbot.
Gl2Prefoam tube_with_disks(bool middlePreferred) {
    Gl2Prefoam F;
    add_thin(F, "Ttop");
    add_thin(F, "M");
    add_thin(F, "Tbot");
    add_double(F, "D1");
    add_double(F, "D2");
    if (middlePreferred) {
        add_seam(F, "M", "Ttop", "D1");
        add_seam(F, "M", "Tbot", "D2");
    } else {
        add_seam(F, "Ttop", "M", "D1");
        add_seam(F, "Tbot", "M", "D2");
    }
    return F;
}
const std::vector<std::string> kTubeSlots = {"Ttop", "Tbot"};

// The same region with the tube left intact.
Gl2Prefoam plain_tube() {
    Gl2Prefoam F;
    add_thin(F, "T");
    return F;
}
const std::vector<std::string> kPlainSlots = {"T", "T"};

SkeinInstance make(std::vector<SkeinTerm> lhs, std::vector<SkeinTerm> rhs) { return {std::move(lhs), std::move(rhs)}; }

GroundRingElem rho() { return GroundRingElem::rho(); }
GroundRingElem rho_inv() { return GroundRingElem::rho_pow(-1); }

void require_variant(const std::vector<std::string>& vs, const std::string& v, RelationId id) {
    if (std::find(vs.begin(), vs.end(), v) == vs.end())
        throw Unsupported("relation " + relation_name(id) + " has no variant '" + v + "'");
}

}  // namespace

const std::vector<RelationId>& all_relations() {
    static const std::vector<RelationId> all = [] {
        std::vector<RelationId> v;
        for (auto& [id, n] : names()) v.push_back(id);
        return v;
    }();
    return all;
}

std::string relation_name(RelationId id) {
    for (auto& [k, n] : names())
        if (k == id) return n;
    return "?";
}

RelationId relation_from_name(const std::string& name) {
    for (auto& [k, n] : names())
        if (n == name) return k;
    throw Unsupported("unknown relation '" + name + "'");
}

const std::vector<Closure>& closure_family() {
    static const std::vector<Closure> family = {
        {"caps", {0, 0, 0, 0}, {0, 0, 0, 0}, {false, false, false, false}},
        {"dotted caps", {1, 0, 2, 1}, {0, 0, 0, 0}, {false, false, false, false}},
        {"theta caps", {0, 1, 0, 0}, {0, 0, 0, 0}, {true, false, false, true}},
        {"genus tubes", {0, 0, 1, 0}, {1, 0, 0, 1}, {false, false, false, false}},
        {"mixed", {2, 1, 0, 3}, {0, 1, 1, 0}, {false, true, false, false}},
    };
    return family;
}

std::vector<std::string> relation_variants(RelationId id) {
    switch (id) {
        case RelationId::SingularNeckCut: return {"top preferred"};
        case RelationId::SingularNeckCutReversed: return {"bottom preferred"};
        case RelationId::CancelDoubleDisks:
        case RelationId::NeckCut:
        case RelationId::NeckCutTop: return {"middle preferred", "outer preferred"};
        case RelationId::DiskFlip: return {"theta", "tube"};
        case RelationId::OrientationReversal: return {"theta", "tube", "tube outer preferred"};
        case RelationId::DotReduction: return {"sphere", "theta"};
        case RelationId::DoubleNeckCut: return {"separating", "non-separating"};
        case RelationId::DotMigrationE1:
        case RelationId::DotMigrationE2: return {"theta", "tube"};
        case RelationId::TubeCut: return {"front preferred", "back preferred", "front preferred, rotated dots"};
        case RelationId::GammaPair: return {"s = +1", "s = -1"};
    }
    return {};
}

SkeinInstance build_instance(RelationId id, const std::string& variant, const Closure& c) {
    require_variant(relation_variants(id), variant, id);
    switch (id) {
        case RelationId::SingularNeckCut:
        case RelationId::SingularNeckCutReversed: {
            Gl2Prefoam F = close(theta_patch(id == RelationId::SingularNeckCut), kThetaSlots, c);
            return make({{1, F}}, neck_cut_expansion(F, 0, 1));
        }
        case RelationId::CancelDoubleDisks: {
            Gl2Prefoam H = close(tube_with_disks(variant == "middle preferred"), kTubeSlots, c);
            return make({{1, H}}, {{rho(), close(plain_tube(), kPlainSlots, c)}});
        }
        case RelationId::NeckCut:
        case RelationId::NeckCutTop: {
            Gl2Prefoam H = close(tube_with_disks(variant == "middle preferred"), kTubeSlots, c);
            size_t seam = id == RelationId::NeckCut ? 0 : 1;
            return make({{1, close(plain_tube(), kPlainSlots, c)}}, neck_cut_expansion(H, seam, rho_inv()));
        }
        case RelationId::DiskFlip: {
            Gl2Prefoam F = variant == "theta" ? close(theta_patch(true), kThetaSlots, c)
                                              : close(tube_with_disks(true), kTubeSlots, c);
            return make({{1, F}}, {{-1, flip_seam(F, 0)}});
        }
        case RelationId::OrientationReversal: {
            Gl2Prefoam F = variant == "theta" ? close(theta_patch(true), kThetaSlots, c)
                                              : close(tube_with_disks(variant == "tube"), kTubeSlots, c);
            long sign = F.seams.size() % 2 ? -1 : 1;
            return make({{1, F.reversed()}}, {{sign, F}});
        }
        case RelationId::DotReduction: {
            Gl2Prefoam F;
            std::string where;
            if (variant == "sphere") {
                add_thin(F, "S");
                F = close(F, {"S", "S"}, c);
                where = "S";
            } else {
                F = close(theta_patch(true), kThetaSlots, c);
                where = "T";
            }
            return make({{1, with_dots(F, where, 2)}},
                        {{GroundRingElem::E1(), with_dots(F, where, 1)}, {-GroundRingElem::E2(), F}});
        }
        case RelationId::DoubleNeckCut: {
            // two theta-like seams joined through a double tube, or through a
            // double facet with an extra handle
            bool sep = variant == "separating";
            auto base = [&](bool cut) {
                Gl2Prefoam F;
                for (auto n : {"T1", "B1", "T2", "B2"}) add_thin(F, n);
                if (sep && cut) {
                    add_double(F, "D1");
                    add_double(F, "D2");
                    add_seam(F, "T1", "B1", "D1");
                    add_seam(F, "T2", "B2", "D2");
                } else {
                    add_double(F, "D", sep ? 0 : (cut ? 0 : 1));
                    add_seam(F, "T1", "B1", "D");
                    add_seam(F, "T2", "B2", "D");
                }
                return close(F, {"T1", "B1", "T2", "B2"}, c);
            };
            return make({{1, base(true)}}, {{rho(), base(false)}});
        }
        case RelationId::DotMigrationE1:
        case RelationId::DotMigrationE2: {
            Gl2Prefoam F;
            std::string a, b;
            if (variant == "theta") {
                F = close(theta_patch(true), kThetaSlots, c);
                a = "T";
                b = "B";
            } else {
                F = close(tube_with_disks(true), kTubeSlots, c);
                a = "Ttop";
                b = "M";
            }
            if (id == RelationId::DotMigrationE1)
                return make({{1, with_dots(F, a, 1)}, {1, with_dots(F, b, 1)}}, {{GroundRingElem::E1(), F}});
            return make({{1, with_dots(with_dots(F, a, 1), b, 1)}}, {{GroundRingElem::E2(), F}});
        }
        case RelationId::TubeCut: {
            bool front = variant != "back preferred";
            Gl2Prefoam F;
            add_thin(F, "P");
            add_thin(F, "Q");
            add_double(F, "D");
            if (front) add_seam(F, "P", "Q", "D");
            else add_seam(F, "Q", "P", "D");
            F = close(F, {"P", "P", "Q", "Q"}, c);
            Gl2Prefoam G;
            for (auto n : {"ft", "fb", "bt", "bb"}) add_thin(G, n);
            add_double(G, "D");
            if (front) {
                add_seam(G, "ft", "bt", "D");
                add_seam(G, "fb", "bb", "D");
            } else {
                add_seam(G, "bt", "ft", "D");
                add_seam(G, "bb", "fb", "D");
            }
            G = close(G, {"ft", "fb", "bt", "bb"}, c);
            if (variant == "front preferred")
                return make({{1, F}}, {{1, with_dots(G, "bt", 1)}, {-1, with_dots(G, "fb", 1)}});
            if (variant == "back preferred")
                return make({{1, F}}, {{1, with_dots(G, "fb", 1)}, {-1, with_dots(G, "bt", 1)}});
            return make({{1, F}}, {{1, with_dots(G, "bb", 1)}, {-1, with_dots(G, "ft", 1)}});
        }
        case RelationId::GammaPair: {
            Gl2Prefoam F = close(tube_with_disks(true), kTubeSlots, c);
            long s = 1;
            if (variant == "s = -1") {
                F = flip_seam(F, 1);
                s = -1;
            }
            return make({{1, F}}, {{rho().scaled(s), close(plain_tube(), kPlainSlots, c)}});
        }
    }
    throw Unsupported("unknown relation");
}

bool SkeinReport::pass() const {
    if (cases.empty()) return false;
    for (auto& c : cases)
        if (!c.pass) return false;
    return true;
}

nlohmann::json SkeinReport::to_json() const {
    nlohmann::json j;
    j["relation"] = relation_name(id);
    j["pass"] = pass();
    j["cases"] = nlohmann::json::array();
    for (auto& c : cases) {
        nlohmann::json k = {{"closure", c.closure}, {"variant", c.variant}, {"pass", c.pass}};
        if (c.error.empty()) {
            k["lhs"] = c.lhs.to_string();
            k["rhs"] = c.rhs.to_string();
        } else {
            k["error"] = c.error;
        }
        j["cases"].push_back(k);
    }
    return j;
}

SkeinReport verify_relation(RelationId id, const std::vector<Closure>& closures, int jobs) {
    if (closures.empty()) throw Unsupported("at least one closure is required");
    std::vector<std::pair<std::string, const Closure*>> work;
    for (auto& v : relation_variants(id))
        for (auto& c : closures) work.push_back({v, &c});
    auto side = [](const std::vector<SkeinTerm>& terms) {
        GroundRingElem s;
        for (auto& t : terms) s += t.coeff * eval_exact_gl2(t.foam);
        return s;
    };
    SkeinReport rep;
    rep.id = id;
    rep.cases = parallel_map<SkeinCase>(work.size(), jobs, [&](size_t k) {
        SkeinCase out;
        out.variant = work[k].first;
        out.closure = work[k].second->name;
        try {
            SkeinInstance inst = build_instance(id, out.variant, *work[k].second);
            out.lhs = side(inst.lhs);
            out.rhs = side(inst.rhs);
            out.pass = out.lhs == out.rhs;
        } catch (const DomainError& e) {
            out.error = e.kind() + ": " + e.what();
        }
        return out;
    });
    return rep;
}

// ---------------------------------------------------------------- closed forms

IntSeries schur_polynomial(const std::vector<int>& lambda, int N, int D) {
    std::vector<int> shape;
    for (int l : lambda)
        if (l > 0) shape.push_back(l);
    if (static_cast<int>(shape.size()) > N) return IntSeries(N, D);
    std::vector<std::vector<int>> T(shape.size());
    for (size_t r = 0; r < shape.size(); ++r) T[r].assign(shape[r], 0);
    IntSeries out(N, D);
    std::vector<int> weight(N, 0);
    // fill cells row by row; rows weakly increase, columns strictly increase
    std::function<void(size_t, int)> fill = [&](size_t r, int col) {
        if (r == shape.size()) {
            out += IntSeries::monomial(N, D, weight);
            return;
        }
        if (col == shape[r]) {
            fill(r + 1, 0);
            return;
        }
        int lo = col > 0 ? T[r][col - 1] : 1;
        if (r > 0) lo = std::max(lo, T[r - 1][col] + 1);
        for (int v = lo; v <= N; ++v) {
            T[r][col] = v;
            ++weight[v - 1];
            fill(r, col + 1);
            --weight[v - 1];
        }
    };
    fill(0, 0);
    return out;
}

namespace {

template <class C>
Series<C> complete_homogeneous2(int k, int D) {
    Series<C> h(2, D);
    for (int a = 0; a <= k; ++a) h += Series<C>::monomial(2, D, {a, k - a});
    return h;
}

template <class C>
Series<C> signed_power(const Series<C>& s, int e) {
    return e >= 0 ? s.pow(e) : s.inverse().pow(-e);
}

}  // namespace

template <class C>
Series<C> closed_form_oracle(const ClosedFormSpec& spec, const Series<C>& p) {
    int D = p.trunc_deg();
    Series<C> p12 = p, p21 = p.swap_vars(0, 1);
    using Kind = ClosedFormSpec::Kind;
    switch (spec.kind) {
        case Kind::ThinSurface: {
            int g = spec.genus, n = spec.dots;
            Series<C> a = Series<C>::monomial(2, D, {n, 0}) * signed_power(p12, 1 - g);
            Series<C> b = Series<C>::monomial(2, D, {0, n}) * signed_power(p21, 1 - g);
            Series<C> s = (g - 1) % 2 == 0 ? a + b : a - b;
            if (g >= 1) return s.times_difference(0, 1, g - 1);
            return s.divide_exact(0, 1, 1 - g);
        }
        case Kind::DoubleSurface: return signed_power(-(p12 * p21), 1 - spec.genus);
        case Kind::Theta: {
            int hi = std::max(spec.n1, spec.n2), lo = std::min(spec.n1, spec.n2);
            if (hi == lo) return Series<C>(2, D);
            Series<C> v = Series<C>::monomial(2, D, {lo, lo}) * complete_homogeneous2<C>(hi - lo - 1, D) * p12 * p21;
            return spec.n1 > spec.n2 ? v : -v;
        }
        case Kind::GlNTheta: {
            int N = static_cast<int>(spec.glnDots.size());
            if (N < 2) throw Unsupported("GL(N) theta needs N >= 2");
            std::vector<int> n = spec.glnDots;
            // sort decreasingly, tracking the sign of the permutation
            int sign = 1;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j + 1 < N - i; ++j)
                    if (n[j] < n[j + 1]) {
                        std::swap(n[j], n[j + 1]);
                        sign = -sign;
                    }
            Series<C> v(N, D);
            for (int i = 0; i + 1 < N; ++i)
                if (n[i] == n[i + 1]) return v;
            std::vector<int> lambda(N);
            for (int i = 0; i < N; ++i) lambda[i] = n[i] - (N - 1 - i);
            IntSeries s = schur_polynomial(lambda, N, D);
            for (auto& [k, c] : s.terms()) v.add_term(k, C(c.get_si() * sign));
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    if (i != j) v *= embed_p(p, N, i, j);
            return v;
        }
    }
    throw Unsupported("unsupported closed-form descriptor");
}

template Series<CoeffPoly> closed_form_oracle(const ClosedFormSpec&, const Series<CoeffPoly>&);
template Series<mpz_class> closed_form_oracle(const ClosedFormSpec&, const Series<mpz_class>&);

}  // namespace foamcalc
