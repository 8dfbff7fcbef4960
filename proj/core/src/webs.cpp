#include "foamcalc/webs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "foamcalc/errors.hpp"
#include "foamcalc/parallel.hpp"

namespace foamcalc {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(int e, const mpz_class& c) {
    LaurentPoly p;
    if (c != 0) p.coeffs[e] = c;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [e, c] : o.coeffs) {
        mpz_class& t = coeffs[e];
        t += c;
        if (t == 0) coeffs.erase(e);
    }
    return *this;
}

LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    for (auto& [e, c] : b.coeffs) {
        mpz_class& t = a.coeffs[e];
        t -= c;
        if (t == 0) a.coeffs.erase(e);
    }
    return a;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [e1, c1] : a.coeffs)
        for (auto& [e2, c2] : b.coeffs) r += LaurentPoly::monomial(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::pow(int e) const {
    LaurentPoly r = monomial(0);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::string LaurentPoly::to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [e, c] : coeffs) {
        mpz_class a = abs(c);
        if (!first) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        first = false;
        bool unit = a == 1;
        if (!unit || e == 0) s += a.get_str();
        if (e != 0) {
            if (!unit) s += "*";
            s += "q";
            if (e != 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

// ------------------------------------------------------------------------ Web

namespace {

using HalfEdge = std::pair<std::string, int>;  // segment, 0 = tail 1 = head

const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Merge: return "merge";
        case VertexKind::Split: return "split";
        default: return "joint";
    }
}

VertexKind kind_from(const std::string& s) {
    if (s == "merge") return VertexKind::Merge;
    if (s == "split") return VertexKind::Split;
    if (s == "joint") return VertexKind::Joint;
    throw InvalidWeb("unknown vertex kind '" + s + "'");
}

std::vector<HalfEdge> half_edges(const Web& w, const WebVertex& v) {
    std::vector<HalfEdge> out;
    if (v.kind == VertexKind::Joint) {
        out.push_back({v.rotation.at(0), 1});
        out.push_back({v.rotation.at(1), 0});
        return out;
    }
    for (auto& s : v.rotation) {
        int t = w.segment(s).thickness;
        bool head = (v.kind == VertexKind::Merge) == (t == 1);
        out.push_back({s, head ? 1 : 0});
    }
    return out;
}

// rotation starting at the given entry
std::vector<std::string> rotated_to(const std::vector<std::string>& r, const std::string& first) {
    auto it = std::find(r.begin(), r.end(), first);
    if (it == r.end()) throw InvalidMove("segment " + first + " not at vertex");
    std::vector<std::string> out(it, r.end());
    out.insert(out.end(), r.begin(), it);
    return out;
}

bool cyclic_equal(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    if (std::find(b.begin(), b.end(), a[0]) == b.end()) return false;
    return rotated_to(b, a[0]) == a;
}

struct UnionFind {
    std::vector<int> p;
    int add() {
        p.push_back(static_cast<int>(p.size()));
        return p.back();
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

const WebVertex& Web::vertex(const std::string& id) const {
    auto it = vertices.find(id);
    if (it == vertices.end()) throw InvalidWeb("no vertex '" + id + "'");
    return it->second;
}

const WebSegment& Web::segment(const std::string& id) const {
    auto it = segments.find(id);
    if (it == segments.end()) throw InvalidWeb("no segment '" + id + "'");
    return it->second;
}

void Web::validate() const {
    std::map<HalfEdge, std::string> seen;
    for (auto& [id, s] : segments) {
        if (s.thickness != 1 && s.thickness != 2) throw InvalidWeb("segment " + id + " has thickness " + std::to_string(s.thickness));
        if (!vertices.count(s.from) || !vertices.count(s.to)) throw InvalidWeb("segment " + id + " has a dangling end");
    }
    for (auto& [id, v] : vertices) {
        size_t want = v.kind == VertexKind::Joint ? 2 : 3;
        if (v.rotation.size() != want) throw InvalidWeb("vertex " + id + " has wrong valence");
        for (auto& s : v.rotation)
            if (!segments.count(s)) throw InvalidWeb("vertex " + id + " lists unknown segment " + s);
        if (v.kind == VertexKind::Joint) {
            if (segment(v.rotation[0]).thickness != segment(v.rotation[1]).thickness)
                throw InvalidWeb("joint " + id + " changes thickness");
        } else {
            int thin = 0, dbl = 0;
            for (auto& s : v.rotation) (segment(s).thickness == 1 ? thin : dbl)++;
            if (thin != 2 || dbl != 1) throw InvalidWeb("vertex " + id + " needs two thin and one double edge");
        }
        for (auto& h : half_edges(*this, v)) {
            const WebSegment& s = segment(h.first);
            const std::string& end = h.second ? s.to : s.from;
            if (end != id)
                throw InvalidWeb("flow violated at vertex " + id + " on segment " + h.first);
            if (!seen.emplace(h, id).second) throw InvalidWeb("segment " + h.first + " listed twice");
        }
    }
    if (seen.size() != 2 * segments.size()) throw InvalidWeb("segment missing from a rotation");

    // faces of the rotation system
    std::map<std::string, std::vector<HalfEdge>> rot;
    for (auto& [id, v] : vertices) rot[id] = half_edges(*this, v);
    auto next_dart = [&](const HalfEdge& h) {
        const WebSegment& s = segment(h.first);
        HalfEdge opp{h.first, 1 - h.second};
        const std::string& at = h.second ? s.from : s.to;  // far end of the dart
        auto& r = rot[at];
        auto it = std::find(r.begin(), r.end(), opp);
        ++it;
        if (it == r.end()) it = r.begin();
        return *it;
    };
    std::map<std::string, int> vidx;
    UnionFind uf;
    for (auto& [id, v] : vertices) vidx[id] = uf.add();
    for (auto& [id, s] : segments) uf.unite(vidx[s.from], vidx[s.to]);
    std::map<int, int> euler;
    for (auto& [id, v] : vertices) euler[uf.find(vidx[id])] += 1;
    for (auto& [id, s] : segments) euler[uf.find(vidx[s.from])] -= 1;
    std::set<HalfEdge> done;
    for (auto& [h, at] : seen) {
        if (done.count(h)) continue;
        HalfEdge cur = h;
        do {
            done.insert(cur);
            cur = next_dart(cur);
        } while (cur != h);
        euler[uf.find(vidx[at])] += 1;
    }
    for (auto& [c, e] : euler)
        if (e != 2) throw InvalidWeb("rotation system is not planar");
}

int Web::thin_components() const {
    std::map<std::string, int> idx;
    UnionFind uf;
    for (auto& [id, s] : segments)
        if (s.thickness == 1) idx[id] = uf.add();
    for (auto& [id, v] : vertices) {
        std::vector<int> thin;
        for (auto& s : v.rotation)
            if (segment(s).thickness == 1) thin.push_back(idx.at(s));
        if (thin.size() == 2) uf.unite(thin[0], thin[1]);
    }
    int n = 0;
    for (auto& [id, i] : idx)
        if (uf.find(i) == i) ++n;
    return n;
}

bool Web::same_as(const Web& o) const {
    if (vertices.size() != o.vertices.size() || segments.size() != o.segments.size()) return false;
    for (auto& [id, v] : vertices) {
        auto it = o.vertices.find(id);
        if (it == o.vertices.end() || it->second.kind != v.kind) return false;
        if (v.kind == VertexKind::Joint ? v.rotation != it->second.rotation
                                        : !cyclic_equal(v.rotation, it->second.rotation))
            return false;
    }
    for (auto& [id, s] : segments) {
        auto it = o.segments.find(id);
        if (it == o.segments.end()) return false;
        if (it->second.thickness != s.thickness || it->second.from != s.from || it->second.to != s.to) return false;
    }
    return true;
}

nlohmann::json Web::to_json() const {
    nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
    for (auto& [id, v] : vertices) vs.push_back({{"id", id}, {"kind", kind_name(v.kind)}, {"rotation", v.rotation}});
    for (auto& [id, s] : segments)
        es.push_back({{"id", id}, {"thickness", s.thickness}, {"from", s.from}, {"to", s.to}});
    return {{"vertices", vs}, {"edges", es}};
}

Web Web::from_json(const nlohmann::json& j) {
    Web w;
    try {
        for (auto& v : j.value("vertices", nlohmann::json::array())) {
            WebVertex x;
            x.id = v.at("id").get<std::string>();
            x.kind = kind_from(v.at("kind").get<std::string>());
            x.rotation = v.at("rotation").get<std::vector<std::string>>();
            if (!w.vertices.emplace(x.id, x).second) throw InvalidWeb("duplicate vertex " + x.id);
        }
        for (auto& e : j.at("edges")) {
            WebSegment s;
            s.id = e.at("id").get<std::string>();
            s.thickness = e.value("thickness", 1);
            bool loose = !e.contains("from") || e["from"].is_null();
            bool loose2 = !e.contains("to") || e["to"].is_null();
            if (loose != loose2) throw InvalidWeb("edge " + s.id + " has one free end");
            if (loose) {
                std::string jid = s.id + ".j";
                s.from = s.to = jid;
                if (!w.vertices.emplace(jid, WebVertex{jid, VertexKind::Joint, {s.id, s.id}}).second)
                    throw InvalidWeb("duplicate vertex " + jid);
            } else {
                s.from = e.at("from").get<std::string>();
                s.to = e.at("to").get<std::string>();
            }
            if (!w.segments.emplace(s.id, s).second) throw InvalidWeb("duplicate edge " + s.id);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidWeb(std::string("bad web json: ") + ex.what());
    }
    w.validate();
    return w;
}

// ---------------------------------------------------------------------- moves

namespace {
const std::vector<std::pair<MoveKind, std::string>>& move_names() {
    static const std::vector<std::pair<MoveKind, std::string>> v = {
        {MoveKind::BirthThinCircle, "BirthThinCircle"},
        {MoveKind::DeathThinCircle, "DeathThinCircle"},
        {MoveKind::BirthDoubleCircle, "BirthDoubleCircle"},
        {MoveKind::DeathDoubleCircle, "DeathDoubleCircle"},
        {MoveKind::ThinSaddle, "ThinSaddle"},
        {MoveKind::DoubleSaddle, "DoubleSaddle"},
        {MoveKind::Zip, "Zip"},
        {MoveKind::Unzip, "Unzip"},
        {MoveKind::Dot, "Dot"},
        {MoveKind::Subdivide, "Subdivide"},
        {MoveKind::Smooth, "Smooth"}};
    return v;
}
}  // namespace

std::string move_name(MoveKind k) {
    for (auto& [m, n] : move_names())
        if (m == k) return n;
    return "?";
}

MoveKind move_from_name(const std::string& n) {
    for (auto& [m, s] : move_names())
        if (s == n) return m;
    throw InvalidMove("unknown move '" + n + "'");
}

nlohmann::json Move::to_json() const { return {{"move", move_name(kind)}, {"args", args}, {"outs", outs}}; }

Move Move::from_json(const nlohmann::json& j) {
    Move m;
    try {
        std::string name = j.at("move").get<std::string>();
        m.args = j.value("args", std::vector<std::string>{});
        m.outs = j.value("outs", std::vector<std::string>{});
        // a singular saddle at a crossing is a zip of its two joints or the
        // unzip of its double edge
        if (name == "SingularSaddle") m.kind = m.args.size() == 2 ? MoveKind::Zip : MoveKind::Unzip;
        else m.kind = move_from_name(name);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidMove(std::string("bad move json: ") + ex.what());
    }
    return m;
}

namespace {

std::string fresh(const Web& w, const std::string& prefix) {
    for (int k = 0;; ++k) {
        std::string id = prefix + std::to_string(k);
        if (!w.vertices.count(id) && !w.segments.count(id)) return id;
    }
}

void need_args(const Move& m, size_t n) {
    if (m.args.size() != n) throw InvalidMove(move_name(m.kind) + " expects " + std::to_string(n) + " arguments");
}

// out id k, generated when not supplied
std::string out_id(Web& w, Move& m, size_t k, const std::string& prefix) {
    if (m.outs.size() <= k) m.outs.resize(k + 1);
    if (m.outs[k].empty()) m.outs[k] = fresh(w, prefix);
    if (w.vertices.count(m.outs[k]) || w.segments.count(m.outs[k]))
        throw InvalidMove("id " + m.outs[k] + " already in use");
    return m.outs[k];
}

WebVertex& joint_of(Web& w, const std::string& id, int thickness) {
    auto it = w.vertices.find(id);
    if (it == w.vertices.end() || it->second.kind != VertexKind::Joint) throw InvalidMove("no joint '" + id + "'");
    if (w.segment(it->second.rotation[0]).thickness != thickness)
        throw InvalidMove("joint " + id + " has the wrong thickness");
    return it->second;
}

// replace the occurrence of segment `s` entering vertex v (its head end)
void replace_head(Web& w, const std::string& v, const std::string& s, const std::string& by) {
    WebVertex& x = w.vertices.at(v);
    if (x.kind == VertexKind::Joint) {
        x.rotation[0] = by;
        return;
    }
    std::replace(x.rotation.begin(), x.rotation.end(), s, by);
}

}  // namespace

Move apply_move(Web& w, const Move& move) {
    Move m = move;
    Move inv;
    switch (m.kind) {
        case MoveKind::BirthThinCircle:
        case MoveKind::BirthDoubleCircle: {
            int t = m.kind == MoveKind::BirthThinCircle ? 1 : 2;
            std::string j = out_id(w, m, 0, "j");
            w.vertices[j] = WebVertex{j, VertexKind::Joint, {}};
            std::string s = out_id(w, m, 1, "s");
            w.vertices[j].rotation = {s, s};
            w.segments[s] = WebSegment{s, t, j, j};
            inv.kind = t == 1 ? MoveKind::DeathThinCircle : MoveKind::DeathDoubleCircle;
            inv.args = {j};
            break;
        }
        case MoveKind::DeathThinCircle:
        case MoveKind::DeathDoubleCircle: {
            need_args(m, 1);
            int t = m.kind == MoveKind::DeathThinCircle ? 1 : 2;
            WebVertex& j = joint_of(w, m.args[0], t);
            std::string s = j.rotation[0];
            if (j.rotation[1] != s) throw InvalidMove("joint " + m.args[0] + " is not on a one-joint circle");
            w.segments.erase(s);
            w.vertices.erase(m.args[0]);
            inv.kind = t == 1 ? MoveKind::BirthThinCircle : MoveKind::BirthDoubleCircle;
            inv.outs = {m.args[0], s};
            break;
        }
        case MoveKind::ThinSaddle:
        case MoveKind::DoubleSaddle: {
            need_args(m, 2);
            int t = m.kind == MoveKind::ThinSaddle ? 1 : 2;
            if (m.args[0] == m.args[1]) throw InvalidMove("saddle needs two joints");
            WebVertex& a = joint_of(w, m.args[0], t);
            WebVertex& b = joint_of(w, m.args[1], t);
            std::string y1 = a.rotation[1], y2 = b.rotation[1];
            a.rotation[1] = y2;
            b.rotation[1] = y1;
            w.segments.at(y2).from = m.args[0];
            w.segments.at(y1).from = m.args[1];
            inv = m;
            break;
        }
        case MoveKind::Zip: {
            need_args(m, 2);
            if (m.args[0] == m.args[1]) throw InvalidMove("zip needs two joints");
            WebVertex a = joint_of(w, m.args[0], 1);
            WebVertex b = joint_of(w, m.args[1], 1);
            w.vertices.erase(a.id);
            w.vertices.erase(b.id);
            std::string M = out_id(w, m, 0, "m");
            w.vertices[M] = WebVertex{M, VertexKind::Merge, {}};
            std::string S = out_id(w, m, 1, "v");
            w.vertices[S] = WebVertex{S, VertexKind::Split, {}};
            std::string D = out_id(w, m, 2, "d");
            std::string x1 = a.rotation[0], y1 = a.rotation[1], x2 = b.rotation[0], y2 = b.rotation[1];
            w.segments.at(x1).to = M;
            w.segments.at(x2).to = M;
            w.segments.at(y1).from = S;
            w.segments.at(y2).from = S;
            w.segments[D] = WebSegment{D, 2, M, S};
            w.vertices[M].rotation = {D, x1, x2};
            w.vertices[S].rotation = {D, y2, y1};
            inv.kind = MoveKind::Unzip;
            inv.args = {D};
            inv.outs = {a.id, b.id};
            break;
        }
        case MoveKind::Unzip: {
            need_args(m, 1);
            auto it = w.segments.find(m.args[0]);
            if (it == w.segments.end() || it->second.thickness != 2) throw InvalidMove("no double segment '" + m.args[0] + "'");
            std::string D = m.args[0], M = it->second.from, S = it->second.to;
            if (w.vertex(M).kind != VertexKind::Merge || w.vertex(S).kind != VertexKind::Split)
                throw InvalidMove("double segment " + D + " does not run from a merge to a split");
            auto rm = rotated_to(w.vertex(M).rotation, D), rs = rotated_to(w.vertex(S).rotation, D);
            std::string a = rm[1], b = rm[2], c = rs[1], e = rs[2];
            w.vertices.erase(M);
            w.vertices.erase(S);
            w.segments.erase(D);
            std::string JL = out_id(w, m, 0, "j");
            w.vertices[JL] = WebVertex{JL, VertexKind::Joint, {a, e}};
            std::string JR = out_id(w, m, 1, "j");
            w.vertices[JR] = WebVertex{JR, VertexKind::Joint, {b, c}};
            w.segments.at(a).to = JL;
            w.segments.at(e).from = JL;
            w.segments.at(b).to = JR;
            w.segments.at(c).from = JR;
            inv.kind = MoveKind::Zip;
            inv.args = {JL, JR};
            inv.outs = {M, S, D};
            break;
        }
        case MoveKind::Dot: {
            need_args(m, 1);
            auto it = w.segments.find(m.args[0]);
            if (it == w.segments.end() || it->second.thickness != 1) throw InvalidMove("no thin segment '" + m.args[0] + "'");
            inv = m;
            break;
        }
        case MoveKind::Subdivide: {
            need_args(m, 1);
            auto it = w.segments.find(m.args[0]);
            if (it == w.segments.end()) throw InvalidMove("no segment '" + m.args[0] + "'");
            std::string s = m.args[0], v = it->second.to;
            int t = it->second.thickness;
            std::string J = out_id(w, m, 0, "j");
            w.vertices[J] = WebVertex{J, VertexKind::Joint, {}};
            std::string s2 = out_id(w, m, 1, "s");
            replace_head(w, v, s, s2);
            w.segments[s2] = WebSegment{s2, t, J, v};
            w.segments.at(s).to = J;
            w.vertices[J].rotation = {s, s2};
            inv.kind = MoveKind::Smooth;
            inv.args = {J};
            break;
        }
        case MoveKind::Smooth: {
            need_args(m, 1);
            auto it = w.vertices.find(m.args[0]);
            if (it == w.vertices.end() || it->second.kind != VertexKind::Joint) throw InvalidMove("no joint '" + m.args[0] + "'");
            std::string x = it->second.rotation[0], y = it->second.rotation[1];
            if (x == y) throw InvalidMove("joint " + m.args[0] + " is the only joint of its circle");
            std::string v = w.segment(y).to;
            w.vertices.erase(it);
            replace_head(w, v, y, x);
            w.segments.at(x).to = v;
            w.segments.erase(y);
            inv.kind = MoveKind::Subdivide;
            inv.args = {x};
            inv.outs = {m.args[0], y};
            break;
        }
    }
    return inv;
}

// --------------------------------------------------------------------- movies

Web FoamMovie::end() const {
    Web w = start;
    for (auto& m : moves) apply_move(w, m);
    return w;
}

int FoamMovie::degree() const {
    int d = 0;
    for (auto& m : moves) switch (m.kind) {
            case MoveKind::BirthThinCircle:
            case MoveKind::DeathThinCircle: d -= 1; break;
            case MoveKind::ThinSaddle:
            case MoveKind::Zip:
            case MoveKind::Unzip: d += 1; break;
            case MoveKind::Dot: d += 2; break;
            default: break;
        }
    return d;
}

FoamMovie FoamMovie::adjoint() const {
    FoamMovie r;
    Web w = start;
    std::vector<Move> inv;
    for (auto& m : moves) inv.push_back(apply_move(w, m));
    r.start = w;
    r.moves.assign(inv.rbegin(), inv.rend());
    return r;
}

FoamMovie FoamMovie::then(const FoamMovie& g) const {
    if (!end().same_as(g.start)) throw BoundaryMismatch("movies do not compose: end and start webs differ");
    FoamMovie r = *this;
    r.moves.insert(r.moves.end(), g.moves.begin(), g.moves.end());
    return r;
}

nlohmann::json FoamMovie::to_json() const {
    nlohmann::json ms = nlohmann::json::array();
    for (auto& m : moves) ms.push_back(m.to_json());
    return {{"start", start.to_json()}, {"moves", ms}};
}

FoamMovie FoamMovie::from_json(const nlohmann::json& j) {
    FoamMovie f;
    if (j.contains("start") && !j["start"].is_null()) f.start = Web::from_json(j["start"]);
    if (!j.contains("moves") || !j["moves"].is_array()) throw InvalidMove("movie needs a moves array");
    for (auto& m : j["moves"]) f.moves.push_back(Move::from_json(m));
    return f;
}

// ------------------------------------------------------------ closing a movie

namespace {

// Traces facets and seams through a movie. Each facet's Euler characteristic
// is accumulated as the change in compactly supported Euler characteristic
// from the frame before an event to the singular level of that event; these
// changes telescope to chi of the closed facet.
struct Tracker {
    UnionFind facets;
    std::vector<int> thickness, delta, dots;
    std::map<std::string, int> segNode;
    UnionFind seamUf;
    std::map<std::string, int> vertSeam;
    struct Record {
        int seam, pref, other, dbl;
    };
    std::vector<Record> records;

    int node(int t) {
        thickness.push_back(t);
        delta.push_back(0);
        dots.push_back(0);
        return facets.add();
    }
    int of(const std::string& s) { return facets.find(segNode.at(s)); }

    void step(Web& w, const Move& m) {
        switch (m.kind) {
            case MoveKind::BirthThinCircle:
            case MoveKind::BirthDoubleCircle: {
                apply_move(w, m);
                int n = node(m.kind == MoveKind::BirthThinCircle ? 1 : 2);
                std::string s = m.outs.size() > 1 ? m.outs[1] : "";
                if (s.empty()) throw InvalidMove("births inside a closed movie need explicit ids");
                segNode[s] = n;
                delta[n] += 1;
                return;
            }
            case MoveKind::DeathThinCircle:
            case MoveKind::DeathDoubleCircle: {
                std::string s = w.joint_in(m.args.at(0));
                delta[of(s)] += 1;
                apply_move(w, m);
                segNode.erase(s);
                return;
            }
            case MoveKind::ThinSaddle:
            case MoveKind::DoubleSaddle: {
                std::string x1 = w.joint_in(m.args.at(0)), x2 = w.joint_in(m.args.at(1));
                facets.unite(segNode.at(x1), segNode.at(x2));
                delta[of(x1)] -= 1;
                apply_move(w, m);
                return;
            }
            case MoveKind::Zip: {
                std::string x1 = w.joint_in(m.args.at(0)), x2 = w.joint_in(m.args.at(1));
                std::string y1 = w.joint_out(m.args.at(0)), y2 = w.joint_out(m.args.at(1));
                delta[of(x1)] -= 1;
                delta[of(x2)] -= 1;
                apply_move(w, m);
                if (m.outs.size() < 3) throw InvalidMove("zips inside a closed movie need explicit ids");
                int d = node(2);
                segNode[m.outs[2]] = d;
                int seam = seamUf.add();
                vertSeam[m.outs[0]] = seam;
                vertSeam[m.outs[1]] = seam;
                // preferred side: the thin edge after the double edge
                // counterclockwise at a merge, clockwise at a split
                records.push_back({seam, segNode.at(x1), segNode.at(x2), d});
                records.push_back({seam, segNode.at(y1), segNode.at(y2), d});
                return;
            }
            case MoveKind::Unzip: {
                const WebSegment& D = w.segment(m.args.at(0));
                delta[of(D.id)] += 1;
                seamUf.unite(vertSeam.at(D.from), vertSeam.at(D.to));
                Move inv = apply_move(w, m);
                for (auto& j : inv.args) facets.unite(segNode.at(w.joint_in(j)), segNode.at(w.joint_out(j)));
                return;
            }
            case MoveKind::Dot:
                apply_move(w, m);
                dots[of(m.args.at(0))] += 1;
                return;
            case MoveKind::Subdivide: {
                if (m.outs.size() < 2) throw InvalidMove("subdivisions inside a closed movie need explicit ids");
                std::string s = m.args.at(0);
                apply_move(w, m);
                segNode[m.outs[1]] = segNode.at(s);
                return;
            }
            case MoveKind::Smooth: {
                std::string x = w.joint_in(m.args.at(0)), y = w.joint_out(m.args.at(0));
                facets.unite(segNode.at(x), segNode.at(y));
                apply_move(w, m);
                segNode.erase(y);
                return;
            }
        }
    }
};

// fills in generated ids so the tracker sees every new name
std::vector<Move> with_ids(const Web& start, const std::vector<Move>& moves) {
    Web w = start;
    std::vector<Move> out;
    for (auto m : moves) {
        Web before = w;
        apply_move(w, m);
        size_t want = 0;
        switch (m.kind) {
            case MoveKind::BirthThinCircle:
            case MoveKind::BirthDoubleCircle:
            case MoveKind::Subdivide: want = 2; break;
            case MoveKind::Zip: want = 3; break;
            case MoveKind::Unzip: want = 2; break;
            default: break;
        }
        if (m.outs.size() < want || std::any_of(m.outs.begin(), m.outs.end(), [](auto& s) { return s.empty(); })) {
            Web b2 = before;
            Move inv = apply_move(b2, m);
            // recover the generated ids from the inverse move
            switch (m.kind) {
                case MoveKind::BirthThinCircle:
                case MoveKind::BirthDoubleCircle: m.outs = {inv.args[0], b2.joint_in(inv.args[0])}; break;
                case MoveKind::Subdivide: m.outs = {inv.args[0], b2.joint_out(inv.args[0])}; break;
                case MoveKind::Zip: {
                    const WebSegment& d = b2.segment(inv.args[0]);
                    m.outs = {d.from, d.to, d.id};
                    break;
                }
                case MoveKind::Unzip: m.outs = inv.args; break;
                default: break;
            }
        }
        out.push_back(m);
    }
    return out;
}

}  // namespace

Gl2Prefoam compose_and_close(const std::vector<FoamMovie>& movies) {
    if (movies.empty()) return {};
    if (!movies.front().start.empty()) throw BoundaryMismatch("closed composite must start at the empty web");
    Web w;
    Tracker tr;
    for (auto& f : movies) {
        if (!w.same_as(f.start)) throw BoundaryMismatch("consecutive movies do not share a web");
        for (auto& m : with_ids(f.start, f.moves)) tr.step(w, m);
    }
    if (!w.empty()) throw BoundaryMismatch("composite does not end at the empty web");

    int n = static_cast<int>(tr.thickness.size());
    std::map<int, int> chi, dots, bnd;
    for (int i = 0; i < n; ++i) {
        int r = tr.facets.find(i);
        chi[r] += tr.delta[i];
        dots[r] += tr.dots[i];
    }
    std::map<int, Tracker::Record> seamOf;
    for (auto& rec : tr.records) {
        Tracker::Record r{tr.seamUf.find(rec.seam), tr.facets.find(rec.pref), tr.facets.find(rec.other),
                          tr.facets.find(rec.dbl)};
        auto [it, fresh] = seamOf.emplace(r.seam, r);
        if (!fresh && (it->second.pref != r.pref || it->second.other != r.other || it->second.dbl != r.dbl))
            throw OrientationIncompatible("preferred side changes along a seam");
        if (r.pref == r.other) throw OrientationIncompatible("a seam has the same thin facet on both sides");
    }
    for (auto& [s, r] : seamOf) {
        bnd[r.pref]++;
        bnd[r.other]++;
        bnd[r.dbl]++;
    }
    Gl2Prefoam F;
    std::map<int, std::string> name;
    for (auto& [r, c] : chi) {
        int b = bnd[r];
        int twoG = 2 - b - c;
        if (twoG < 0 || twoG % 2) throw MalformedFoam("traced facet has Euler characteristic " + std::to_string(c));
        if (tr.thickness[r] == 1) {
            name[r] = "f" + std::to_string(F.thin.size());
            F.thin.push_back({name[r], twoG / 2, b, dots[r]});
        } else {
            name[r] = "g" + std::to_string(F.dbl.size());
            F.dbl.push_back({name[r], twoG / 2, b});
        }
    }
    for (auto& [s, r] : seamOf) F.seams.push_back({name[r.pref], name[r.other], name[r.dbl]});
    F.validate();
    return F;
}

LaurentPoly moy_rank(const Web& w) { return LaurentPoly::quantum_two().pow(w.thin_components()); }

// ------------------------------------------------------------------ reduction

nlohmann::json ReductionTrace::to_json() const {
    nlohmann::json st = nlohmann::json::array();
    for (auto& s : steps) {
        nlohmann::json r = nlohmann::json::array(), b = nlohmann::json::array();
        for (auto& m : s.reduction) r.push_back(m.to_json());
        for (auto& m : s.build) b.push_back(m.to_json());
        st.push_back({{"kind", s.kind}, {"normalization", s.normalization}, {"reduction", r}, {"build", b}});
    }
    return {{"steps", st}, {"reduced", reduced.to_json()}};
}

namespace {

struct Reducer {
    Web w;
    std::vector<ReductionStep> steps;

    void run(ReductionStep& st, Web& target, Move m) {
        Move inv = apply_move(target, m);
        st.reduction.push_back(m);
        st.build.insert(st.build.begin(), inv);
    }

    Move mk(MoveKind k, std::vector<std::string> args, std::vector<std::string> outs = {}) {
        return Move{k, std::move(args), std::move(outs)};
    }

    bool smooth_joints() {
        for (auto& [id, v] : w.vertices)
            if (v.kind == VertexKind::Joint && v.rotation[0] != v.rotation[1]) {
                ReductionStep st{"joint", {}, {}, "1"};
                run(st, w, mk(MoveKind::Smooth, {id}));
                steps.push_back(st);
                return true;
            }
        return false;
    }

    bool drop_double_circle() {
        for (auto& [id, v] : w.vertices)
            if (v.kind == VertexKind::Joint && w.segment(v.rotation[0]).thickness == 2) {
                ReductionStep st{"double circle", {}, {}, "1"};
                run(st, w, mk(MoveKind::DeathDoubleCircle, {id}));
                steps.push_back(st);
                return true;
            }
        return false;
    }

    // digon along a thin edge: unzipping its double edge splits off a circle
    static bool digon_at(const Web& w, const std::string& D) {
        const WebSegment& d = w.segment(D);
        auto rm = rotated_to(w.vertex(d.from).rotation, D), rs = rotated_to(w.vertex(d.to).rotation, D);
        return rm[1] == rs[2] || rm[2] == rs[1];
    }

    bool remove_digon() {
        for (auto& [D, s] : w.segments) {
            if (s.thickness != 2 || w.vertex(s.from).kind != VertexKind::Merge) continue;
            if (!digon_at(w, D)) continue;
            ReductionStep st{"digon", {}, {}, "1"};
            std::string jl = fresh(w, "rj"), jr;
            Move u = mk(MoveKind::Unzip, {D}, {jl, ""});
            {
                Web t = w;
                t.vertices[jl];
                jr = fresh(t, "rj");
            }
            u.outs[1] = jr;
            run(st, w, u);
            std::string loop = w.joint_in(jl) == w.joint_out(jl) ? jl : jr;
            run(st, w, mk(MoveKind::DeathThinCircle, {loop}));
            steps.push_back(st);
            return true;
        }
        return false;
    }

    // side of the double edge at v when passing from thin segment p to q
    static bool double_on_left(const Web& w, const std::string& v, const std::string& p, const std::string& q) {
        auto r = rotated_to(w.vertex(v).rotation, p);
        return r[1] == q;
    }

    static std::string other_thin(const Web& w, const std::string& v, const std::string& s) {
        for (auto& x : w.vertex(v).rotation)
            if (x != s && w.segment(x).thickness == 1) return x;
        throw NonReducible("vertex " + v + " lacks a second thin edge");
    }

    static std::string double_at(const Web& w, const std::string& v) {
        for (auto& x : w.vertex(v).rotation)
            if (w.segment(x).thickness == 2) return x;
        throw NonReducible("vertex " + v + " lacks a double edge");
    }

    bool double_saddle() {
        for (auto& [e, s] : w.segments) {
            if (s.thickness != 1) continue;
            const std::string &Sj = s.from, &Mi = s.to;
            if (w.vertex(Sj).kind != VertexKind::Split || w.vertex(Mi).kind != VertexKind::Merge) continue;
            bool l1 = double_on_left(w, Sj, other_thin(w, Sj, e), e);
            bool l2 = double_on_left(w, Mi, e, other_thin(w, Mi, e));
            if (l1 != l2) continue;
            std::string d1 = double_at(w, Mi), d2 = double_at(w, Sj);
            if (d1 == d2) continue;
            Web t = w;
            ReductionStep st{"double saddle", {}, {}, "rho^-1"};
            std::string k1 = fresh(t, "rk"), b1 = k1 + "s";
            run(st, t, mk(MoveKind::Subdivide, {d1}, {k1, b1}));
            std::string k2 = fresh(t, "rk"), b2 = k2 + "s";
            run(st, t, mk(MoveKind::Subdivide, {d2}, {k2, b2}));
            run(st, t, mk(MoveKind::DoubleSaddle, {k1, k2}));
            run(st, t, mk(MoveKind::Smooth, {k1}));
            run(st, t, mk(MoveKind::Smooth, {k2}));
            try {
                t.validate();
            } catch (const InvalidWeb&) {
                continue;
            }
            if (!digon_at(t, d1)) continue;
            w = t;
            steps.push_back(st);
            return true;
        }
        return false;
    }

    bool has_trivalent() const {
        for (auto& [id, v] : w.vertices)
            if (v.kind != VertexKind::Joint) return true;
        return false;
    }
};

}  // namespace

ReductionTrace reduce_web(const Web& web) {
    web.validate();
    Reducer r{web, {}};
    for (;;) {
        if (r.smooth_joints() || r.drop_double_circle()) continue;
        if (!r.has_trivalent()) break;
        if (r.remove_digon() || r.double_saddle()) continue;
        throw NonReducible("no digon or admissible double saddle found");
    }
    return {r.steps, r.w};
}

// ---------------------------------------------------------------- state space

LaurentPoly StateSpace::graded_rank() const {
    LaurentPoly p;
    for (int d : degrees) p += LaurentPoly::monomial(d);
    return p;
}

nlohmann::json matrix_json(const RMatrix& A) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& row : A) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& e : row) r.push_back(e.to_string());
        j.push_back(r);
    }
    return j;
}

nlohmann::json StateSpace::to_json() const {
    return {{"web", web.to_json()},
            {"rank", basis.size()},
            {"graded_rank", graded_rank().to_string()},
            {"degrees", degrees},
            {"gram", matrix_json(gram)},
            {"reduction", trace.to_json()}};
}

namespace {

RMatrix closed_pairings(const std::vector<FoamMovie>& left, const FoamMovie* middle,
                        const std::vector<FoamMovie>& rightAdj, int jobs) {
    size_t n = rightAdj.size(), k = left.size();
    auto vals = parallel_map<GroundRingElem>(n * k, jobs, [&](size_t idx) {
        size_t i = idx / k, j = idx % k;
        std::vector<FoamMovie> seq{left[j]};
        if (middle) seq.push_back(*middle);
        seq.push_back(rightAdj[i]);
        return eval_exact_gl2(compose_and_close(seq));
    });
    RMatrix P(n, std::vector<GroundRingElem>(k));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) P[i][j] = vals[i * k + j];
    return P;
}

std::vector<FoamMovie> adjoints(const std::vector<FoamMovie>& v) {
    std::vector<FoamMovie> out;
    for (auto& f : v) out.push_back(f.adjoint());
    return out;
}

RMatrix transpose(const RMatrix& A) {
    if (A.empty()) return A;
    RMatrix T(A[0].size(), std::vector<GroundRingElem>(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

GroundRingElem exact_div(const GroundRingElem& a, const GroundRingElem& b) {
    auto q = ground_divide(a, b);
    if (!q) throw NotDivisible("fraction-free elimination produced an inexact quotient");
    return *q;
}

// Fraction-free Gauss-Jordan on [A | B]; leaves d*I | d*A^{-1}B with
// d = +-det A. Returns d, or zero when A is singular.
GroundRingElem bareiss(RMatrix& aug, size_t n, int* swaps) {
    GroundRingElem prev(1);
    for (size_t k = 0; k < n; ++k) {
        size_t r = k;
        while (r < n && aug[r][k].is_zero()) ++r;
        if (r == n) return GroundRingElem();
        if (r != k) {
            std::swap(aug[r], aug[k]);
            if (swaps) ++*swaps;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (size_t j = 0; j < aug[i].size(); ++j) {
                if (j == k) continue;
                aug[i][j] = exact_div(aug[k][k] * aug[i][j] - aug[i][k] * aug[k][j], prev);
            }
            aug[i][k] = GroundRingElem();
        }
        prev = aug[k][k];
    }
    return prev;
}

}  // namespace

GroundRingElem determinant(const RMatrix& A) {
    size_t n = A.size();
    if (n == 0) return GroundRingElem(1);
    RMatrix aug = A;
    int swaps = 0;
    GroundRingElem d = bareiss(aug, n, &swaps);
    return swaps % 2 ? -d : d;
}

RMatrix solve_over_ring(const RMatrix& A, const RMatrix& B) {
    size_t n = A.size();
    if (B.size() != n) throw DimensionMismatch("solve: row counts differ");
    if (n == 0) return B;
    RMatrix aug = A;
    for (size_t i = 0; i < n; ++i) aug[i].insert(aug[i].end(), B[i].begin(), B[i].end());
    GroundRingElem d = bareiss(aug, n, nullptr);
    if (d.is_zero()) throw NonInvertibleGram("pairing matrix is singular");
    RMatrix X(n);
    auto inv = d.unit_inverse();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = n; j < aug[i].size(); ++j) {
            if (inv) X[i].push_back(aug[i][j] * *inv);
            else {
                auto q = ground_divide(aug[i][j], d);
                if (!q) throw NonInvertibleGram("linear system has no solution over the ground ring");
                X[i].push_back(*q);
            }
        }
    return X;
}

RMatrix mat_mul(const RMatrix& A, const RMatrix& B) {
    size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
    RMatrix C(n, std::vector<GroundRingElem>(m));
    for (size_t i = 0; i < n; ++i) {
        if (A[i].size() != k) throw DimensionMismatch("matrix product shapes differ");
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    }
    return C;
}

RMatrix kronecker(const RMatrix& A, const RMatrix& B) {
    size_t ar = A.size(), ac = ar ? A[0].size() : 0, br = B.size(), bc = br ? B[0].size() : 0;
    RMatrix C(ar * br, std::vector<GroundRingElem>(ac * bc));
    for (size_t i = 0; i < ar; ++i)
        for (size_t j = 0; j < ac; ++j)
            for (size_t k = 0; k < br; ++k)
                for (size_t l = 0; l < bc; ++l) C[i * br + k][j * bc + l] = A[i][j] * B[k][l];
    return C;
}

StateSpace state_space_basis(const Web& web, int jobs) {
    StateSpace ss;
    ss.web = web;
    ss.trace = reduce_web(web);
    std::vector<Move> build;
    for (auto it = ss.trace.steps.rbegin(); it != ss.trace.steps.rend(); ++it)
        build.insert(build.end(), it->build.begin(), it->build.end());
    std::vector<std::pair<std::string, std::string>> circles;
    for (auto& [id, v] : ss.trace.reduced.vertices) circles.push_back({id, v.rotation[0]});
    size_t m = circles.size();
    for (size_t b = 0; b < (size_t(1) << m); ++b) {
        FoamMovie f;
        for (auto& [j, s] : circles) f.moves.push_back({MoveKind::BirthThinCircle, {}, {j, s}});
        for (size_t k = 0; k < m; ++k)
            if ((b >> (m - 1 - k)) & 1) f.moves.push_back({MoveKind::Dot, {circles[k].second}, {}});
        f.moves.insert(f.moves.end(), build.begin(), build.end());
        ss.degrees.push_back(f.degree());
        ss.basis.push_back(std::move(f));
    }
    if (!ss.basis.empty() && !ss.basis.front().end().same_as(web))
        throw NonReducible("rebuilt web differs from the input");
    ss.gram = closed_pairings(ss.basis, nullptr, adjoints(ss.basis), jobs);
    return ss;
}

RMatrix foam_pairing_matrix(const FoamMovie& f, const StateSpace& dom, const StateSpace& cod, int jobs) {
    if (!f.start.same_as(dom.web)) throw BoundaryMismatch("movie does not start at the domain web");
    if (!f.end().same_as(cod.web)) throw BoundaryMismatch("movie does not end at the codomain web");
    return closed_pairings(dom.basis, &f, adjoints(cod.basis), jobs);
}

RMatrix foam_map_matrix(const FoamMovie& f, const StateSpace& dom, const StateSpace& cod, int jobs) {
    return solve_over_ring(transpose(cod.gram), foam_pairing_matrix(f, dom, cod, jobs));
}

// ------------------------------------------------------------------- builders

namespace webs {

namespace {
void add_seg(Web& w, const std::string& id, int t, const std::string& from, const std::string& to) {
    w.segments[id] = WebSegment{id, t, from, to};
}
void add_vertex(Web& w, const std::string& id, VertexKind k, std::vector<std::string> rot) {
    w.vertices[id] = WebVertex{id, k, std::move(rot)};
}
}  // namespace

Web thin_circle(const std::string& id) {
    Web w;
    add_vertex(w, id + ".j", VertexKind::Joint, {id, id});
    add_seg(w, id, 1, id + ".j", id + ".j");
    return w;
}

Web double_circle(const std::string& id) {
    Web w;
    add_vertex(w, id + ".j", VertexKind::Joint, {id, id});
    add_seg(w, id, 2, id + ".j", id + ".j");
    return w;
}

Web disjoint_union(const Web& a, const Web& b) {
    Web w = a;
    for (auto& [id, v] : b.vertices)
        if (!w.vertices.emplace(id, v).second || a.segments.count(id)) throw InvalidWeb("id clash on " + id);
    for (auto& [id, s] : b.segments)
        if (!w.segments.emplace(id, s).second || a.vertices.count(id)) throw InvalidWeb("id clash on " + id);
    return w;
}

Web theta_web() {
    Web w;
    add_vertex(w, "M", VertexKind::Merge, {"D", "t1", "t2"});
    add_vertex(w, "S", VertexKind::Split, {"D", "t2", "t1"});
    add_seg(w, "D", 2, "M", "S");
    add_seg(w, "t1", 1, "S", "M");
    add_seg(w, "t2", 1, "S", "M");
    return w;
}

Web figure_web() {
    Web w;
    add_vertex(w, "MA", VertexKind::Merge, {"D1", "a1", "a2"});
    add_vertex(w, "SA", VertexKind::Split, {"D2", "a2", "a1"});
    add_vertex(w, "SB", VertexKind::Split, {"D1", "b2", "b1"});
    add_vertex(w, "MB", VertexKind::Merge, {"D2", "b1", "b2"});
    add_seg(w, "a1", 1, "SA", "MA");
    add_seg(w, "a2", 1, "SA", "MA");
    add_seg(w, "b1", 1, "SB", "MB");
    add_seg(w, "b2", 1, "SB", "MB");
    add_seg(w, "D1", 2, "MA", "SB");
    add_seg(w, "D2", 2, "MB", "SA");
    return disjoint_union(disjoint_union(w, thin_circle("t")), double_circle("dd"));
}

}  // namespace webs

}  // namespace foamcalc
