#include "foamcalc/homology.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "foamcalc/errors.hpp"
#include "foamcalc/parallel.hpp"

namespace foamcalc {

// ------------------------------------------------------------------ PD codes

int PDLink::n_plus() const {
    return static_cast<int>(std::count_if(crossings.begin(), crossings.end(),
                                          [](const PDCrossing& c) { return c.sign() > 0; }));
}

int PDLink::n_minus() const { return static_cast<int>(crossings.size()) - n_plus(); }

namespace {

struct Slot {
    int crossing, pos;
};

// +1 when the strand enters the crossing at this slot, -1 when it leaves.
int slot_role(const PDCrossing& c, int pos) {
    if (pos == 0) return 1;
    if (pos == 2) return -1;
    if (c.overIn == 0) return 0;
    return pos == c.overIn ? 1 : -1;
}

std::map<int, std::vector<Slot>> label_slots(const std::vector<PDCrossing>& xs) {
    std::map<int, std::vector<Slot>> m;
    for (size_t c = 0; c < xs.size(); ++c)
        for (int p = 0; p < 4; ++p) m[xs[c].labels[p]].push_back({static_cast<int>(c), p});
    for (auto& [l, v] : m)
        if (v.size() != 2) throw InvalidPD("label " + std::to_string(l) + " occurs " + std::to_string(v.size()) + " times");
    return m;
}

// Fills in overIn == 0 entries from strand continuity.
void orient(std::vector<PDCrossing>& xs) {
    auto slots = label_slots(xs);
    auto propagate = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [l, v] : slots) {
                int r0 = slot_role(xs[v[0].crossing], v[0].pos), r1 = slot_role(xs[v[1].crossing], v[1].pos);
                if (r0 != 0 && r1 != 0) continue;
                if (r0 == 0 && r1 == 0) continue;
                const Slot& open = r0 == 0 ? v[0] : v[1];
                int want = -(r0 == 0 ? r1 : r0);
                xs[open.crossing].overIn = want > 0 ? open.pos : 4 - open.pos;
                changed = true;
            }
        }
    };
    propagate();
    for (auto& c : xs) {
        if (c.overIn != 0) continue;
        int b = c.labels[1], d = c.labels[3];
        if (d == b + 1) c.overIn = 1;
        else if (b == d + 1) c.overIn = 3;
        else c.overIn = b > d ? 1 : 3;  // wrap-around from the largest label
        propagate();
    }
}

}  // namespace

void PDLink::validate() const {
    if (freeLoops < 0) throw InvalidPD("negative number of free loops");
    auto slots = label_slots(crossings);
    for (auto& c : crossings)
        if (c.overIn != 1 && c.overIn != 3) throw InvalidPD("over-strand direction missing");
    for (auto& [l, v] : slots) {
        int r0 = slot_role(crossings[v[0].crossing], v[0].pos), r1 = slot_role(crossings[v[1].crossing], v[1].pos);
        if (r0 + r1 != 0) throw InvalidPD("strand " + std::to_string(l) + " is not consistently oriented");
    }
}

PDLink PDLink::parse(const std::string& text) {
    PDLink d;
    static const std::regex tok(R"(\s*(?:X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]|(O))\s*(,|$))");
    auto it = text.cbegin();
    std::smatch m;
    while (it != text.cend()) {
        if (!std::regex_search(it, text.cend(), m, tok, std::regex_constants::match_continuous)) {
            if (std::all_of(it, text.cend(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); })) break;
            throw InvalidPD("cannot parse PD code near \"" + std::string(it, text.cend()) + "\"");
        }
        if (m[5].matched) {
            ++d.freeLoops;
        } else {
            PDCrossing c;
            for (int k = 0; k < 4; ++k) c.labels[k] = std::stoi(m[k + 1].str());
            c.overIn = 0;
            d.crossings.push_back(c);
        }
        if (m[0].length() == 0) break;
        it = m[0].second;
    }
    orient(d.crossings);
    d.validate();
    return d;
}

std::string PDLink::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto& c : crossings) {
        if (!first) os << ",";
        first = false;
        os << "X[" << c.labels[0] << "," << c.labels[1] << "," << c.labels[2] << "," << c.labels[3] << "]";
    }
    for (int k = 0; k < freeLoops; ++k) {
        if (!first) os << ",";
        first = false;
        os << "O";
    }
    return os.str();
}

PDLink PDLink::braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 1) throw InvalidPD("a braid needs at least one strand");
    PDLink d;
    std::vector<int> cur(strands);
    for (int k = 0; k < strands; ++k) cur[k] = k + 1;
    int next = strands + 1;
    for (int g : word) {
        int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands) throw InvalidPD("braid generator " + std::to_string(g) + " out of range");
        int left = cur[i], right = cur[i + 1];
        int toLeft = next++, toRight = next++;
        PDCrossing c;
        if (g > 0) {  // left strand passes over, moving right
            c.labels = {right, toRight, toLeft, left};
            c.overIn = 3;
        } else {
            c.labels = {left, right, toRight, toLeft};
            c.overIn = 1;
        }
        cur[i] = toLeft;
        cur[i + 1] = toRight;
        d.crossings.push_back(c);
    }
    std::map<int, int> rename;
    for (int k = 0; k < strands; ++k) rename[cur[k]] = k + 1;
    std::set<int> used;
    for (auto& c : d.crossings)
        for (auto& l : c.labels) {
            if (rename.count(l)) l = rename[l];
            used.insert(l);
        }
    for (int k = 0; k < strands; ++k)
        if (!used.count(k + 1)) ++d.freeLoops;
    std::map<int, int> compact;
    for (int l : used) compact.emplace(l, static_cast<int>(compact.size()) + 1);
    for (auto& c : d.crossings)
        for (auto& l : c.labels) l = compact[l];
    d.validate();
    return d;
}

PDLink PDLink::reverse_component(int label) const {
    validate();
    auto slots = label_slots(crossings);
    if (!slots.count(label)) throw InvalidPD("no strand labelled " + std::to_string(label));
    std::set<int> comp;
    int l = label;
    while (comp.insert(l).second) {
        for (auto& s : slots[l]) {
            const auto& c = crossings[s.crossing];
            if (slot_role(c, s.pos) != 1) continue;
            l = c.labels[(s.pos + 2) % 4];
            break;
        }
    }
    PDLink out = *this;
    for (auto& c : out.crossings) {
        bool under = comp.count(c.labels[0]) > 0;
        bool over = comp.count(c.labels[1]) > 0;
        if (under) {
            c.labels = {c.labels[2], c.labels[3], c.labels[0], c.labels[1]};
            c.overIn = 4 - c.overIn;
        }
        if (over) c.overIn = 4 - c.overIn;
    }
    out.validate();
    return out;
}

PDLink PDLink::permuted(const std::vector<int>& perm) const {
    if (perm.size() != crossings.size()) throw DimensionMismatch("permutation length differs from crossing count");
    PDLink out = *this;
    for (size_t k = 0; k < perm.size(); ++k) out.crossings[k] = crossings.at(perm[k]);
    return out;
}

// ---------------------------------------------------------------- resolutions

namespace {

struct LocalStrands {
    int in1, out1, in2, out2;  // left pair, right pair for the zip
};

LocalStrands local_strands(const PDCrossing& c) {
    auto& l = c.labels;
    if (c.sign() > 0) return {l[3], l[2], l[0], l[1]};
    return {l[0], l[3], l[1], l[2]};
}

std::string jl(size_t c) { return "x" + std::to_string(c) + "l"; }
std::string jr(size_t c) { return "x" + std::to_string(c) + "r"; }
std::string mid(size_t c) { return "m" + std::to_string(c); }
std::string sid(size_t c) { return "s" + std::to_string(c); }
std::string did(size_t c) { return "d" + std::to_string(c); }

bool is_double_edge(const PDCrossing& c, bool bit) { return c.sign() > 0 ? bit : !bit; }

Web smoothing_web(const PDLink& d) {
    Web w;
    std::map<int, std::string> head, tail;  // label -> joint it enters / leaves
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        auto s = local_strands(d.crossings[c]);
        auto seg = [](int l) { return "e" + std::to_string(l); };
        w.vertices[jl(c)] = {jl(c), VertexKind::Joint, {seg(s.in1), seg(s.out1)}};
        w.vertices[jr(c)] = {jr(c), VertexKind::Joint, {seg(s.in2), seg(s.out2)}};
        head[s.in1] = jl(c);
        tail[s.out1] = jl(c);
        head[s.in2] = jr(c);
        tail[s.out2] = jr(c);
    }
    for (auto& [l, j] : head) {
        std::string id = "e" + std::to_string(l);
        w.segments[id] = {id, 1, tail.at(l), j};
    }
    for (int k = 0; k < d.freeLoops; ++k) w = webs::disjoint_union(w, webs::thin_circle("o" + std::to_string(k)));
    return w;
}

}  // namespace

std::vector<CubeVertex> resolutions(const PDLink& d) {
    d.validate();
    size_t n = d.crossings.size();
    if (n > 20) throw Unsupported("too many crossings for the cube");
    Web base = smoothing_web(d);
    // every crossing as a double edge keeps the cyclic order of the PD code
    Web full = base;
    for (size_t c = 0; c < n; ++c) apply_move(full, {MoveKind::Zip, {jl(c), jr(c)}, {mid(c), sid(c), did(c)}});
    try {
        full.validate();
    } catch (const InvalidWeb& e) {
        throw InvalidPD(std::string("diagram is not planar: ") + e.what());
    }
    int np = d.n_plus(), nm = d.n_minus();
    std::vector<CubeVertex> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        CubeVertex v;
        v.mask = mask;
        v.web = base;
        for (size_t c = 0; c < n; ++c)
            if (is_double_edge(d.crossings[c], (mask >> c) & 1))
                apply_move(v.web, {MoveKind::Zip, {jl(c), jr(c)}, {mid(c), sid(c), did(c)}});
        int r = std::popcount(mask);
        v.hdeg = r - nm;
        v.qshift = r + np - 2 * nm;
        out.push_back(std::move(v));
    }
    return out;
}

FoamMovie cube_edge_movie(const PDLink& d, const CubeVertex& from, int crossing) {
    if ((from.mask >> crossing) & 1) throw InvalidMove("cube edge must flip a 0 coordinate");
    FoamMovie f;
    f.start = from.web;
    if (d.crossings.at(crossing).sign() > 0)
        f.moves.push_back({MoveKind::Zip, {jl(crossing), jr(crossing)}, {mid(crossing), sid(crossing), did(crossing)}});
    else
        f.moves.push_back({MoveKind::Unzip, {did(crossing)}, {jl(crossing), jr(crossing)}});
    return f;
}

// -------------------------------------------------------------------- complex

namespace {

// Solves A X = B over the integers; A must be unimodular up to the entries
// of B being divisible by det A.
IntMatrix solve_integer(IntMatrix A, const IntMatrix& B) {
    size_t n = A.size();
    for (size_t i = 0; i < n; ++i) A[i].insert(A[i].end(), B[i].begin(), B[i].end());
    mpz_class prev = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t r = k;
        while (r < n && A[r][k] == 0) ++r;
        if (r == n) throw NonInvertibleGram("specialized pairing matrix is singular");
        std::swap(A[r], A[k]);
        for (size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            for (size_t j = 0; j < A[i].size(); ++j) {
                if (j == k) continue;
                mpz_class t = A[k][k] * A[i][j] - A[i][k] * A[k][j];
                mpz_divexact(A[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    IntMatrix X(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = n; j < A[i].size(); ++j) {
            if (!mpz_divisible_p(A[i][j].get_mpz_t(), prev.get_mpz_t()))
                throw NonInvertibleGram("specialized map is not integral");
            X[i].push_back(A[i][j] / prev);
        }
    return X;
}

IntMatrix specialize_matrix(const RMatrix& M, const Specialization& s, bool transpose) {
    size_t r = M.size(), c = r ? M[0].size() : 0;
    IntMatrix out(transpose ? c : r, std::vector<mpz_class>(transpose ? r : c));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) (transpose ? out[j][i] : out[i][j]) = specialize(M[i][j], s);
    return out;
}

}  // namespace

ChainComplex build_complex(const PDLink& d, const Specialization& s, int jobs) {
    if (!s.groundTarget) throw NonUnitRho("homology needs a ground target");
    mpz_class rho = s.groundTarget->rho();
    if (rho != 1 && rho != -1) throw NonUnitRho("rho specializes to " + rho.get_str() + ", which is not a unit");

    auto verts = resolutions(d);
    size_t n = d.crossings.size();
    auto spaces = parallel_map<StateSpace>(verts.size(), jobs,
                                           [&](size_t k) { return state_space_basis(verts[k].web); });

    std::vector<std::pair<unsigned, int>> edges;
    for (auto& v : verts)
        for (size_t c = 0; c < n; ++c)
            if (!((v.mask >> c) & 1)) edges.push_back({v.mask, static_cast<int>(c)});
    auto maps = parallel_map<IntMatrix>(edges.size(), jobs, [&](size_t k) {
        auto [mask, c] = edges[k];
        unsigned to = mask | (1u << c);
        FoamMovie f = cube_edge_movie(d, verts[mask], c);
        RMatrix P = foam_pairing_matrix(f, spaces[mask], spaces[to]);
        return solve_integer(specialize_matrix(spaces[to].gram, s, true), specialize_matrix(P, s, false));
    });

    ChainComplex cx;
    int nm = d.n_minus();
    cx.hmin = -nm;
    size_t levels = n + 1;
    cx.qdeg.assign(levels, {});
    std::vector<size_t> offset(verts.size());
    for (size_t r = 0; r < levels; ++r)
        for (auto& v : verts) {
            if (static_cast<size_t>(std::popcount(v.mask)) != r) continue;
            offset[v.mask] = cx.qdeg[r].size();
            for (int deg : spaces[v.mask].degrees) cx.qdeg[r].push_back(v.qshift - deg);
        }
    cx.d.resize(levels - 1);
    for (size_t r = 0; r + 1 < levels; ++r)
        cx.d[r].assign(cx.qdeg[r + 1].size(), std::vector<mpz_class>(cx.qdeg[r].size()));
    for (size_t k = 0; k < edges.size(); ++k) {
        auto [mask, c] = edges[k];
        unsigned to = mask | (1u << c);
        int sign = std::popcount(mask & ((1u << c) - 1)) % 2 ? -1 : 1;
        auto& D = cx.d[std::popcount(mask)];
        const IntMatrix& M = maps[k];
        for (size_t i = 0; i < M.size(); ++i)
            for (size_t j = 0; j < M[i].size(); ++j) D[offset[to] + i][offset[mask] + j] = sign * M[i][j];
    }
    for (size_t r = 0; r + 1 < levels; ++r)
        for (size_t i = 0; i < cx.d[r].size(); ++i)
            for (size_t j = 0; j < cx.d[r][i].size(); ++j)
                if (cx.d[r][i][j] != 0 && cx.qdeg[r + 1][i] != cx.qdeg[r][j]) cx.graded = false;
    return cx;
}

bool ChainComplex::d_squared_zero() const {
    for (size_t r = 0; r + 1 < d.size(); ++r) {
        const auto &A = d[r + 1], &B = d[r];
        for (size_t i = 0; i < A.size(); ++i)
            for (size_t j = 0; j < qdeg[r].size(); ++j) {
                mpz_class acc = 0;
                for (size_t l = 0; l < B.size(); ++l) acc += A[i][l] * B[l][j];
                if (acc != 0) return false;
            }
    }
    return true;
}

// ------------------------------------------------------------------ homology

std::vector<mpz_class> smith_invariants(IntMatrix A) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<mpz_class> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (A[i][j] != 0 && (pr == rows || abs(A[i][j]) < abs(A[pr][pc]))) pr = i, pc = j;
        if (pr == rows) break;
        std::swap(A[t], A[pr]);
        for (auto& row : A) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (A[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                for (size_t j = t; j < cols; ++j) A[i][j] -= q * A[t][j];
                if (A[i][t] != 0) {
                    std::swap(A[t], A[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (A[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                for (size_t i = t; i < rows; ++i) A[i][j] -= q * A[i][t];
                if (A[t][j] != 0) {
                    for (auto& row : A) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(A[t][t]));
        ++t;
    }
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            mpz_class g = gcd(diag[i], diag[j]);
            mpz_class l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

long HomologyTable::total_rank() const {
    long r = 0;
    for (auto& [k, g] : groups) r += g.rank;
    return r;
}

std::string HomologyTable::to_tsv() const {
    std::ostringstream os;
    os << "h\tq\trank\ttorsion\n";
    for (auto& [k, g] : groups) {
        os << k.first << "\t";
        if (k.second == kUngraded) os << "*";
        else os << k.second;
        os << "\t" << g.rank << "\t";
        if (g.torsion.empty()) os << "-";
        for (size_t i = 0; i < g.torsion.size(); ++i) os << (i ? "," : "") << g.torsion[i].get_str();
        os << "\n";
    }
    return os.str();
}

nlohmann::json HomologyTable::to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (auto& [k, g] : groups) {
        nlohmann::json t = nlohmann::json::array();
        for (auto& x : g.torsion) t.push_back(x.get_str());
        nlohmann::json q = k.second == kUngraded ? nlohmann::json("*") : nlohmann::json(k.second);
        a.push_back({{"h", k.first}, {"q", q}, {"rank", g.rank}, {"torsion", t}});
    }
    return a;
}

namespace {

IntMatrix block(const IntMatrix& D, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    IntMatrix B(rows.size(), std::vector<mpz_class>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) B[i][j] = D[rows[i]][cols[j]];
    return B;
}

}  // namespace

HomologyTable homology(const ChainComplex& c) {
    size_t levels = c.qdeg.size();
    // generators per (level, q)
    std::vector<std::map<int, std::vector<size_t>>> idx(levels);
    for (size_t r = 0; r < levels; ++r)
        for (size_t i = 0; i < c.qdeg[r].size(); ++i) idx[r][c.graded ? c.qdeg[r][i] : kUngraded].push_back(i);

    std::vector<std::pair<size_t, int>> keys;
    for (size_t r = 0; r < levels; ++r)
        for (auto& [q, v] : idx[r]) keys.push_back({r, q});
    auto empty = std::vector<size_t>{};
    auto gens = [&](size_t r, int q) -> const std::vector<size_t>& {
        if (r >= levels) return empty;
        auto it = idx[r].find(q);
        return it == idx[r].end() ? empty : it->second;
    };
    auto groups = parallel_map<HomologyGroup>(keys.size(), 1, [&](size_t k) {
        auto [r, q] = keys[k];
        const auto& here = gens(r, q);
        long outRank = 0;
        if (r + 1 < levels) outRank = static_cast<long>(smith_invariants(block(c.d[r], gens(r + 1, q), here)).size());
        std::vector<mpz_class> in;
        if (r > 0) in = smith_invariants(block(c.d[r - 1], here, gens(r - 1, q)));
        HomologyGroup g;
        g.rank = static_cast<long>(here.size()) - outRank - static_cast<long>(in.size());
        for (auto& x : in)
            if (x > 1) g.torsion.push_back(x);
        return g;
    });
    HomologyTable t;
    for (size_t k = 0; k < keys.size(); ++k)
        if (groups[k].rank != 0 || !groups[k].torsion.empty())
            t.groups[{c.hmin + static_cast<int>(keys[k].first), keys[k].second}] = groups[k];
    return t;
}

LaurentPoly graded_euler(const ChainComplex& c) {
    LaurentPoly p;
    for (size_t r = 0; r < c.qdeg.size(); ++r) {
        int sign = (c.hmin + static_cast<int>(r)) % 2 ? -1 : 1;
        for (int q : c.qdeg[r]) p += LaurentPoly::monomial(q, sign);
    }
    return p;
}

// --------------------------------------------------------------- invariance

nlohmann::json ReidemeisterReport::to_json() const {
    return {{"equal", equal}, {"firstDifference", firstDifference}, {"left", left.to_json()}, {"right", right.to_json()}};
}

ReidemeisterReport reidemeister_check(const PDLink& a, const PDLink& b, const Specialization& s, int jobs) {
    ReidemeisterReport rep;
    rep.left = homology(build_complex(a, s, jobs));
    rep.right = homology(build_complex(b, s, jobs));
    rep.equal = rep.left == rep.right;
    if (!rep.equal) {
        std::set<std::pair<int, int>> keys;
        for (auto& [k, g] : rep.left.groups) keys.insert(k);
        for (auto& [k, g] : rep.right.groups) keys.insert(k);
        auto show = [](const HomologyTable& t, const std::pair<int, int>& k) {
            auto it = t.groups.find(k);
            if (it == t.groups.end()) return std::string("0");
            std::string s = "rank " + std::to_string(it->second.rank);
            for (auto& x : it->second.torsion) s += " + Z/" + x.get_str();
            return s;
        };
        for (auto& k : keys) {
            auto l = rep.left.groups.find(k), r = rep.right.groups.find(k);
            bool same = (l == rep.left.groups.end()) == (r == rep.right.groups.end()) &&
                        (l == rep.left.groups.end() || l->second == r->second);
            if (same) continue;
            std::string q = k.second == kUngraded ? "*" : std::to_string(k.second);
            rep.firstDifference = "(" + std::to_string(k.first) + "," + q + "): " + show(rep.left, k) + " vs " + show(rep.right, k);
            break;
        }
    }
    return rep;
}

namespace diagrams {

PDLink unknot() { return unlink(1); }

PDLink unlink(int n) {
    PDLink d;
    d.freeLoops = n;
    return d;
}

PDLink hopf() { return PDLink::braid_closure(2, {1, 1}); }
PDLink right_trefoil() { return PDLink::braid_closure(2, {1, 1, 1}); }
PDLink left_trefoil() { return PDLink::braid_closure(2, {-1, -1, -1}); }
PDLink figure_eight() { return PDLink::braid_closure(3, {1, -2, 1, -2}); }

std::vector<DiagramPair> reidemeister_pairs() {
    PDLink kinkPos = PDLink::braid_closure(2, {1});
    PDLink kinkNeg = PDLink::braid_closure(2, {-1});
    PDLink parallel = PDLink::braid_closure(2, {1, -1});
    return {
        {"R1+", unknot(), kinkPos},
        {"R1+ reversed", unknot(), kinkPos.reverse_component(1)},
        {"R1-", unknot(), kinkNeg},
        {"R1- reversed", unknot(), kinkNeg.reverse_component(1)},
        {"R2 parallel", unlink(2), parallel},
        {"R2 antiparallel", unlink(2), parallel.reverse_component(parallel.crossings[0].labels[0])},
        {"R2 on trefoil", right_trefoil(), PDLink::braid_closure(2, {1, 1, -1, 1, 1})},
        {"R3 positive", PDLink::braid_closure(3, {1, 2, 1}), PDLink::braid_closure(3, {2, 1, 2})},
        {"R3 mixed", PDLink::braid_closure(3, {1, 2, -1}), PDLink::braid_closure(3, {-2, 1, 2})},
    };
}

}  // namespace diagrams

}  // namespace foamcalc
