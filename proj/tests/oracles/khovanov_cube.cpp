#include "oracles/khovanov_cube.hpp"

#include <bit>
#include <functional>
#include <numeric>
#include <set>

namespace oracle {

using foamcalc::LaurentPoly;
using foamcalc::PDLink;

namespace {

struct Smoothing {
    std::vector<int> circleOf;  // label index -> circle
    int circles = 0;
};

// 0-smoothing joins a-b and c-d, the 1-smoothing a-d and b-c.
Smoothing smooth(const PDLink& d, unsigned mask) {
    std::map<int, int> index;
    for (auto& c : d.crossings)
        for (int l : c.labels) index.emplace(l, static_cast<int>(index.size()));
    std::vector<int> parent(index.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto join = [&](int a, int b) { parent[find(index[a])] = find(index[b]); };
    for (size_t k = 0; k < d.crossings.size(); ++k) {
        auto& l = d.crossings[k].labels;
        if ((mask >> k) & 1) {
            join(l[0], l[3]);
            join(l[1], l[2]);
        } else {
            join(l[0], l[1]);
            join(l[2], l[3]);
        }
    }
    Smoothing s;
    std::map<int, int> ids;
    for (size_t i = 0; i < parent.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (!ids.count(r)) ids[r] = s.circles++;
        s.circleOf.push_back(ids[r]);
    }
    s.circles += d.freeLoops;
    return s;
}

int label_circle(const PDLink& d, const Smoothing& s, int label) {
    std::map<int, int> index;
    for (auto& c : d.crossings)
        for (int l : c.labels) index.emplace(l, static_cast<int>(index.size()));
    return s.circleOf[index.at(label)];
}

// Rank over Q by fraction elimination, or over F_2 when mod2.
long matrix_rank(std::vector<std::vector<mpq_class>> A, bool mod2) {
    if (mod2)
        for (auto& row : A)
            for (auto& x : row) {
                mpz_class z = x.get_num() % 2;
                x = z == 0 ? 0 : 1;
            }
    long rank = 0;
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t p = rank;
        while (p < rows && A[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[rank]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == static_cast<size_t>(rank) || A[i][c] == 0) continue;
            mpq_class f = A[i][c] / A[rank][c];
            for (size_t j = c; j < cols; ++j) {
                A[i][j] -= f * A[rank][j];
                if (mod2) {
                    mpz_class z = A[i][j].get_num() % 2;
                    A[i][j] = z == 0 ? 0 : 1;
                }
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int smoothing_circles(const PDLink& d, unsigned mask) { return smooth(d, mask).circles; }

LaurentPoly bracket(const PDLink& d) {
    size_t n = d.crossings.size();
    int np = d.n_plus(), nm = d.n_minus();
    LaurentPoly sum;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int r = std::popcount(mask);
        int h = r - nm;
        LaurentPoly term = LaurentPoly::monomial(r + np - 2 * nm, h % 2 ? -1 : 1) *
                           LaurentPoly::quantum_two().pow(smooth(d, mask).circles);
        sum += term;
    }
    return sum;
}

CubeRanks khovanov_cube_ranks(const PDLink& d) {
    size_t n = d.crossings.size();
    int np = d.n_plus(), nm = d.n_minus();
    std::vector<Smoothing> sm;
    for (unsigned mask = 0; mask < (1u << n); ++mask) sm.push_back(smooth(d, mask));

    // generator = (mask, bits over circles; bit set = v-)
    struct Gen {
        unsigned mask, bits;
        int q;
    };
    std::vector<std::vector<Gen>> level(n + 1);
    std::map<std::pair<unsigned, unsigned>, size_t> where;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int r = std::popcount(mask), k = sm[mask].circles;
        for (unsigned bits = 0; bits < (1u << k); ++bits) {
            int minus = std::popcount(bits);
            where[{mask, bits}] = level[r].size();
            level[r].push_back({mask, bits, (k - minus) - minus + r + np - 2 * nm});
        }
    }

    auto circle_map = [&](unsigned from, unsigned to) {
        // images of the circles of `from` in `to`, via any label on them
        std::vector<int> img(sm[from].circles, -1);
        for (auto& c : d.crossings)
            for (int l : c.labels) img[label_circle(d, sm[from], l)] = label_circle(d, sm[to], l);
        int base = sm[from].circles - d.freeLoops, baseTo = sm[to].circles - d.freeLoops;
        for (int f = 0; f < d.freeLoops; ++f) img[base + f] = baseTo + f;
        return img;
    };

    // differential from level r to r+1 as a dense rational matrix
    std::vector<std::vector<std::vector<mpq_class>>> D(n);
    for (size_t r = 0; r < n; ++r) {
        D[r].assign(level[r + 1].size(), std::vector<mpq_class>(level[r].size()));
        for (size_t j = 0; j < level[r].size(); ++j) {
            auto g = level[r][j];
            for (size_t k = 0; k < n; ++k) {
                if ((g.mask >> k) & 1) continue;
                unsigned to = g.mask | (1u << k);
                int sign = std::popcount(g.mask & ((1u << k) - 1)) % 2 ? -1 : 1;
                auto img = circle_map(g.mask, to);
                int kf = sm[g.mask].circles, kt = sm[to].circles;
                auto add = [&](unsigned bits) { D[r][where[{to, bits}]][j] += sign; };
                if (kt == kf - 1) {  // merge
                    unsigned out = 0;
                    int minus = 0;
                    for (int c = 0; c < kf; ++c)
                        if ((g.bits >> c) & 1) {
                            ++minus;
                            out |= 1u << img[c];
                        }
                    if (minus <= 1 || [&] {  // the two merged circles both v- gives 0
                            std::map<int, int> cnt;
                            for (int c = 0; c < kf; ++c)
                                if ((g.bits >> c) & 1) ++cnt[img[c]];
                            for (auto& [t, m] : cnt)
                                if (m > 1) return false;
                            return true;
                        }())
                        add(out);
                } else {  // split: one circle of `from` becomes two of `to`
                    std::vector<int> hit(kt, 0);
                    for (int c = 0; c < kf; ++c) ++hit[img[c]];
                    int fresh = -1, split = -1;
                    for (int t = 0; t < kt; ++t)
                        if (hit[t] == 0) fresh = t;
                    // circles of `to` that meet the split circle: its image and the fresh one
                    unsigned out = 0;
                    for (int c = 0; c < kf; ++c)
                        if ((g.bits >> c) & 1) out |= 1u << img[c];
                    for (int c = 0; c < kf; ++c) {
                        // the split circle is the one whose labels land on two circles
                        std::set<int> lands;
                        for (auto& cr : d.crossings)
                            for (int l : cr.labels)
                                if (label_circle(d, sm[g.mask], l) == c) lands.insert(label_circle(d, sm[to], l));
                        if (lands.size() == 2) split = c;
                    }
                    int a = img[split], b = fresh;
                    if ((g.bits >> split) & 1) {
                        add(out | (1u << b));
                    } else {
                        add(out | (1u << b));
                        add(out | (1u << a));
                    }
                }
            }
        }
    }

    CubeRanks res;
    for (size_t r = 0; r <= n; ++r) res.chainRank[static_cast<int>(r) - nm] = static_cast<long>(level[r].size());
    std::set<int> qs;
    for (auto& lv : level)
        for (auto& g : lv) qs.insert(g.q);
    for (bool mod2 : {false, true})
        for (int q : qs)
            for (size_t r = 0; r <= n; ++r) {
                std::vector<size_t> here, up, down;
                for (size_t i = 0; i < level[r].size(); ++i)
                    if (level[r][i].q == q) here.push_back(i);
                if (here.empty()) continue;
                auto sub = [&](const std::vector<std::vector<mpq_class>>& M, const std::vector<size_t>& rows,
                               const std::vector<size_t>& cols) {
                    std::vector<std::vector<mpq_class>> B(rows.size(), std::vector<mpq_class>(cols.size()));
                    for (size_t i = 0; i < rows.size(); ++i)
                        for (size_t j = 0; j < cols.size(); ++j) B[i][j] = M[rows[i]][cols[j]];
                    return B;
                };
                long out = 0, in = 0;
                if (r < n) {
                    for (size_t i = 0; i < level[r + 1].size(); ++i)
                        if (level[r + 1][i].q == q) up.push_back(i);
                    out = matrix_rank(sub(D[r], up, here), mod2);
                }
                if (r > 0) {
                    for (size_t i = 0; i < level[r - 1].size(); ++i)
                        if (level[r - 1][i].q == q) down.push_back(i);
                    in = matrix_rank(sub(D[r - 1], here, down), mod2);
                }
                long dim = static_cast<long>(here.size()) - out - in;
                if (dim) (mod2 ? res.overF2 : res.overQ)[{static_cast<int>(r) - nm, q}] = dim;
            }
    return res;
}

}  // namespace oracle
