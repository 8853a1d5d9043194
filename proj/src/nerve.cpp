#include "pbg/nerve.hpp"

#include <algorithm>
#include <string>

namespace pbg {

namespace {

std::string at_level(std::size_t k, Index x) { return "k=" + std::to_string(k) + " x=" + std::to_string(x); }

// Visits all pairs when n*n <= budget, otherwise a strided subset of the
// second coordinate. Returns false when sampling was used.
template <class F>
bool for_pairs(std::size_t n, std::size_t budget, F&& f) {
    std::size_t step = 1;
    if (n * n > budget) step = (n * n + budget - 1) / budget;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x % step; y < n; y += step) f(Index(x), Index(y));
    return step == 1;
}

constexpr std::size_t kPairBudget = 4000000;

}  // namespace

ValidationReport check_simplicial(const SimplicialObject& s) {
    ValidationReport r;
    const std::size_t K = s.top();
    for (const char* c : {"maps_total", "face_face", "face_degen_lower", "face_degen_identity", "face_degen_upper",
                          "degen_degen"})
        r.declare(c);
    auto d = [&](std::size_t k, std::size_t i, Index x) { return s.faces[k][i][x]; };
    auto e = [&](std::size_t k, std::size_t j, Index x) { return s.degens[k][j][x]; };

    bool total = s.faces.size() == K + 1 && s.degens.size() == K + 1;
    for (std::size_t k = 0; total && k <= K; ++k) {
        if (k >= 1) {
            if (s.faces[k].size() != k + 1) total = false;
            for (std::size_t i = 0; total && i < s.faces[k].size(); ++i) {
                if (s.faces[k][i].size() != s.sizes[k]) total = false;
                for (Index v : s.faces[k][i])
                    if (v >= s.sizes[k - 1]) total = false;
            }
        }
        if (k < K) {
            if (s.degens[k].size() != k + 1) total = false;
            for (std::size_t j = 0; total && j < s.degens[k].size(); ++j) {
                if (s.degens[k][j].size() != s.sizes[k]) total = false;
                for (Index v : s.degens[k][j])
                    if (v >= s.sizes[k + 1]) total = false;
            }
        }
    }
    if (!total) {
        r.fail("maps_total", "face or degeneracy table has the wrong shape");
        return r;
    }

    for (std::size_t k = 0; k <= K; ++k) {
        for (Index x = 0; x < s.sizes[k]; ++x) {
            // d_i d_j = d_{j-1} d_i, i < j
            if (k >= 2)
                for (std::size_t j = 1; j <= k; ++j)
                    for (std::size_t i = 0; i < j; ++i)
                        if (d(k - 1, i, d(k, j, x)) != d(k - 1, j - 1, d(k, i, x)))
                            r.fail("face_face", at_level(k, x) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
            if (k + 1 > K) continue;
            for (std::size_t j = 0; j <= k; ++j) {
                Index y = e(k, j, x);
                if (d(k + 1, j, y) != x || d(k + 1, j + 1, y) != x)
                    r.fail("face_degen_identity", at_level(k, x) + " j=" + std::to_string(j));
                for (std::size_t i = 0; i < j; ++i)
                    if (d(k + 1, i, y) != e(k - 1, j - 1, d(k, i, x)))
                        r.fail("face_degen_lower", at_level(k, x) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
                for (std::size_t i = j + 2; i <= k + 1; ++i)
                    if (d(k + 1, i, y) != e(k - 1, j, d(k, i - 1, x)))
                        r.fail("face_degen_upper", at_level(k, x) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
                if (k + 2 > K) continue;
                // e_i e_j = e_{j+1} e_i, i <= j
                for (std::size_t i = 0; i <= j; ++i)
                    if (e(k + 1, i, y) != e(k + 1, j + 1, e(k, i, x)))
                        r.fail("degen_degen", at_level(k, x) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
            }
        }
    }
    return r;
}

SimplicialObject constant_simplicial(std::size_t n, std::size_t K) {
    SimplicialObject s;
    s.name = "constant";
    s.sizes.assign(K + 1, n);
    s.faces.resize(K + 1);
    s.degens.resize(K + 1);
    std::vector<Index> id(n);
    for (Index i = 0; i < n; ++i) id[i] = i;
    for (std::size_t k = 0; k <= K; ++k) {
        if (k >= 1) s.faces[k].assign(k + 1, id);
        if (k < K) s.degens[k].assign(k + 1, id);
    }
    return s;
}

Nerve::Nerve(GroupoidRef g, std::size_t K) : g_(std::move(g)) {
    const auto& G = *g_;
    pos_in_.assign(G.num_arrows(), kNone);
    for (Index o = 0; o < G.num_objects(); ++o) {
        const auto& in = G.arrows_into(o);
        for (std::size_t i = 0; i < in.size(); ++i) pos_in_[in[i]] = Index(i);
    }
    sizes_.push_back(G.num_objects());
    data_.emplace_back();
    offset_.emplace_back();
    if (K == 0) return;
    if (G.num_arrows() > kLevelCap) {
        capped_ = true;
        return;
    }
    sizes_.push_back(G.num_arrows());
    data_.emplace_back(G.num_arrows());
    for (Index a = 0; a < G.num_arrows(); ++a) data_[1][a] = a;
    offset_.emplace_back();
    for (std::size_t k = 2; k <= K; ++k) {
        std::size_t count = 0;
        for (std::size_t p = 0; p < sizes_[k - 1]; ++p) count += G.arrows_into(G.src(arrow(k - 1, Index(p), k - 1))).size();
        if (count > kLevelCap) {
            capped_ = true;
            return;
        }
        std::vector<Index> off(sizes_[k - 1]);
        std::vector<Index> data;
        data.reserve(count * k);
        Index running = 0;
        for (std::size_t p = 0; p < sizes_[k - 1]; ++p) {
            off[p] = running;
            const Index* pre = &data_[k - 1][p * (k - 1)];
            for (Index a : G.arrows_into(G.src(pre[k - 2]))) {
                data.insert(data.end(), pre, pre + (k - 1));
                data.push_back(a);
                ++running;
            }
        }
        sizes_.push_back(count);
        data_.push_back(std::move(data));
        offset_.push_back(std::move(off));
    }
}

std::vector<Index> Nerve::tuple(std::size_t k, Index x) const {
    if (k == 0) return {};
    const Index* p = &data_[k][std::size_t(x) * k];
    return std::vector<Index>(p, p + k);
}

Index Nerve::vertex(std::size_t k, Index x, std::size_t j) const {
    if (k == 0) return x;
    if (j == 0) return g_->tgt(arrow(k, x, 1));
    return g_->src(arrow(k, x, j));
}

Index Nerve::index_of(const std::vector<Index>& arrows) const {
    const std::size_t k = arrows.size();
    if (k == 0 || k > top()) return kNone;
    for (Index a : arrows)
        if (a >= g_->num_arrows()) return kNone;
    Index idx = arrows[0];
    for (std::size_t m = 2; m <= k; ++m) {
        if (g_->src(arrows[m - 2]) != g_->tgt(arrows[m - 1])) return kNone;
        idx = offset_[m][idx] + pos_in_[arrows[m - 1]];
    }
    return idx;
}

Index Nerve::face(std::size_t k, std::size_t i, Index x) const {
    if (k == 1) return i == 0 ? g_->src(x) : g_->tgt(x);
    auto t = tuple(k, x);
    if (i == 0) {
        t.erase(t.begin());
    } else if (i == k) {
        t.pop_back();
    } else {
        t[i - 1] = g_->comp(t[i - 1], t[i]);
        t.erase(t.begin() + std::ptrdiff_t(i));
    }
    return index_of(t);
}

Index Nerve::degen(std::size_t k, std::size_t j, Index x) const {
    if (k == 0) return g_->unit(x);
    auto t = tuple(k, x);
    t.insert(t.begin() + std::ptrdiff_t(j), g_->unit(vertex(k, x, j)));
    return index_of(t);
}

SimplicialObject Nerve::simplicial() const {
    SimplicialObject s;
    s.name = "N(" + g_->name() + ")";
    s.sizes = sizes_;
    const std::size_t K = top();
    s.faces.resize(K + 1);
    s.degens.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        if (k >= 1) {
            s.faces[k].assign(k + 1, std::vector<Index>(sizes_[k]));
            for (std::size_t i = 0; i <= k; ++i)
                for (Index x = 0; x < sizes_[k]; ++x) s.faces[k][i][x] = face(k, i, x);
        }
        if (k < K) {
            s.degens[k].assign(k + 1, std::vector<Index>(sizes_[k]));
            for (std::size_t j = 0; j <= k; ++j)
                for (Index x = 0; x < sizes_[k]; ++x) s.degens[k][j][x] = degen(k, j, x);
        }
    }
    return s;
}

Index pair_nerve_index(const Nerve& n, const std::vector<Index>& vertices) {
    const std::size_t np = n.groupoid().num_objects();
    if (vertices.size() == 1) return vertices[0];
    std::vector<Index> arrows;
    for (std::size_t m = 1; m < vertices.size(); ++m) arrows.push_back(Index(vertices[m - 1] * np + vertices[m]));
    return n.index_of(arrows);
}

ValidationReport check_pair_nerve_faces(const std::vector<std::string>& x, std::size_t K) {
    ValidationReport r;
    r.declare("level_size");
    r.declare("hat_deletion");
    Nerve n(share(pair_groupoid(x)), K);
    const std::size_t np = x.size();
    std::size_t expect = np;
    for (std::size_t k = 0; k <= n.top(); ++k, expect *= np) {
        if (n.size(k) != expect) r.fail("level_size", "k=" + std::to_string(k));
        if (k == 0) continue;
        for (Index t = 0; t < n.size(k); ++t) {
            std::vector<Index> v;
            for (std::size_t j = 0; j <= k; ++j) v.push_back(n.vertex(k, t, j));
            if (pair_nerve_index(n, v) != t) r.fail("hat_deletion", at_level(k, t) + " vertex encoding");
            for (std::size_t i = 0; i <= k; ++i) {
                auto w = v;
                w.erase(w.begin() + std::ptrdiff_t(i));
                if (pair_nerve_index(n, w) != n.face(k, i, t))
                    r.fail("hat_deletion", at_level(k, t) + " i=" + std::to_string(i));
            }
        }
    }
    return r;
}

TwoGroupNerveModels::TwoGroupNerveModels(TwoGroupRef tg, std::size_t K) : tg_(std::move(tg)), nerve_(tg_->groupoid(), K) {
    const auto& T = *tg_;
    ab_.resize(top() + 1);
    ba_.resize(top() + 1);
    for (std::size_t k = 0; k <= top(); ++k) {
        const std::size_t n = nerve_.size(k);
        ab_[k].resize(n);
        for (Index x = 0; x < n; ++x) {
            if (k == 0) {
                ab_[k][x] = x;
                continue;
            }
            std::vector<Index> hs(k);
            for (std::size_t j = 1; j <= k; ++j) hs[j - 1] = T.h_of(nerve_.arrow(k, x, k + 1 - j));
            ab_[k][x] = encode(hs, T.g_of(nerve_.arrow(k, x, k)));
        }
        // The inverse is built from its own formula so bijectivity is a real check.
        std::size_t nb = T.G().order();
        for (std::size_t j = 0; j < k; ++j) nb *= T.H().order();
        ba_[k].resize(nb);
        for (Index y = 0; y < nb; ++y) {
            if (k == 0) {
                ba_[k][y] = y;
                continue;
            }
            auto [hs, g] = decode(k, y);
            std::vector<Index> t(k);
            Index cur = g;
            for (std::size_t m = k; m >= 1; --m) {
                t[m - 1] = T.arrow(hs[k - m], cur);
                cur = T.t(t[m - 1]);
            }
            ba_[k][y] = nerve_.index_of(t);
        }
    }
}

Index TwoGroupNerveModels::encode(const std::vector<Index>& hs, Index g) const {
    std::size_t x = 0;
    for (std::size_t m = hs.size(); m >= 1; --m) x = x * tg_->H().order() + hs[m - 1];
    return Index(x * tg_->G().order() + g);
}

std::pair<std::vector<Index>, Index> TwoGroupNerveModels::decode(std::size_t k, Index x) const {
    std::size_t v = x;
    Index g = Index(v % tg_->G().order());
    v /= tg_->G().order();
    std::vector<Index> hs(k);
    for (std::size_t m = 0; m < k; ++m) {
        hs[m] = Index(v % tg_->H().order());
        v /= tg_->H().order();
    }
    return {std::move(hs), g};
}

Index TwoGroupNerveModels::b_to_c(std::size_t k, Index x) const {
    const auto& H = tg_->H();
    auto [hs, g] = decode(k, x);
    for (std::size_t j = 1; j < k; ++j) hs[j] = H.mul(hs[j], hs[j - 1]);
    return encode(hs, g);
}

Index TwoGroupNerveModels::c_to_b(std::size_t k, Index x) const {
    const auto& H = tg_->H();
    auto [bold, g] = decode(k, x);
    auto hs = bold;
    for (std::size_t j = 1; j < k; ++j) hs[j] = H.mul(bold[j], H.inv(bold[j - 1]));
    return encode(hs, g);
}

Index TwoGroupNerveModels::mul_a(std::size_t k, Index x, Index y) const {
    if (k == 0) return tg_->G().mul(x, y);
    std::vector<Index> t(k);
    for (std::size_t m = 1; m <= k; ++m) t[m - 1] = tg_->mul(nerve_.arrow(k, x, m), nerve_.arrow(k, y, m));
    return nerve_.index_of(t);
}

Index TwoGroupNerveModels::mul_b(std::size_t k, Index x, Index y) const {
    Index z = mul_a(k, ba_[k][x], ba_[k][y]);
    return z == kNone ? kNone : ab_[k][z];
}

Index TwoGroupNerveModels::mul_c(std::size_t k, Index x, Index y) const {
    const auto& cm = tg_->crossed_module();
    auto [a, g] = decode(k, x);
    auto [b, g2] = decode(k, y);
    for (std::size_t j = 0; j < k; ++j) a[j] = cm.H->mul(a[j], cm.act(g, b[j]));
    return encode(a, cm.G->mul(g, g2));
}

Index TwoGroupNerveModels::face_b(std::size_t k, std::size_t i, Index x) const {
    if (i == 0 || i == k) return ab_[k - 1][nerve_.face(k, k - i, ba_[k][x])];
    auto [hs, g] = decode(k, x);
    hs[i - 1] = tg_->H().mul(hs[i], hs[i - 1]);
    hs.erase(hs.begin() + std::ptrdiff_t(i));
    return encode(hs, g);
}

Index TwoGroupNerveModels::degen_b(std::size_t k, std::size_t j, Index x) const {
    auto [hs, g] = decode(k, x);
    hs.insert(hs.begin() + std::ptrdiff_t(j), tg_->H().unit());
    return encode(hs, g);
}

Index TwoGroupNerveModels::face_c(std::size_t k, std::size_t i, Index x) const {
    if (i == 0 || i == k) return b_to_c(k - 1, face_b(k, i, c_to_b(k, x)));
    auto [bold, g] = decode(k, x);
    bold.erase(bold.begin() + std::ptrdiff_t(i - 1));
    return encode(bold, g);
}

Index TwoGroupNerveModels::face_c_closed(std::size_t k, std::size_t i, Index x) const {
    if (i != 0 && i != k) return face_c(k, i, x);
    const auto& cm = tg_->crossed_module();
    auto [bold, g] = decode(k, x);
    if (i == k) {
        bold.pop_back();
        return encode(bold, g);
    }
    Index h1 = bold[0];
    std::vector<Index> out(k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) out[j] = cm.H->mul(bold[j + 1], cm.H->inv(h1));
    return encode(out, cm.G->mul(cm.d(h1), g));
}

Index TwoGroupNerveModels::degen_c(std::size_t k, std::size_t j, Index x) const {
    auto [bold, g] = decode(k, x);
    Index dup = j == 0 ? tg_->H().unit() : bold[j - 1];
    bold.insert(bold.begin() + std::ptrdiff_t(j), dup);
    return encode(bold, g);
}

namespace {

template <class Face, class Degen>
SimplicialObject tabulate(std::string name, const std::vector<std::size_t>& sizes, Face face, Degen degen) {
    SimplicialObject s;
    s.name = std::move(name);
    s.sizes = sizes;
    const std::size_t K = sizes.size() - 1;
    s.faces.resize(K + 1);
    s.degens.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        if (k >= 1) {
            s.faces[k].assign(k + 1, std::vector<Index>(sizes[k]));
            for (std::size_t i = 0; i <= k; ++i)
                for (Index x = 0; x < sizes[k]; ++x) s.faces[k][i][x] = face(k, i, x);
        }
        if (k < K) {
            s.degens[k].assign(k + 1, std::vector<Index>(sizes[k]));
            for (std::size_t j = 0; j <= k; ++j)
                for (Index x = 0; x < sizes[k]; ++x) s.degens[k][j][x] = degen(k, j, x);
        }
    }
    return s;
}

}  // namespace

SimplicialObject TwoGroupNerveModels::simplicial_b() const {
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k <= top(); ++k) sizes.push_back(ba_[k].size());
    return tabulate(
        "B", sizes, [&](std::size_t k, std::size_t i, Index x) { return face_b(k, i, x); },
        [&](std::size_t k, std::size_t j, Index x) { return degen_b(k, j, x); });
}

SimplicialObject TwoGroupNerveModels::simplicial_c() const {
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k <= top(); ++k) sizes.push_back(ba_[k].size());
    return tabulate(
        "C", sizes, [&](std::size_t k, std::size_t i, Index x) { return face_c(k, i, x); },
        [&](std::size_t k, std::size_t j, Index x) { return degen_c(k, j, x); });
}

ValidationReport TwoGroupNerveModels::verify() const {
    ValidationReport r;
    for (const char* c : {"level_size", "A_to_B_bijective", "B_to_C_bijective", "A_closed", "A_to_C_hom",
                          "inner_faces_AB", "inner_faces_BC", "degeneracies_AB", "degeneracies_BC",
                          "outer_faces_C_closed", "faces_hom_C"})
        r.declare(c);
    bool sampled = false;
    json sizes = json::array();
    for (std::size_t k = 0; k <= top(); ++k) {
        const std::size_t n = nerve_.size(k);
        sizes.push_back(n);
        if (n != ba_[k].size()) {
            r.fail("level_size", "k=" + std::to_string(k));
            continue;
        }
        std::vector<char> seen(n, 0);
        for (Index x = 0; x < n; ++x) {
            Index y = ab_[k][x];
            if (seen[y] || ba_[k][y] != x) r.fail("A_to_B_bijective", at_level(k, x));
            seen[y] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<Index> toc(n);
        for (Index y = 0; y < n; ++y) {
            Index c = b_to_c(k, y);
            if (seen[c] || c_to_b(k, c) != y) r.fail("B_to_C_bijective", at_level(k, y));
            seen[c] = 1;
            toc[y] = c;
        }
        // A element x -> C element
        std::vector<Index> ac(n);
        for (Index x = 0; x < n; ++x) ac[x] = toc[ab_[k][x]];
        sampled |= !for_pairs(n, kPairBudget, [&](Index x, Index y) {
            Index z = mul_a(k, x, y);
            if (z == kNone) {
                r.fail("A_closed", at_level(k, x) + " y=" + std::to_string(y));
                return;
            }
            if (ac[z] != mul_c(k, ac[x], ac[y])) r.fail("A_to_C_hom", at_level(k, x) + " y=" + std::to_string(y));
        });
        if (k >= 1) {
            for (Index x = 0; x < n; ++x) {
                Index b = ab_[k][x];
                for (std::size_t i = 1; i < k; ++i) {
                    if (ab_[k - 1][nerve_.face(k, k - i, x)] != face_b(k, i, b))
                        r.fail("inner_faces_AB", at_level(k, x) + " i=" + std::to_string(i));
                    if (toc.size() && b_to_c(k - 1, face_b(k, i, b)) != face_c(k, i, toc[b]))
                        r.fail("inner_faces_BC", at_level(k, x) + " i=" + std::to_string(i));
                }
                for (std::size_t i : {std::size_t(0), k})
                    if (face_c(k, i, toc[b]) != face_c_closed(k, i, toc[b]))
                        r.fail("outer_faces_C_closed", at_level(k, x) + " i=" + std::to_string(i));
            }
            sampled |= !for_pairs(n, kPairBudget / (k + 1), [&](Index x, Index y) {
                Index xy = mul_c(k, x, y);
                for (std::size_t i = 0; i <= k; ++i)
                    if (face_c(k, i, xy) != mul_c(k - 1, face_c(k, i, x), face_c(k, i, y)))
                        r.fail("faces_hom_C", at_level(k, x) + " y=" + std::to_string(y) + " i=" + std::to_string(i));
            });
        }
        if (k < top()) {
            for (Index x = 0; x < n; ++x) {
                Index b = ab_[k][x];
                for (std::size_t j = 0; j <= k; ++j) {
                    if (ab_[k + 1][nerve_.degen(k, k - j, x)] != degen_b(k, j, b))
                        r.fail("degeneracies_AB", at_level(k, x) + " j=" + std::to_string(j));
                    if (b_to_c(k + 1, degen_b(k, j, b)) != degen_c(k, j, toc[b]))
                        r.fail("degeneracies_BC", at_level(k, x) + " j=" + std::to_string(j));
                }
            }
        }
    }
    r.merge(check_simplicial(simplicial_a()), "A");
    r.merge(check_simplicial(simplicial_b()), "B");
    r.merge(check_simplicial(simplicial_c()), "C");
    r.note("level_sizes", sizes);
    r.note("pairs_sampled", sampled);
    r.note("model_B_law", "transport of the coordinatewise law along (a_1..a_k) -> (h_k..h_1, g)");
    if (top() >= 2) {
        // A sample product in model B at level 2, for the record.
        const std::size_t n2 = ba_[2].size();
        Index x = Index(n2 - 1), y = Index(n2 / 2);
        auto show = [&](Index v) {
            auto [hs, g] = decode(2, v);
            return "(" + tg_->H().label(hs[1]) + "," + tg_->H().label(hs[0]) + "," + tg_->G().label(g) + ")";
        };
        r.note("model_B_sample", show(x) + "*" + show(y) + "=" + show(mul_b(2, x, y)));
    }
    if (nerve_.capped()) r.note("capped_at", top());
    return r;
}

PBNerve::PBNerve(const PBGroupoid& p, std::size_t K)
    : p_(&p), np_(p.action.target, K), ng_(p.action.tg->groupoid(), K), nm_(p.base, K) {
    // All three must share a top level; rebuild at the smallest.
    std::size_t top = std::min({np_.top(), ng_.top(), nm_.top()});
    if (top < K && (np_.top() != top || ng_.top() != top || nm_.top() != top)) {
        np_ = Nerve(p.action.target, top);
        ng_ = Nerve(p.action.tg->groupoid(), top);
        nm_ = Nerve(p.base, top);
    }
}

Index PBNerve::act(std::size_t k, Index u, Index x) const {
    if (k == 0) return p_->action.obj(u, x);
    std::vector<Index> t(k);
    for (std::size_t m = 1; m <= k; ++m) t[m - 1] = p_->action.arr(ng_.arrow(k, u, m), np_.arrow(k, x, m));
    Index r = np_.index_of(t);
    if (r == kNone) raise(ErrorKind::IllDefined, "slotwise action leaves the nerve at level " + std::to_string(k));
    return r;
}

Index PBNerve::proj(std::size_t k, Index x) const {
    if (k == 0) return p_->proj.obj_map[x];
    std::vector<Index> t(k);
    for (std::size_t m = 1; m <= k; ++m) t[m - 1] = p_->proj.arr_map[np_.arrow(k, x, m)];
    return nm_.index_of(t);
}

Index PBNerve::gmul(std::size_t k, Index u, Index v) const {
    const auto& T = p_->tg();
    if (k == 0) return T.G().mul(u, v);
    std::vector<Index> t(k);
    for (std::size_t m = 1; m <= k; ++m) t[m - 1] = T.mul(ng_.arrow(k, u, m), ng_.arrow(k, v, m));
    return ng_.index_of(t);
}

Index PBNerve::ginv(std::size_t k, Index u) const {
    const auto& T = p_->tg();
    if (k == 0) return T.G().inv(u);
    std::vector<Index> t(k);
    for (std::size_t m = 1; m <= k; ++m) t[m - 1] = T.arrows_group()->inv(ng_.arrow(k, u, m));
    return ng_.index_of(t);
}

Index PBNerve::gunit(std::size_t k) const {
    const auto& T = p_->tg();
    if (k == 0) return T.G().unit();
    return ng_.index_of(std::vector<Index>(k, T.arrows_group()->unit()));
}

ValidationReport PBNerve::verify() const {
    ValidationReport r;
    json levels = json::array();
    bool sampled = false;
    for (std::size_t k = 0; k <= top(); ++k) {
        const std::string pre = "level" + std::to_string(k) + ".";
        for (const char* c : {"action_unit", "action_compat", "free", "proj_invariant", "fiber_is_orbit", "count",
                              "faces_equivariant", "faces_over_base", "degens_equivariant", "degens_over_base"})
            r.declare(pre + c);
        const std::size_t nP = np_.size(k), nG = ng_.size(k), nM = nm_.size(k);
        levels.push_back({{"k", k}, {"P", nP}, {"G", nG}, {"M", nM}});
        const Index e = gunit(k);
        std::vector<std::size_t> fiber(nM, 0);
        for (Index x = 0; x < nP; ++x) {
            if (act(k, e, x) != x) r.fail(pre + "action_unit", at_level(k, x));
            Index b = proj(k, x);
            if (b == kNone) {
                r.fail(pre + "proj_invariant", at_level(k, x) + " projects off the base nerve");
                continue;
            }
            ++fiber[b];
            for (Index u = 0; u < nG; ++u) {
                Index y = act(k, u, x);
                if (u != e && y == x) r.fail(pre + "free", at_level(k, x) + " u=" + std::to_string(u));
                if (proj(k, y) != b) r.fail(pre + "proj_invariant", at_level(k, x) + " u=" + std::to_string(u));
            }
        }
        for (Index b = 0; b < nM; ++b)
            if (fiber[b] != nG) r.fail(pre + "fiber_is_orbit", "k=" + std::to_string(k) + " base=" + std::to_string(b));
        if (nP != nG * nM) r.fail(pre + "count", std::to_string(nP) + " != " + std::to_string(nG) + "*" + std::to_string(nM));
        // (uv).x = u.(v.x) on a budget of triples
        const std::size_t budget = kPairBudget / std::max<std::size_t>(1, nP);
        sampled |= !for_pairs(nG, std::max<std::size_t>(budget, nG), [&](Index u, Index v) {
            Index uv = gmul(k, u, v);
            for (Index x = 0; x < nP; ++x)
                if (act(k, uv, x) != act(k, u, act(k, v, x)))
                    r.fail(pre + "action_compat", at_level(k, x) + " u=" + std::to_string(u) + " v=" + std::to_string(v));
        });
        for (Index x = 0; x < nP; ++x) {
            Index b = proj(k, x);
            for (Index u = 0; u < nG; ++u) {
                Index y = act(k, u, x);
                if (k >= 1)
                    for (std::size_t i = 0; i <= k; ++i)
                        if (np_.face(k, i, y) != act(k - 1, ng_.face(k, i, u), np_.face(k, i, x)))
                            r.fail(pre + "faces_equivariant", at_level(k, x) + " u=" + std::to_string(u));
                if (k < top())
                    for (std::size_t j = 0; j <= k; ++j)
                        if (np_.degen(k, j, y) != act(k + 1, ng_.degen(k, j, u), np_.degen(k, j, x)))
                            r.fail(pre + "degens_equivariant", at_level(k, x) + " u=" + std::to_string(u));
            }
            if (b == kNone) continue;
            if (k >= 1)
                for (std::size_t i = 0; i <= k; ++i)
                    if (proj(k - 1, np_.face(k, i, x)) != nm_.face(k, i, b))
                        r.fail(pre + "faces_over_base", at_level(k, x));
            if (k < top())
                for (std::size_t j = 0; j <= k; ++j)
                    if (proj(k + 1, np_.degen(k, j, x)) != nm_.degen(k, j, b))
                        r.fail(pre + "degens_over_base", at_level(k, x));
        }
    }
    r.merge(check_simplicial(np_.simplicial()), "P");
    r.merge(check_simplicial(ng_.simplicial()), "G");
    r.merge(check_simplicial(nm_.simplicial()), "M");
    r.note("levels", levels);
    r.note("triples_sampled", sampled);
    return r;
}

ValidationReport nerve_pb_report(const PBGroupoid& p, std::size_t K) {
    PBNerve n(p, K);
    auto r = n.verify();
    for (std::size_t k = 0; k <= n.top(); ++k) {
        const std::string c = "level" + std::to_string(k) + ".free";
        if (!r.passed(c)) raise(ErrorKind::NotFreeAtLevel, "level " + std::to_string(k) + ": " + r.first_failure());
    }
    return r;
}

ValidationReport partial_quotient_nerve(const PBGroupoid& p, std::size_t K) {
    ValidationReport r;
    auto pq = partial_quotient(p);
    const auto& T = p.tg();
    const auto& A = p.action;
    Nerve NP(A.target, K), NQ(pq.groupoid, K);
    const std::size_t top = std::min(NP.top(), NQ.top());
    json levels = json::array();

    // cls[k][x]: class id of x under the diagonal G action; img[k][c]: tuple in N(Q).
    std::vector<std::vector<Index>> cls(top + 1), img(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
        const std::string pre = "level" + std::to_string(k) + ".";
        for (const char* c : {"well_typed", "well_defined", "bijective"}) r.declare(pre + c);
        const std::size_t n = NP.size(k);
        auto diag = [&](Index g, Index x) -> Index {
            if (k == 0) return A.obj(g, x);
            std::vector<Index> t(k);
            for (std::size_t m = 1; m <= k; ++m) t[m - 1] = A.arr(T.e(g), NP.arrow(k, x, m));
            Index y = NP.index_of(t);
            if (y == kNone) raise(ErrorKind::IllDefined, "diagonal action leaves nerve level " + std::to_string(k));
            return y;
        };
        auto tilde = [&](Index x) -> Index {
            if (k == 0) return pq.Q.obj_map[x];
            std::vector<Index> t(k);
            for (std::size_t m = 1; m <= k; ++m) t[m - 1] = pq.Q.arr_map[NP.arrow(k, x, m)];
            return NQ.index_of(t);
        };
        cls[k].assign(n, kNone);
        Index nc = 0;
        for (Index x = 0; x < n; ++x) {
            if (cls[k][x] != kNone) continue;
            Index im = tilde(x);
            if (im == kNone) r.fail(pre + "well_typed", at_level(k, x));
            img[k].push_back(im);
            for (Index g = 0; g < T.G().order(); ++g) {
                Index y = diag(g, x);
                cls[k][y] = nc;
                if (tilde(y) != im) r.fail(pre + "well_defined", at_level(k, y));
            }
            ++nc;
        }
        std::vector<char> hit(NQ.size(k), 0);
        for (Index c = 0; c < nc; ++c) {
            Index im = img[k][c];
            if (im == kNone) continue;
            if (hit[im]) r.fail(pre + "bijective", "two classes over quotient tuple " + std::to_string(im));
            hit[im] = 1;
        }
        if (nc != NQ.size(k))
            r.fail(pre + "bijective", std::to_string(nc) + " classes vs " + std::to_string(NQ.size(k)) + " quotient tuples");
        levels.push_back({{"k", k}, {"nerve", n}, {"classes", nc}, {"quotient", NQ.size(k)}});
    }
    for (std::size_t k = 0; k <= top; ++k) {
        const std::string pre = "level" + std::to_string(k) + ".";
        for (const char* c : {"boundary_well_defined", "face_square", "degen_square"}) r.declare(pre + c);
        std::vector<std::vector<Index>> dcls(k + 1, std::vector<Index>(img[k].size(), kNone));
        std::vector<std::vector<Index>> ecls(k + 1, std::vector<Index>(img[k].size(), kNone));
        for (Index x = 0; x < NP.size(k); ++x) {
            Index c = cls[k][x];
            if (k >= 1)
                for (std::size_t i = 0; i <= k; ++i) {
                    Index dc = cls[k - 1][NP.face(k, i, x)];
                    if (dcls[i][c] == kNone) {
                        dcls[i][c] = dc;
                        if (img[k][c] != kNone && img[k - 1][dc] != NQ.face(k, i, img[k][c]))
                            r.fail(pre + "face_square", at_level(k, x) + " i=" + std::to_string(i));
                    } else if (dcls[i][c] != dc) {
                        r.fail(pre + "boundary_well_defined", at_level(k, x) + " i=" + std::to_string(i));
                    }
                }
            if (k < top)
                for (std::size_t j = 0; j <= k; ++j) {
                    Index ec = cls[k + 1][NP.degen(k, j, x)];
                    if (ecls[j][c] == kNone) {
                        ecls[j][c] = ec;
                        if (img[k][c] != kNone && img[k + 1][ec] != NQ.degen(k, j, img[k][c]))
                            r.fail(pre + "degen_square", at_level(k, x) + " j=" + std::to_string(j));
                    } else if (ecls[j][c] != ec) {
                        r.fail(pre + "boundary_well_defined", at_level(k, x) + " j=" + std::to_string(j));
                    }
                }
        }
    }
    r.merge(check_simplicial(NQ.simplicial()), "quotient_nerve");
    r.note("levels", levels);
    return r;
}

}  // namespace pbg
