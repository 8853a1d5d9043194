#include "pbg/transformations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace pbg {

namespace {

std::string wit(const std::string& what, std::size_t a) { return what + "=" + std::to_string(a); }

// Mixed-radix odometer; returns false after the last assignment.
bool advance(std::vector<Index>& digits, std::size_t radix) {
    for (auto& d : digits) {
        if (++d < radix) return true;
        d = 0;
    }
    return false;
}

using LocalMap = std::vector<std::pair<Index, Index>>;

}  // namespace

std::string big_product(const std::vector<std::size_t>& factors) {
    std::vector<std::uint64_t> limbs{1};  // base 1e9, little endian
    constexpr std::uint64_t kBase = 1000000000ULL;
    for (std::size_t f : factors) {
        std::uint64_t carry = 0;
        for (auto& l : limbs) {
            std::uint64_t v = l * f + carry;
            l = v % kBase;
            carry = v / kBase;
        }
        while (carry) {
            limbs.push_back(carry % kBase);
            carry /= kBase;
        }
    }
    std::string s = std::to_string(limbs.back());
    for (std::size_t i = limbs.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

LevelBundle::LevelBundle(const PBGroupoid& p, std::size_t k, std::size_t carrier_cap) : k_(k) {
    PBNerve n(p, k);
    if (n.top() < k) raise(ErrorKind::CarrierTooLarge, "nerve level " + std::to_string(k) + " exceeds the level cap");
    nP_ = n.P().size(k);
    nG_ = n.G().size(k);
    nM_ = n.M().size(k);
    if (nP_ > carrier_cap)
        raise(ErrorKind::CarrierTooLarge,
              "level " + std::to_string(k) + " carrier has " + std::to_string(nP_) + " points, cap " + std::to_string(carrier_cap));
    np_ = std::make_shared<Nerve>(n.P());

    act_.resize(nG_ * nP_);
    for (Index u = 0; u < nG_; ++u)
        for (Index x = 0; x < nP_; ++x) act_[std::size_t(u) * nP_ + x] = n.act(k, u, x);
    mul_.resize(nG_ * nG_);
    inv_.resize(nG_);
    for (Index u = 0; u < nG_; ++u) {
        for (Index v = 0; v < nG_; ++v) mul_[std::size_t(u) * nG_ + v] = n.gmul(k, u, v);
        inv_[u] = n.ginv(k, u);
    }
    unit_ = n.gunit(k);
    proj_.resize(nP_);
    for (Index x = 0; x < nP_; ++x) proj_[x] = n.proj(k, x);

    const auto& tg = p.tg();
    const auto& cm = tg.crossed_module();
    g_unit_ = tg.G().unit();
    TwoGroupNerveModels models(p.action.tg, k);
    gpart_.resize(nG_);
    gamma_.resize(nG_);
    in_sect_.assign(nG_, 0);
    for (Index u = 0; u < nG_; ++u) {
        auto [hs, g] = models.decode(k, models.a_to_b(k, u));
        gpart_[u] = g;
        for (auto& h : hs) h = cm.act(tg.G().inv(g), h);
        gamma_[u] = models.b_to_a(k, models.encode(hs, g_unit_));
    }
    for (Index g = 0; g < tg.G().order(); ++g) {
        Index u = models.b_to_a(k, models.encode(std::vector<Index>(k, tg.H().unit()), g));
        section_.push_back(u);
        in_sect_[u] = 1;
    }

    orbit_.assign(nP_, kNone);
    coord_.assign(nP_, kNone);
    for (Index x = 0; x < nP_; ++x) {
        if (orbit_[x] != kNone) continue;
        Index o = Index(reps_.size());
        reps_.push_back(x);
        points_.emplace_back();
        for (Index u = 0; u < nG_; ++u) {
            Index y = act(u, x);
            if (orbit_[y] != kNone)
                raise(ErrorKind::NotFreeAtLevel, "level " + std::to_string(k) + " point " + std::to_string(y));
            orbit_[y] = o;
            coord_[y] = u;
            points_[o].push_back(y);
        }
    }
    // Orbits must be the fibers of the projection.
    std::vector<Index> orbit_of_base(nM_, kNone);
    for (Index x = 0; x < nP_; ++x) {
        Index m = proj_[x];
        if (m == kNone) raise(ErrorKind::PreconditionNotMet, "projection leaves the base nerve");
        if (orbit_of_base[m] == kNone) orbit_of_base[m] = orbit_[x];
        if (orbit_of_base[m] != orbit_[x])
            raise(ErrorKind::PreconditionNotMet, "fiber over base point " + std::to_string(m) + " is not one orbit");
    }
    if (reps_.size() != nM_) raise(ErrorKind::PreconditionNotMet, "orbit count differs from base level size");

    class_.assign(nP_, kNone);
    for (Index x = 0; x < nP_; ++x) {
        if (class_[x] != kNone) continue;
        for (Index s : section_) class_[act(s, x)] = Index(nC_);
        ++nC_;
    }
}

std::vector<Index> psi_k(const LevelBundle& lb, const std::vector<Index>& perm) {
    std::vector<Index> psi(lb.num_points(), kNone);
    for (Index x = 0; x < lb.num_points(); ++x) {
        for (Index u = 0; u < lb.group_order(); ++u)
            if (lb.act(u, x) == perm[x]) {
                psi[x] = u;
                break;
            }
        if (psi[x] == kNone) raise(ErrorKind::NoGroupElement, "no group element moves point " + std::to_string(x));
    }
    return psi;
}

std::vector<Index> psi_k_inverse(const LevelBundle& lb, const std::vector<Index>& psi) {
    std::vector<Index> perm(lb.num_points());
    for (Index x = 0; x < lb.num_points(); ++x) perm[x] = lb.act(psi[x], x);
    return perm;
}

bool is_equivariant(const LevelBundle& lb, const std::vector<Index>& values) {
    for (Index u = 0; u < lb.group_order(); ++u)
        for (Index x = 0; x < lb.num_points(); ++x)
            if (values[lb.act(u, x)] != lb.conj(u, values[x])) return false;
    return true;
}

std::vector<Index> gamma_k(const LevelBundle& lb, const std::vector<Index>& psi) {
    std::vector<Index> out(psi.size());
    for (std::size_t x = 0; x < psi.size(); ++x) out[x] = lb.gamma(psi[x]);
    return out;
}

namespace {

std::vector<Index> class_map(const LevelBundle& lb, const std::function<Index(Index)>& image, const char* what) {
    std::vector<Index> m(lb.num_classes(), kNone);
    for (Index x = 0; x < lb.num_points(); ++x) {
        Index c = lb.class_of(x), d = lb.class_of(image(x));
        if (m[c] == kNone) {
            m[c] = d;
        } else if (m[c] != d) {
            raise(ErrorKind::IllDefinedOnClasses, std::string(what) + " at point " + std::to_string(x));
        }
    }
    return m;
}

}  // namespace

std::vector<Index> xi_k(const LevelBundle& lb, const std::vector<Index>& gamma) {
    return class_map(lb, [&](Index x) { return lb.act(gamma[x], x); }, "xi");
}

std::vector<Index> pi_k(const LevelBundle& lb, const std::vector<Index>& perm) {
    return class_map(lb, [&](Index x) { return perm[x]; }, "pi");
}

std::optional<std::size_t> brute_force_aut_count(const LevelBundle& lb, std::size_t cap) {
    const std::size_t n = lb.num_points();
    std::vector<std::vector<Index>> fiber(lb.num_base());
    for (Index x = 0; x < n; ++x) fiber[lb.proj(x)].push_back(x);
    double candidates = 1;
    for (Index x = 0; x < n; ++x) candidates *= double(fiber[lb.proj(x)].size());
    if (candidates > double(cap)) return std::nullopt;
    std::vector<Index> choice(n, 0), perm(n);
    std::size_t count = 0;
    for (;;) {
        for (Index x = 0; x < n; ++x) perm[x] = fiber[lb.proj(x)][choice[x]];
        bool ok = true;
        std::vector<char> hit(n, 0);
        for (Index x = 0; x < n && ok; ++x) {
            if (hit[perm[x]]) ok = false;
            hit[perm[x]] = 1;
        }
        for (Index u = 0; u < lb.group_order() && ok; ++u)
            for (Index x = 0; x < n && ok; ++x)
                if (perm[lb.act(u, x)] != lb.act(u, perm[x])) ok = false;
        count += ok;
        Index x = 0;
        for (; x < n; ++x) {
            if (++choice[x] < fiber[lb.proj(x)].size()) break;
            choice[x] = 0;
        }
        if (x == n) break;
    }
    return count;
}

namespace {

// Per-orbit data for one candidate value w at the orbit representative.
struct LocalMaps {
    LocalMap pi;      // class -> class
    LocalMap square;  // class -> class through Xi o Gamma o Psi
    bool gamma_equivariant = true;
};

LocalMaps local_maps(const LevelBundle& lb, Index o, Index w) {
    LocalMaps out;
    std::map<Index, Index> pi, sq;
    const auto& pts = lb.orbit_points(o);
    std::vector<Index> psi_local(lb.num_points(), kNone), gam(lb.num_points(), kNone);
    for (Index x : pts) {
        Index u = lb.coord(x);
        Index ax = lb.act(u, lb.act(w, lb.rep(o)));
        psi_local[x] = lb.conj(u, w);
        gam[x] = lb.gamma(psi_local[x]);
        auto [it, fresh] = pi.emplace(lb.class_of(x), lb.class_of(ax));
        if (!fresh && it->second != lb.class_of(ax))
            raise(ErrorKind::IllDefinedOnClasses, "pi at point " + std::to_string(x));
        Index bx = lb.act(gam[x], x);
        auto [jt, fresh2] = sq.emplace(lb.class_of(x), lb.class_of(bx));
        if (!fresh2 && jt->second != lb.class_of(bx))
            raise(ErrorKind::IllDefinedOnClasses, "xi at point " + std::to_string(x));
    }
    for (Index v = 0; v < lb.group_order() && out.gamma_equivariant; ++v)
        for (Index x : pts)
            if (gam[lb.act(v, x)] != lb.conj(v, gam[x])) {
                out.gamma_equivariant = false;
                break;
            }
    out.pi.assign(pi.begin(), pi.end());
    out.square.assign(sq.begin(), sq.end());
    return out;
}

LocalMap local_xi(const LevelBundle& lb, Index o, Index n) {
    std::map<Index, Index> m;
    for (Index x : lb.orbit_points(o)) {
        Index g = lb.conj(lb.coord(x), n);
        Index y = lb.act(g, x);
        auto [it, fresh] = m.emplace(lb.class_of(x), lb.class_of(y));
        if (!fresh && it->second != lb.class_of(y))
            raise(ErrorKind::IllDefinedOnClasses, "xi at point " + std::to_string(x));
    }
    return LocalMap(m.begin(), m.end());
}

}  // namespace

AutSummary aut_partial_quotient(const PBGroupoid& p, std::size_t k, const AutOptions& opt) {
    AutSummary out;
    auto& r = out.report;
    LevelBundle lb(p, k);
    const std::size_t nG = lb.group_order(), nP = lb.num_points();
    for (const char* c : {"aut_equals_equivariant", "aut_count_formula", "psi_antihom", "gamma_equivariant", "square",
                          "intermediate_quotient", "pi_fibers_are_cosets", "xi_injective", "count_identity"})
        r.declare(c);

    std::vector<std::size_t> f_aut, f_eq, f_h, f_s, f_pi, f_xi;
    // Elements w with u w u^-1 in the section subgroup for every u.
    std::vector<Index> core;
    for (Index w = 0; w < nG; ++w) {
        bool ok = true;
        for (Index u = 0; u < nG && ok; ++u) ok = lb.in_section(lb.conj(u, w));
        if (ok) core.push_back(w);
    }
    for (Index o = 0; o < lb.num_orbits(); ++o) {
        const auto& pts = lb.orbit_points(o);
        const Index rep = lb.rep(o);
        // First enumeration: images y of the representative, extended as a(u.rep) = u.y.
        std::size_t n_aut = 0;
        for (Index y : pts) {
            std::vector<Index> a(nP, kNone);
            for (Index x : pts) a[x] = lb.act(lb.coord(x), y);
            bool ok = true;
            std::set<Index> img;
            for (Index x : pts) {
                ok &= lb.proj(a[x]) == lb.proj(x);
                img.insert(a[x]);
            }
            ok &= img.size() == pts.size();
            for (Index v = 0; v < nG && ok; ++v)
                for (Index x : pts)
                    if (a[lb.act(v, x)] != lb.act(v, a[x])) {
                        ok = false;
                        break;
                    }
            n_aut += ok;
        }
        // Second enumeration: equivariant values psi(u.rep) = u w u^-1.
        std::size_t n_eq = 0, n_h = 0, n_s = 0;
        for (Index w = 0; w < nG; ++w) {
            bool ok = true;
            for (Index v = 0; v < nG && ok; ++v)
                for (Index x : pts) {
                    Index lhs = lb.conj(lb.coord(lb.act(v, x)), w);
                    if (lhs != lb.conj(v, lb.conj(lb.coord(x), w))) {
                        ok = false;
                        break;
                    }
                }
            if (!ok) continue;
            ++n_eq;
            bool all_h = true, all_s = true;
            for (Index x : pts) {
                Index val = lb.conj(lb.coord(x), w);
                all_h &= lb.in_h(val);
                all_s &= lb.in_section(val);
            }
            n_h += all_h;
            n_s += all_s;
        }
        if (n_aut != n_eq) r.fail("aut_equals_equivariant", wit("orbit", o));
        if (n_aut != nG) r.fail("aut_count_formula", wit("orbit", o));
        if (n_eq != n_h * n_s) r.fail("intermediate_quotient", wit("orbit", o));

        // Composition: a_w o a_v sends rep to v.w.rep, so psi(a o b) = psi(b) psi(a) pointwise.
        for (Index w = 0; w < nG; ++w)
            for (Index v = 0; v < nG; ++v) {
                Index comp_at_rep = lb.act(v, lb.act(w, rep));
                if (comp_at_rep != lb.act(lb.mul(v, w), rep)) r.fail("psi_antihom", wit("orbit", o));
            }

        std::map<LocalMap, std::vector<Index>> by_pi;
        for (Index w = 0; w < nG; ++w) {
            auto lm = local_maps(lb, o, w);
            if (!lm.gamma_equivariant) r.fail("gamma_equivariant", wit("orbit", o) + " " + wit("w", w));
            if (opt.verify_square && lm.pi != lm.square) r.fail("square", wit("orbit", o) + " " + wit("w", w));
            by_pi[lm.pi].push_back(w);
        }
        // Pi-fibers against cosets of the core: w ~ w' iff w w'^-1 in core.
        std::vector<char> in_core(nG, 0);
        for (Index c : core) in_core[c] = 1;
        for (const auto& [m, ws] : by_pi)
            for (Index w : ws)
                for (Index w2 = 0; w2 < nG; ++w2) {
                    bool same_fiber = std::find(ws.begin(), ws.end(), w2) != ws.end();
                    if (same_fiber != bool(in_core[lb.mul(w, lb.inv(w2))]))
                        r.fail("pi_fibers_are_cosets", wit("orbit", o) + " " + wit("w", w));
                }
        std::set<LocalMap> xi_images;
        std::size_t n_hk = 0;
        for (Index n = 0; n < nG; ++n)
            if (lb.in_h(n)) {
                ++n_hk;
                xi_images.insert(local_xi(lb, o, n));
            }
        if (xi_images.size() != n_hk) r.fail("xi_injective", wit("orbit", o));
        if (by_pi.size() != n_h) r.fail("count_identity", wit("orbit", o) + " image " + std::to_string(by_pi.size()) +
                                                              " vs " + std::to_string(n_h));
        f_aut.push_back(n_aut);
        f_eq.push_back(n_eq);
        f_h.push_back(n_h);
        f_s.push_back(n_s);
        f_pi.push_back(by_pi.size());
        f_xi.push_back(xi_images.size());
    }
    out.aut = big_product(f_aut);
    out.equivariant = big_product(f_eq);
    out.equivariant_h = big_product(f_h);
    out.equivariant_section = big_product(f_s);
    out.pi_image = big_product(f_pi);
    out.xi_image = big_product(f_xi);

    // Global pass when Aut is small: permutations, psi by search, and the group laws.
    double total = 1;
    for (auto f : f_aut) total *= double(f);
    if (total <= double(opt.explicit_cap)) {
        out.explicit_mode = true;
        for (const char* c : {"explicit.closed", "explicit.inverses", "explicit.psi_bijective", "explicit.psi_antihom",
                              "explicit.square", "explicit.pi_image", "explicit.count_identity"})
            r.declare(c);
        std::vector<std::vector<Index>> auts, psis;
        std::vector<Index> digits(lb.num_orbits(), 0);
        do {
            std::vector<Index> a(nP);
            for (Index x = 0; x < nP; ++x) {
                Index o = lb.orbit_of(x);
                a[x] = lb.act(lb.coord(x), lb.act(digits[o], lb.rep(o)));
            }
            auts.push_back(std::move(a));
        } while (advance(digits, nG));
        std::map<std::vector<Index>, std::size_t> index;
        for (std::size_t i = 0; i < auts.size(); ++i) index[auts[i]] = i;
        std::set<std::vector<Index>> pis, hmaps;
        for (const auto& a : auts) {
            auto psi = psi_k(lb, a);
            if (!is_equivariant(lb, psi) || psi_k_inverse(lb, psi) != a) r.fail("explicit.psi_bijective", "psi");
            psis.push_back(psi);
            auto pim = pi_k(lb, a);
            if (opt.verify_square && xi_k(lb, gamma_k(lb, psi)) != pim) r.fail("explicit.square", "automorphism");
            pis.insert(pim);
            if (std::all_of(psi.begin(), psi.end(), [&](Index u) { return lb.in_h(u); })) hmaps.insert(psi);
        }
        if (std::set<std::vector<Index>>(psis.begin(), psis.end()).size() != psis.size())
            r.fail("explicit.psi_bijective", "psi not injective");
        const bool all_pairs = auts.size() * auts.size() * nP <= 50000000;
        for (std::size_t i = 0; i < auts.size(); ++i) {
            std::vector<Index> inv(nP);
            for (Index x = 0; x < nP; ++x) inv[auts[i][x]] = x;
            if (!index.count(inv)) r.fail("explicit.inverses", wit("aut", i));
            for (std::size_t j = 0; j < auts.size(); ++j) {
                if (!all_pairs && j != i && j != 0) continue;
                std::vector<Index> ab(nP), prod(nP);
                for (Index x = 0; x < nP; ++x) ab[x] = auts[i][auts[j][x]];
                if (!index.count(ab)) {
                    r.fail("explicit.closed", wit("aut", i));
                    continue;
                }
                const auto& pab = psis[index[ab]];
                for (Index x = 0; x < nP; ++x) prod[x] = lb.mul(psis[j][x], psis[i][x]);
                if (pab != prod) r.fail("explicit.psi_antihom", wit("aut", i) + " " + wit("aut", j));
            }
        }
        r.expect("explicit.pi_image", big_product({pis.size()}) == out.pi_image, "explicit and local Pi images differ");
        r.expect("explicit.count_identity", pis.size() == hmaps.size(),
                 std::to_string(pis.size()) + " vs " + std::to_string(hmaps.size()));
    }
    if (auto bf = brute_force_aut_count(lb, 100000)) {
        r.expect("brute_force_aut", big_product({*bf}) == out.aut, "brute force found " + std::to_string(*bf));
        r.note("brute_force_aut", *bf);
    }
    r.note("level", k);
    r.note("points", nP);
    r.note("group_order", nG);
    r.note("orbits", lb.num_orbits());
    r.note("classes", lb.num_classes());
    r.note("aut", out.aut);
    r.note("equivariant", out.equivariant);
    r.note("equivariant_h", out.equivariant_h);
    r.note("equivariant_section", out.equivariant_section);
    r.note("pi_image", out.pi_image);
    r.note("xi_image", out.xi_image);
    r.note("mode", out.explicit_mode ? "explicit" : "orbit-local");
    return out;
}

ValidationReport verify_square(const PBGroupoid& p, std::size_t k) {
    auto s = aut_partial_quotient(p, k);
    if (!s.report.passed("square") || (s.report.has("explicit.square") && !s.report.passed("explicit.square")))
        raise(ErrorKind::SquareFailure, s.report.first_failure());
    return s.report;
}

AutSummary aut_gerbe(const BaseTrivialPB& bt, std::size_t k) {
    AutSummary out;
    auto& r = out.report;
    const auto& p = bt.pb;
    LevelBundle lb(p, k);
    auto xi = functor_xi(bt);
    const auto& gb = xi.gerbe;
    if (gb.base != p.base) raise(ErrorKind::PreconditionNotMet, "gerbe base differs from the bundle base");
    auto pq = partial_quotient(p);
    Nerve NQ(pq.groupoid, k), NB(gb.B, k);
    const auto& NP = lb.point_nerve();
    if (NQ.top() < k || NB.top() < k) raise(ErrorKind::CarrierTooLarge, "nerve level cap");
    for (const char* c : {"iso.bijective", "direct.principal", "direct.equivariant", "match"}) r.declare(c);

    // B^(k) -> N^k(P^(1)/_G)
    const auto& H = p.tg().H();
    const auto& G = p.tg().G();
    std::vector<Index> iso(NB.size(k));
    for (Index x = 0; x < NB.size(k); ++x) {
        if (k == 0) {
            iso[x] = pq.Q.obj_map[bt.object(G.unit(), x)];
            continue;
        }
        std::vector<Index> t(k);
        for (std::size_t m = 1; m <= k; ++m) t[m - 1] = pq.Q.arr_map[xi.arrow_of_b[NB.arrow(k, x, m)]];
        iso[x] = NQ.index_of(t);
    }
    {
        std::vector<char> hit(NQ.size(k), 0);
        for (Index x = 0; x < iso.size(); ++x) {
            if (iso[x] == kNone || hit[iso[x]]) r.fail("iso.bijective", wit("tuple", x));
            else hit[iso[x]] = 1;
        }
        if (iso.size() != NQ.size(k)) r.fail("iso.bijective", "size");
    }
    if (!r.ok()) return out;

    // N^k(P^(1)) classes -> N^k(P^(1)/_G)
    std::vector<Index> tilde(lb.num_classes(), kNone);
    for (Index x = 0; x < lb.num_points(); ++x) {
        if (k == 0) {
            tilde[lb.class_of(x)] = pq.Q.obj_map[x];
            continue;
        }
        std::vector<Index> t(k);
        for (std::size_t m = 1; m <= k; ++m) t[m - 1] = pq.Q.arr_map[NP.arrow(k, x, m)];
        tilde[lb.class_of(x)] = NQ.index_of(t);
    }

    // H^k acting slotwise on B^(k); element (h_1..h_k) has index sum h_m |H|^(m-1).
    std::size_t nH = 1;
    for (std::size_t m = 0; m < k; ++m) nH *= H.order();
    auto hact = [&](Index hk, Index x) -> Index {
        if (k == 0) return x;
        std::vector<Index> t(k);
        Index v = hk;
        for (std::size_t m = 1; m <= k; ++m) {
            t[m - 1] = gb.act(v % H.order(), NB.arrow(k, x, m));
            v /= Index(H.order());
        }
        return NB.index_of(t);
    };

    std::vector<Index> fiber_of(NB.size(k), kNone);
    std::map<Index, std::set<LocalMap>> direct, via_pq;
    for (Index x = 0; x < NB.size(k); ++x) {
        if (fiber_of[x] != kNone) continue;
        std::vector<Index> pts(nH), coord(NB.size(k), kNone);
        for (Index h = 0; h < nH; ++h) {
            Index y = hact(h, x);
            if (y == kNone || fiber_of[y] != kNone) {
                r.fail("direct.principal", wit("tuple", x));
                return out;
            }
            fiber_of[y] = x;
            pts[h] = y;
            coord[y] = h;
        }
        Index key = kNone;
        for (Index y : pts) key = std::min(key, iso[y]);
        auto& bucket = direct[key];
        for (Index y0 : pts) {
            std::vector<Index> a(NB.size(k), kNone);
            for (Index h = 0; h < nH; ++h) a[pts[h]] = hact(h, y0);
            bool ok = true;
            for (Index h = 0; h < nH && ok; ++h)
                for (Index y : pts)
                    if (a[hact(h, y)] != hact(h, a[y])) {
                        ok = false;
                        break;
                    }
            if (!ok) {
                r.fail("direct.equivariant", wit("tuple", y0));
                continue;
            }
            std::map<Index, Index> lm;
            for (Index y : pts) lm[iso[y]] = iso[a[y]];
            bucket.insert(LocalMap(lm.begin(), lm.end()));
        }
    }
    for (Index o = 0; o < lb.num_orbits(); ++o) {
        Index key = kNone;
        for (Index x : lb.orbit_points(o)) key = std::min(key, tilde[lb.class_of(x)]);
        auto& bucket = via_pq[key];
        for (Index w = 0; w < lb.group_order(); ++w) {
            std::map<Index, Index> lm;
            for (Index x : lb.orbit_points(o)) {
                Index ax = lb.act(lb.coord(x), lb.act(w, lb.rep(o)));
                lm[tilde[lb.class_of(x)]] = tilde[lb.class_of(ax)];
            }
            bucket.insert(LocalMap(lm.begin(), lm.end()));
        }
    }
    std::vector<std::size_t> fd, fp;
    for (const auto& [key, s] : direct) fd.push_back(s.size());
    for (const auto& [key, s] : via_pq) fp.push_back(s.size());
    if (direct != via_pq) {
        std::string w = "fiber sets differ";
        for (const auto& [key, s] : direct) {
            auto it = via_pq.find(key);
            if (it == via_pq.end() || it->second != s) {
                w = "fiber at quotient tuple " + std::to_string(key) + ": direct " + std::to_string(s.size()) +
                    " vs quotient " + std::to_string(it == via_pq.end() ? 0 : it->second.size());
                break;
            }
        }
        r.fail("match", w);
    }
    out.aut = big_product(fd);
    out.pi_image = big_product(fp);
    r.note("level", k);
    r.note("aut_direct", out.aut);
    r.note("aut_via_partial_quotient", out.pi_image);
    return out;
}

ValidationReport embeddings(const PrincipalBundle& b, std::size_t K) {
    ValidationReport r;
    auto pb = pb_groupoid_from_principal_bundle(b);
    const auto& G = *b.action.group;
    const std::size_t n = b.action.size();
    // Aut(P): f(g.rep) = g.y with y in the fiber of rep.
    std::vector<std::vector<Index>> fibers = b.proj.fibers();
    std::vector<std::vector<Index>> autos;
    std::vector<Index> digits(fibers.size(), 0);
    double total = std::pow(double(G.order()), double(fibers.size()));
    if (total > 1e5) raise(ErrorKind::CarrierTooLarge, "gauge group too large to enumerate");
    do {
        std::vector<Index> f(n, kNone);
        for (std::size_t i = 0; i < fibers.size(); ++i) {
            Index rep = fibers[i][0];
            Index y = b.action.act(Index(digits[i]), rep);
            for (Index g = 0; g < G.order(); ++g) f[b.action.act(g, rep)] = b.action.act(g, y);
        }
        autos.push_back(std::move(f));
    } while (advance(digits, G.order()));
    r.declare("gauge.valid");
    for (std::size_t i = 0; i < autos.size(); ++i)
        for (Index g = 0; g < G.order(); ++g)
            for (Index p = 0; p < n; ++p)
                if (autos[i][b.action.act(g, p)] != b.action.act(g, autos[i][p]) ||
                    b.proj.map[autos[i][p]] != b.proj.map[p])
                    r.fail("gauge.valid", wit("f", i));
    r.note("gauge_order", autos.size());

    PBNerve nerve(pb, K);
    json levels = json::array();
    for (std::size_t k = 0; k <= nerve.top(); ++k) {
        const std::string pre = "level" + std::to_string(k) + ".";
        for (const char* c : {"is_aut", "hom", "injective", "identity"}) r.declare(pre + c);
        const std::size_t nP = nerve.P().size(k), nG = nerve.G().size(k);
        std::vector<std::vector<Index>> images;
        for (const auto& f : autos) {
            std::vector<Index> img(nP);
            for (Index x = 0; x < nP; ++x) {
                std::vector<Index> v;
                for (std::size_t j = 0; j <= k; ++j) v.push_back(f[nerve.P().vertex(k, x, j)]);
                img[x] = pair_nerve_index(nerve.P(), v);
            }
            images.push_back(std::move(img));
        }
        for (std::size_t i = 0; i < images.size(); ++i) {
            const auto& a = images[i];
            std::vector<char> hit(nP, 0);
            bool ok = true;
            for (Index x = 0; x < nP; ++x) {
                if (a[x] == kNone || hit[a[x]] || nerve.proj(k, a[x]) != nerve.proj(k, x)) {
                    ok = false;
                    break;
                }
                hit[a[x]] = 1;
            }
            for (Index u = 0; u < nG && ok; ++u)
                for (Index x = 0; x < nP; ++x)
                    if (a[nerve.act(k, u, x)] != nerve.act(k, u, a[x])) {
                        ok = false;
                        break;
                    }
            if (!ok) r.fail(pre + "is_aut", wit("f", i));
            bool is_id_f = true;
            for (Index p = 0; p < n; ++p) is_id_f &= autos[i][p] == p;
            if (is_id_f)
                for (Index x = 0; x < nP; ++x)
                    if (a[x] != x) {
                        r.fail(pre + "identity", "identity gauge map moves tuple " + std::to_string(x));
                        break;
                    }
            for (std::size_t j = 0; j < images.size(); ++j) {
                std::vector<Index> fg(n);
                for (Index p = 0; p < n; ++p) fg[p] = autos[i][autos[j][p]];
                auto it = std::find(autos.begin(), autos.end(), fg);
                if (it == autos.end()) {
                    r.fail(pre + "hom", "gauge group not closed");
                    continue;
                }
                const auto& c = images[std::size_t(it - autos.begin())];
                for (Index x = 0; x < nP; ++x)
                    if (c[x] != a[images[j][x]]) {
                        r.fail(pre + "hom", wit("f", i) + " " + wit("g", j));
                        break;
                    }
            }
        }
        std::set<std::vector<Index>> distinct(images.begin(), images.end());
        if (distinct.size() != images.size()) r.fail(pre + "injective", "two gauge maps agree on level " + std::to_string(k));
        levels.push_back({{"k", k}, {"points", nP}, {"images", distinct.size()}});
    }
    r.note("levels", levels);
    return r;
}

}  // namespace pbg
