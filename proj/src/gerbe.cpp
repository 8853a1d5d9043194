#include "pbg/gerbe.hpp"

#include <numeric>

namespace pbg {

namespace {

std::string lbl2(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

// (tgt, src) -> arrow index for a groupoid with at most one arrow per pair.
std::vector<Index> pair_lookup(const FiniteGroupoid& g) {
    const std::size_t n = g.num_objects();
    std::vector<Index> idx(n * n, kNone);
    for (Index a = 0; a < g.num_arrows(); ++a) idx[g.tgt(a) * n + g.src(a)] = a;
    return idx;
}

std::vector<Index> iota_vec(std::size_t n) {
    std::vector<Index> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

GroupoidActionData BundleGerbe::action_data() const {
    const std::size_t nb = B->num_arrows();
    std::vector<Index> full(tg->num_arrows() * nb, kNone);
    for (Index u = 0; u < tg->num_arrows(); ++u)
        for (Index b = 0; b < nb; ++b)
            if (tg->g_of(u) == rho[b]) full[u * nb + b] = act(tg->h_of(u), b);
    return GroupoidActionData{tg->groupoid(), B->arrow_labels(), rho, std::move(full)};
}

bool base_is_fiber_product(const FiniteGroupoid& base, const Surjection& pi) {
    const std::size_t ny = pi.domain.size();
    if (base.num_objects() != ny) return false;
    std::vector<char> hit(ny * ny, 0);
    for (Index a = 0; a < base.num_arrows(); ++a) {
        Index t = base.tgt(a), s = base.src(a);
        if (pi.map[t] != pi.map[s] || hit[t * ny + s]) return false;
        hit[t * ny + s] = 1;
    }
    std::size_t expect = 0;
    for (const auto& f : pi.fibers()) expect += f.size() * f.size();
    return expect == base.num_arrows();
}

ValidationReport check_bundle_gerbe(const BundleGerbe& g) {
    ValidationReport r;
    const auto& B = *g.B;
    const auto& Y1 = *g.base;
    const auto& tg = *g.tg;
    const auto& G = tg.G();
    const std::size_t nb = B.num_arrows();
    if (g.rho.size() != nb || g.star.size() != tg.H().order() * nb)
        raise(ErrorKind::TableArity, "gerbe tables do not match the carrier");
    r.merge(check_groupoid(B), "B");
    r.merge(check_groupoid(Y1), "base");
    if (!r.ok()) return r;
    r.merge(check_functor(g.Pi), "Pi");
    r.declare("Pi_over_identity");
    for (Index y = 0; y < B.num_objects(); ++y)
        if (g.Pi.obj_map[y] != y) r.fail("Pi_over_identity", B.object_label(y));
    for (Index v : g.rho)
        if (v >= G.order()) raise(ErrorKind::TableArity, "anchor value out of range");

    try {
        PrincipalGroupoidBundle pb{g.action_data(), Surjection(B.arrow_labels(), Y1.arrow_labels(), g.Pi.arr_map)};
        r.merge(check_principal_groupoid_bundle(pb), "principal");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotSurjective) throw;
        r.fail("principal.surjective", e.what());
    }
    r.declare("anchor_multiplicative");
    r.declare("equivariance");
    const auto& UG = *tg.arrows_group();
    for (Index b2 = 0; b2 < nb; ++b2)
        for (Index b1 : B.arrows_into(B.src(b2))) {
            Index b21 = B.comp(b2, b1);
            if (g.rho[b21] != G.mul(g.rho[b2], g.rho[b1]))
                r.fail("anchor_multiplicative", lbl2(B.arrow_label(b2), B.arrow_label(b1)));
            for (Index h2 = 0; h2 < tg.H().order(); ++h2)
                for (Index h1 = 0; h1 < tg.H().order(); ++h1) {
                    Index x2 = g.act(h2, b2), x1 = g.act(h1, b1);
                    Index u = UG.mul(tg.arrow(h2, g.rho[b2]), tg.arrow(h1, g.rho[b1]));
                    bool ok = x2 != kNone && x1 != kNone && B.composable(x2, x1) && tg.g_of(u) == g.rho[b21] &&
                              B.comp(x2, x1) == g.act(tg.h_of(u), b21);
                    if (!ok)
                        r.fail("equivariance", "(" + tg.H().label(h2) + "," + B.arrow_label(b2) + "," +
                                                   tg.H().label(h1) + "," + B.arrow_label(b1) + ")");
                }
        }
    if (g.fiber) {
        r.expect("fiber_product_base", base_is_fiber_product(Y1, *g.fiber), "base is not Y x_M Y");
        r.declare("orbit_condition");
        const std::size_t ny = B.num_objects();
        std::vector<char> hit(ny * ny, 0);
        for (Index b = 0; b < nb; ++b) hit[B.tgt(b) * ny + B.src(b)] = 1;
        for (Index y2 = 0; y2 < ny; ++y2)
            for (Index y1 = 0; y1 < ny; ++y1)
                if (g.fiber->map[y2] == g.fiber->map[y1] && !hit[y2 * ny + y1])
                    r.fail("orbit_condition", lbl2(B.object_label(y2), B.object_label(y1)));
    }
    return r;
}

BaseTrivialPB trivial_pb(TwoGroupRef tg, GroupoidRef base) {
    const auto& T = *tg->groupoid();
    auto target = share(product_groupoid(T, *base, tg->arrows_group()->name() + "x" + base->name()));
    const std::size_t na = base->num_arrows(), ny = base->num_objects();
    const auto& UG = *tg->arrows_group();
    const auto& G = tg->G();
    std::vector<Index> ta(tg->num_arrows() * target->num_arrows());
    for (Index v = 0; v < tg->num_arrows(); ++v)
        for (Index x = 0; x < target->num_arrows(); ++x)
            ta[v * target->num_arrows() + x] = Index(UG.mul(v, x / na) * na + x % na);
    std::vector<Index> to(G.order() * target->num_objects());
    for (Index g = 0; g < G.order(); ++g)
        for (Index x = 0; x < target->num_objects(); ++x)
            to[g * target->num_objects() + x] = Index(G.mul(g, x / ny) * ny + x % ny);
    TwoGroupAction act{tg, target, GroupAction(tg->arrows_group(), target->arrow_labels(), std::move(ta)),
                       GroupAction(tg->G_ref(), target->object_labels(), std::move(to))};
    std::vector<Index> pa(target->num_arrows()), po(target->num_objects()), tgv(po.size());
    for (Index x = 0; x < pa.size(); ++x) pa[x] = Index(x % na);
    for (Index x = 0; x < po.size(); ++x) {
        po[x] = Index(x % ny);
        tgv[x] = Index(x / ny);
    }
    GroupoidFunctor proj(target, base, po, pa);
    return make_base_trivial(PBGroupoid{std::move(act), base, std::move(proj)}, tgv, po);
}

BundleGerbe trivial_gerbe(TwoGroupRef tg, GroupoidRef base) {
    return functor_xi(trivial_pb(std::move(tg), std::move(base))).gerbe;
}

BundleGerbe functor_phi(const PBGroupoid& p, const Surjection& pi) {
    const auto& tg = *p.action.tg;
    const auto& P = *p.action.target;
    const auto& G = tg.G();
    if (!base_is_fiber_product(*p.base, pi))
        raise(ErrorKind::BaseNotFiberProduct, "base of the PB groupoid is not Y x_M Y for the given surjection");
    const std::size_t na = P.num_arrows(), ng = G.order();

    std::vector<Index> to_m(P.num_objects());
    for (Index x = 0; x < to_m.size(); ++x) to_m[x] = pi.map[p.proj.obj_map[x]];
    Surjection pm(P.object_labels(), pi.codomain, to_m);
    auto base = share(fiber_product_groupoid(pm, "PxP"));
    const auto plook = pair_lookup(*base);
    const std::size_t np = P.num_objects();

    std::vector<std::string> labels;
    std::vector<Index> src, tgt, rho, Pi;
    for (Index g = 0; g < ng; ++g)
        for (Index f = 0; f < na; ++f) {
            labels.push_back(lbl2(G.label(g), P.arrow_label(f)));
            Index t = p.action.obj(g, P.tgt(f));
            src.push_back(P.src(f));
            tgt.push_back(t);
            rho.push_back(g);
            Pi.push_back(plook[t * np + P.src(f)]);
        }
    // (g2,f2) o (g1,f1) = (g2 g1, ((e, g1^-1) f2) o f1)
    auto B = share(FiniteGroupoid("Phi(" + P.name() + ")", P.object_labels(), labels, src, tgt,
                                  [&](Index b2, Index b1) -> Index {
                                      Index g2 = Index(b2 / na), f2 = Index(b2 % na);
                                      Index g1 = Index(b1 / na), f1 = Index(b1 % na);
                                      Index moved = p.action.arr(tg.e(G.inv(g1)), f2);
                                      if (!P.composable(moved, f1)) return kNone;
                                      return Index(G.mul(g2, g1) * na + P.comp(moved, f1));
                                  }));
    GroupoidFunctor PiF(B, base, iota_vec(np), Pi);
    // (h,g) * (g,f) = (d(h) g, (C_{g^-1} h^-1, e) . f)
    const auto& cm = tg.crossed_module();
    const auto& H = tg.H();
    std::vector<Index> star(H.order() * B->num_arrows());
    for (Index h = 0; h < H.order(); ++h)
        for (Index b = 0; b < B->num_arrows(); ++b) {
            Index g = Index(b / na), f = Index(b % na);
            Index u = tg.arrow(cm.act(G.inv(g), H.inv(h)), G.unit());
            star[h * B->num_arrows() + b] = Index(G.mul(cm.d(h), g) * na + p.action.arr(u, f));
        }
    return BundleGerbe{p.action.tg, B, base, std::move(PiF), std::move(rho), std::move(star), pm};
}

PsiResult functor_psi(const BundleGerbe& gb, PsiConvention conv) {
    auto rep = check_bundle_gerbe(gb);
    if (!rep.ok()) raise(ErrorKind::InvalidGerbe, rep.first_failure());
    const auto& tg = *gb.tg;
    const auto& G = tg.G();
    const auto& H = tg.H();
    const auto& B = *gb.B;
    const std::size_t nb = B.num_arrows(), ny = B.num_objects(), ng = G.order();

    std::vector<std::string> olabels, alabels;
    for (Index k = 0; k < ng; ++k)
        for (Index y = 0; y < ny; ++y) olabels.push_back(lbl2(G.label(k), B.object_label(y)));
    std::vector<Index> src, tgt;
    for (Index k = 0; k < ng; ++k)
        for (Index b = 0; b < nb; ++b) {
            alabels.push_back(lbl2(G.label(k), B.arrow_label(b)));
            src.push_back(Index(k * ny + B.src(b)));
            Index r = conv == PsiConvention::Repaired ? G.inv(gb.rho[b]) : gb.rho[b];
            tgt.push_back(Index(G.mul(k, r) * ny + B.tgt(b)));
        }
    // (k2,b2) o (k1,b1) = (k1, b2 o_mu b1)
    auto target = share(FiniteGroupoid("Psi(" + B.name() + ")", olabels, alabels, src, tgt,
                                       [&](Index x2, Index x1) -> Index {
                                           Index b2 = Index(x2 % nb), b1 = Index(x1 % nb);
                                           if (!B.composable(b2, b1)) return kNone;
                                           return Index((x1 / nb) * nb + B.comp(b2, b1));
                                       }));
    // (h,g).(k,b) = (gk, (C_{rho(b) k^-1 g^-1} h^-1, rho(b)) * b)
    const auto& cm = tg.crossed_module();
    std::vector<Index> ta(tg.num_arrows() * target->num_arrows());
    for (Index u = 0; u < tg.num_arrows(); ++u) {
        Index h = tg.h_of(u), g = tg.g_of(u);
        for (Index x = 0; x < target->num_arrows(); ++x) {
            Index k = Index(x / nb), b = Index(x % nb);
            Index c = G.mul(gb.rho[b], G.mul(G.inv(k), G.inv(g)));
            Index nb2 = gb.act(cm.act(c, H.inv(h)), b);
            ta[u * target->num_arrows() + x] = Index(G.mul(g, k) * nb + nb2);
        }
    }
    std::vector<Index> to(ng * target->num_objects());
    for (Index g = 0; g < ng; ++g)
        for (Index x = 0; x < target->num_objects(); ++x)
            to[g * target->num_objects() + x] = Index(G.mul(g, x / ny) * ny + x % ny);
    TwoGroupAction act{gb.tg, target, GroupAction(tg.arrows_group(), alabels, std::move(ta)),
                       GroupAction(tg.G_ref(), olabels, std::move(to))};
    std::vector<Index> pa(target->num_arrows()), po(target->num_objects()), tv(po.size());
    for (Index x = 0; x < pa.size(); ++x) pa[x] = gb.Pi.arr_map[x % nb];
    for (Index x = 0; x < po.size(); ++x) {
        po[x] = Index(x % ny);
        tv[x] = Index(x / ny);
    }
    GroupoidFunctor proj(target, gb.base, po, pa);
    PsiResult out{make_base_trivial(PBGroupoid{act, gb.base, std::move(proj)}, tv, po), {}};

    out.report.note("convention", conv == PsiConvention::Repaired ? "repaired" : "verbatim");
    out.report.merge(check_groupoid(*target), "groupoid");
    out.report.merge(check_pb_groupoid(out.pb.pb), "pb");
    out.report.declare("quotient_reproduces_base");
    try {
        auto q = quotient_pb(act);
        // Induced map class -> Pi(b) must be an isomorphism onto the base.
        std::vector<Index> oa(q.base->num_arrows()), oo(q.base->num_objects());
        for (Index x = 0; x < target->num_arrows(); ++x) oa[q.proj.arr_map[x]] = pa[x];
        for (Index x = 0; x < target->num_objects(); ++x) oo[q.proj.obj_map[x]] = po[x];
        GroupoidFunctor f(q.base, gb.base, oo, oa);
        if (!f.bijective() || !check_functor(f).ok())
            out.report.fail("quotient_reproduces_base", "induced map is not an isomorphism");
    } catch (const Error& e) {
        out.report.fail("quotient_reproduces_base", e.what());
    }
    return out;
}

XiResult functor_xi(const BaseTrivialPB& bt) {
    const auto& p = bt.pb;
    const auto& tg = *p.action.tg;
    const auto& G = tg.G();
    const auto& H = tg.H();
    const auto& P = *p.action.target;
    const auto& Y1 = *p.base;
    {
        auto rep = check_base_trivial(p, bt.triv_g, bt.triv_y);
        if (!rep.ok()) raise(ErrorKind::NotBaseTrivial, rep.first_failure());
    }
    std::vector<Index> b_of(P.num_arrows(), kNone), arrow_of;
    for (Index f = 0; f < P.num_arrows(); ++f)
        if (bt.triv_g[P.src(f)] == G.unit()) {
            b_of[f] = Index(arrow_of.size());
            arrow_of.push_back(f);
        }
    const std::size_t nb = arrow_of.size();
    std::vector<std::string> labels;
    std::vector<Index> src, tgt, rho, Pi;
    for (Index f : arrow_of) {
        labels.push_back(P.arrow_label(f));
        src.push_back(bt.triv_y[P.src(f)]);
        tgt.push_back(bt.triv_y[P.tgt(f)]);
        rho.push_back(G.inv(bt.triv_g[P.tgt(f)]));
        Pi.push_back(p.proj.arr_map[f]);
    }
    // b2 o_mu b1 = ((e, rho(b1)^-1) . b2) o b1
    auto B = share(FiniteGroupoid("Xi(" + P.name() + ")", Y1.object_labels(), labels, src, tgt,
                                  [&](Index b2, Index b1) -> Index {
                                      Index moved = p.action.arr(tg.e(G.inv(rho[b1])), arrow_of[b2]);
                                      if (!P.composable(moved, arrow_of[b1])) return kNone;
                                      return b_of[P.comp(moved, arrow_of[b1])];
                                  }));
    // (h, rho) * b = (C_{rho^-1} h^-1, e) . b
    const auto& cm = tg.crossed_module();
    std::vector<Index> star(H.order() * nb, kNone);
    for (Index h = 0; h < H.order(); ++h)
        for (Index b = 0; b < nb; ++b) {
            Index u = tg.arrow(cm.act(G.inv(rho[b]), H.inv(h)), G.unit());
            star[h * nb + b] = b_of[p.action.arr(u, arrow_of[b])];
            if (star[h * nb + b] == kNone)
                raise(ErrorKind::IllDefined, "star leaves Ker(s_G) at " + P.arrow_label(arrow_of[b]));
        }
    GroupoidFunctor PiF(B, p.base, iota_vec(Y1.num_objects()), Pi);
    XiResult out{BundleGerbe{p.action.tg, B, p.base, std::move(PiF), std::move(rho), std::move(star), std::nullopt},
                 std::move(b_of), std::move(arrow_of), {}};

    // phi(xi) = (s_G(xi), s_G(xi)^-1 . xi)
    out.splitting.declare("lands_in_B");
    out.splitting.declare("bijective");
    std::vector<char> hit(G.order() * nb, 0);
    for (Index f = 0; f < P.num_arrows(); ++f) {
        Index k = bt.triv_g[P.src(f)];
        Index b = out.b_of_arrow[p.action.arr(tg.e(G.inv(k)), f)];
        if (b == kNone) {
            out.splitting.fail("lands_in_B", P.arrow_label(f));
            continue;
        }
        if (hit[k * nb + b]) out.splitting.fail("bijective", P.arrow_label(f));
        hit[k * nb + b] = 1;
    }
    out.splitting.expect("carrier_size", nb * G.order() == P.num_arrows(),
                         std::to_string(nb) + " * |G| != " + std::to_string(P.num_arrows()));
    return out;
}

ValidationReport check_pb_isomorphism(const PBGroupoid& a, const PBGroupoid& b, const GroupoidFunctor& f,
                                      const GroupoidFunctor& base_map) {
    ValidationReport r;
    const auto& tg = *a.action.tg;
    if (tg.num_arrows() != b.action.tg->num_arrows() || tg.G().order() != b.action.tg->G().order())
        raise(ErrorKind::PreconditionNotMet, "PB groupoids over different 2-groups");
    r.merge(check_functor(f), "functor");
    r.expect("bijective", f.bijective(), "arrow or object map");
    r.merge(check_functor(base_map), "base_functor");
    r.expect("base_bijective", base_map.bijective(), "base map");
    r.declare("equivariant_arrows");
    r.declare("equivariant_objects");
    r.declare("over_base");
    const auto& P = *a.action.target;
    for (Index u = 0; u < tg.num_arrows(); ++u)
        for (Index x = 0; x < P.num_arrows(); ++x)
            if (f.arr_map[a.action.arr(u, x)] != b.action.arr(u, f.arr_map[x]))
                r.fail("equivariant_arrows", lbl2(tg.arrows_group()->label(u), P.arrow_label(x)));
    for (Index g = 0; g < tg.G().order(); ++g)
        for (Index x = 0; x < P.num_objects(); ++x)
            if (f.obj_map[a.action.obj(g, x)] != b.action.obj(g, f.obj_map[x]))
                r.fail("equivariant_objects", lbl2(tg.G().label(g), P.object_label(x)));
    for (Index x = 0; x < P.num_arrows(); ++x)
        if (b.proj.arr_map[f.arr_map[x]] != base_map.arr_map[a.proj.arr_map[x]]) r.fail("over_base", P.arrow_label(x));
    for (Index x = 0; x < P.num_objects(); ++x)
        if (b.proj.obj_map[f.obj_map[x]] != base_map.obj_map[a.proj.obj_map[x]]) r.fail("over_base", P.object_label(x));
    return r;
}

ValidationReport check_gerbe_morphism(const BundleGerbe& a, const BundleGerbe& b, const GroupoidFunctor& f,
                                      const GroupoidFunctor& base_map) {
    ValidationReport r;
    if (a.tg->H().order() != b.tg->H().order() || a.tg->G().order() != b.tg->G().order())
        raise(ErrorKind::PreconditionNotMet, "gerbes over different 2-groups");
    r.merge(check_functor(f), "functor");
    r.merge(check_functor(base_map), "base_functor");
    for (const char* c : {"Pi_compatible", "rho_compatible", "star_equivariant"}) r.declare(c);
    const auto& B = *a.B;
    for (Index x = 0; x < B.num_arrows(); ++x) {
        if (b.Pi.arr_map[f.arr_map[x]] != base_map.arr_map[a.Pi.arr_map[x]]) r.fail("Pi_compatible", B.arrow_label(x));
        if (b.rho[f.arr_map[x]] != a.rho[x]) r.fail("rho_compatible", B.arrow_label(x));
        for (Index h = 0; h < a.tg->H().order(); ++h)
            if (f.arr_map[a.act(h, x)] != b.act(h, f.arr_map[x]))
                r.fail("star_equivariant", lbl2(a.tg->H().label(h), B.arrow_label(x)));
    }
    return r;
}

ValidationReport check_gerbe_isomorphism(const BundleGerbe& a, const BundleGerbe& b, const GroupoidFunctor& f,
                                         const GroupoidFunctor& base_map) {
    auto r = check_gerbe_morphism(a, b, f, base_map);
    r.expect("bijective", f.bijective(), "carrier map");
    r.expect("base_bijective", base_map.bijective(), "base map");
    return r;
}

ValidationReport verify_psi_xi_round_trip(const BaseTrivialPB& bt) {
    const auto& p = bt.pb;
    const auto& tg = *p.action.tg;
    const auto& G = tg.G();
    const auto& P = *p.action.target;
    auto xi = functor_xi(bt);
    auto psi = functor_psi(xi.gerbe);
    ValidationReport r;
    r.merge(xi.splitting, "splitting");
    r.merge(psi.report, "psi");
    const std::size_t nb = xi.gerbe.B->num_arrows(), ny = p.base->num_objects();
    std::vector<Index> fa(P.num_arrows()), fo(P.num_objects());
    for (Index x = 0; x < P.num_arrows(); ++x) {
        Index k = bt.triv_g[P.src(x)];
        Index b = xi.b_of_arrow[p.action.arr(tg.e(G.inv(k)), x)];
        if (b == kNone) raise(ErrorKind::IllDefined, "splitting map leaves Ker(s_G)");
        fa[x] = Index(k * nb + b);
    }
    for (Index x = 0; x < P.num_objects(); ++x) fo[x] = Index(bt.triv_g[x] * ny + bt.triv_y[x]);
    GroupoidFunctor F(p.action.target, psi.pb.pb.action.target, fo, fa);
    r.merge(check_pb_isomorphism(p, psi.pb.pb, F, identity_functor(p.base)), "iso");
    return r;
}

ValidationReport verify_xi_psi_round_trip(const BundleGerbe& gb) {
    auto psi = functor_psi(gb);
    ValidationReport r;
    r.merge(psi.report, "psi");
    if (!psi.report.ok()) return r;
    auto xi = functor_xi(psi.pb);
    r.merge(xi.splitting, "splitting");
    const auto& B = *gb.B;
    const Index e = gb.tg->G().unit();
    std::vector<Index> fa(B.num_arrows());
    for (Index b = 0; b < fa.size(); ++b) {
        fa[b] = xi.b_of_arrow[e * B.num_arrows() + b];
        if (fa[b] == kNone) raise(ErrorKind::IllDefined, "(e,b) not in Ker(s_G)");
    }
    GroupoidFunctor F(gb.B, xi.gerbe.B, iota_vec(B.num_objects()), fa);
    r.merge(check_gerbe_isomorphism(gb, xi.gerbe, F, identity_functor(gb.base)), "iso");
    return r;
}

GroupoidFunctor phi_base_of_morphism(const BundleGerbe& ga, const BundleGerbe& gb, const GroupoidFunctor& f) {
    const auto look = pair_lookup(*gb.base);
    const std::size_t n = gb.base->num_objects();
    std::vector<Index> arr(ga.base->num_arrows());
    for (Index a = 0; a < arr.size(); ++a) {
        arr[a] = look[f.obj_map[ga.base->tgt(a)] * n + f.obj_map[ga.base->src(a)]];
        if (arr[a] == kNone) raise(ErrorKind::PreconditionNotMet, "morphism does not preserve the fiber product");
    }
    return GroupoidFunctor(ga.base, gb.base, f.obj_map, arr);
}

GroupoidFunctor phi_of_morphism(const BundleGerbe& ga, const BundleGerbe& gb, const GroupoidFunctor& f) {
    const std::size_t na = f.dom->num_arrows(), nb = f.cod->num_arrows();
    std::vector<Index> arr(ga.B->num_arrows());
    for (Index x = 0; x < arr.size(); ++x) arr[x] = Index((x / na) * nb + f.arr_map[x % na]);
    return GroupoidFunctor(ga.B, gb.B, f.obj_map, arr);
}

ValidationReport verify_bg_pq(const PBGroupoid& p, const BgPqOptions& opt) {
    if (!opt.pi && !opt.triv_g) raise(ErrorKind::PreconditionNotMet, "neither a fiber-product base nor a trivialization");
    ValidationReport r;
    auto pq = partial_quotient(p);
    r.merge(pq.report, "partial_quotient");
    const auto& P = *p.action.target;
    const auto& tg = *p.action.tg;
    if (opt.pi) {
        auto gerbe = functor_phi(p, *opt.pi);
        // P x_Q (P^(1)/_G) x_Q P
        std::vector<std::string> qlabels = pq.groupoid->object_labels();
        Surjection q(P.object_labels(), qlabels, pq.Q.obj_map);
        auto pb = share(pullback_groupoid(q, *pq.groupoid, "PxQ(P/G)xQP"));
        auto pix = pullback_index(q, *pq.groupoid);
        const std::size_t na = P.num_arrows();
        std::vector<Index> arr(gerbe.B->num_arrows());
        for (Index x = 0; x < arr.size(); ++x) {
            Index g = Index(x / na), f = Index(x % na);
            arr[x] = pix(p.action.obj(g, P.tgt(f)), pq.Q.arr_map[f], P.src(f));
            if (arr[x] == kNone) raise(ErrorKind::IllDefined, "(g t f, [f], s f) is not a pullback arrow");
        }
        GroupoidFunctor F(gerbe.B, pb, iota_vec(P.num_objects()), arr);
        r.merge(check_bundle_gerbe(gerbe), "item1.gerbe");
        r.merge(check_functor(F), "item1.functor");
        r.expect("item1.bijective", F.bijective(), "(g,f) -> (g t f, [f], s f)");
        r.note("item1.arrows", gerbe.B->num_arrows());
    }
    if (opt.triv_g) {
        auto bt = make_base_trivial(p, *opt.triv_g, *opt.triv_y);
        auto xi = functor_xi(bt);
        const auto& B = *xi.gerbe.B;
        std::vector<Index> arr(B.num_arrows()), obj(B.num_objects());
        for (Index b = 0; b < arr.size(); ++b) arr[b] = pq.Q.arr_map[xi.arrow_of_b[b]];
        for (Index y = 0; y < obj.size(); ++y) obj[y] = pq.Q.obj_map[bt.object(tg.G().unit(), y)];
        GroupoidFunctor F(xi.gerbe.B, pq.groupoid, obj, arr);
        r.merge(check_bundle_gerbe(xi.gerbe), "item2.gerbe");
        r.merge(check_functor(F), "item2.functor");
        r.expect("item2.bijective", F.bijective(), "b -> [b]");
        r.expect("item2.search", find_groupoid_isomorphism(xi.gerbe.B, pq.groupoid).has_value(),
                 "no isomorphism found by search");
        r.note("item2.arrows", B.num_arrows());
    }
    return r;
}

}  // namespace pbg
