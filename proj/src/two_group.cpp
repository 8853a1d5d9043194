#include "pbg/two_group.hpp"

namespace pbg {

ValidationReport check_crossed_module(const CrossedModule& cm) {
    ValidationReport r;
    const auto& H = *cm.H;
    const auto& G = *cm.G;
    r.merge(check_action(cm.C), "C");
    r.declare("action_by_automorphisms");
    for (Index g = 0; g < G.order(); ++g)
        for (Index a = 0; a < H.order(); ++a)
            for (Index b = 0; b < H.order(); ++b)
                if (cm.act(g, H.mul(a, b)) != H.mul(cm.act(g, a), cm.act(g, b)))
                    r.fail("action_by_automorphisms", "(" + G.label(g) + "," + H.label(a) + "," + H.label(b) + ")");
    r.merge(check_hom(cm.d), "d");
    r.declare("equivariance");
    r.declare("peiffer");
    // d(C_g h) = g d(h) g^-1
    for (Index g = 0; g < G.order(); ++g)
        for (Index h = 0; h < H.order(); ++h)
            if (cm.d(cm.act(g, h)) != G.conj(g, cm.d(h)))
                r.fail("equivariance", "(" + G.label(g) + "," + H.label(h) + ")");
    // C_{d(h)} h' = h h' h^-1
    for (Index h = 0; h < H.order(); ++h)
        for (Index k = 0; k < H.order(); ++k)
            if (cm.act(cm.d(h), k) != H.conj(h, k))
                r.fail("peiffer", "(" + H.label(h) + "," + H.label(k) + ")");
    return r;
}

CrossedModule normal_subgroup_crossed_module(GroupRef G, const std::vector<Index>& normal, std::string hname) {
    auto H = subgroup(*G, normal, std::move(hname));
    std::vector<Index> pos(G->order(), kNone);
    for (Index i = 0; i < normal.size(); ++i) pos[normal[i]] = i;
    std::vector<Index> t(G->order() * H->order());
    for (Index g = 0; g < G->order(); ++g)
        for (Index h = 0; h < H->order(); ++h) {
            Index c = pos[G->conj(g, normal[h])];
            if (c == kNone) raise(ErrorKind::PreconditionNotMet, "subgroup is not normal in " + G->name());
            t[g * H->order() + h] = c;
        }
    GroupAction C(G, H->labels(), std::move(t));
    GroupHom d(H, G, normal);
    return CrossedModule{H, G, std::move(C), std::move(d)};
}

CrossedModule gauge_crossed_module(GroupRef G) {
    std::vector<Index> id(G->order());
    for (Index i = 0; i < id.size(); ++i) id[i] = i;
    return CrossedModule{G, G, conjugation_action(G), GroupHom(G, G, id)};
}

CrossedModule identity_crossed_module(GroupRef G) {
    auto H = trivial_group("1");
    return CrossedModule{H, G, trivial_action(G, H->labels()), GroupHom(H, G, {G->unit()})};
}

CrossedModule trivial_d_crossed_module(GroupRef H, GroupRef G, GroupAction C) {
    std::vector<Index> d(H->order(), G->unit());
    return CrossedModule{H, G, std::move(C), GroupHom(H, G, d)};
}

TwoGroup::TwoGroup(CrossedModule cm) : cm_(std::move(cm)) {
    auto rep = check_crossed_module(cm_);
    if (!rep.ok()) raise(ErrorKind::InvalidCrossedModule, rep.first_failure());
    arrows_ = semidirect_product(cm_.H, cm_.G, cm_.C, cm_.H->name() + "x|" + cm_.G->name());
    const std::size_t n = arrows_->order();
    std::vector<Index> src(n), tgt(n);
    for (Index a = 0; a < n; ++a) {
        src[a] = s(a);
        tgt[a] = t(a);
    }
    const auto& H = *cm_.H;
    groupoid_ = share(FiniteGroupoid(
        arrows_->name(), cm_.G->labels(), arrows_->labels(), src, tgt,
        [&](Index b, Index a) { return arrow(H.mul(h_of(b), h_of(a)), g_of(a)); }));
}

GroupHom TwoGroup::s_hom() const {
    std::vector<Index> m(num_arrows());
    for (Index a = 0; a < m.size(); ++a) m[a] = s(a);
    return GroupHom(arrows_, cm_.G, m);
}

GroupHom TwoGroup::t_hom() const {
    std::vector<Index> m(num_arrows());
    for (Index a = 0; a < m.size(); ++a) m[a] = t(a);
    return GroupHom(arrows_, cm_.G, m);
}

GroupHom TwoGroup::e_hom() const {
    std::vector<Index> m(cm_.G->order());
    for (Index g = 0; g < m.size(); ++g) m[g] = e(g);
    return GroupHom(cm_.G, arrows_, m);
}

TwoGroupRef two_group_from_crossed_module(CrossedModule cm) {
    return std::make_shared<const TwoGroup>(std::move(cm));
}

ValidationReport check_group_groupoid(const GroupGroupoid& gg) {
    ValidationReport r;
    const auto& A = *gg.arrows;
    const auto& O = *gg.objects;
    const auto& P = *gg.groupoid;
    if (A.order() != P.num_arrows() || O.order() != P.num_objects())
        raise(ErrorKind::TableArity, "group-groupoid: group orders do not match the groupoid");
    r.merge(check_group(A), "arrows_group");
    r.merge(check_group(O), "objects_group");
    r.merge(check_groupoid(P), "groupoid");
    if (!r.ok()) return r;
    std::vector<Index> s(A.order()), t(A.order()), inv(A.order()), e(O.order());
    for (Index a = 0; a < A.order(); ++a) {
        s[a] = P.src(a);
        t[a] = P.tgt(a);
        inv[a] = P.inv(a);
    }
    for (Index o = 0; o < O.order(); ++o) e[o] = P.unit(o);
    r.merge(check_hom(GroupHom(gg.arrows, gg.objects, s)), "s");
    r.merge(check_hom(GroupHom(gg.arrows, gg.objects, t)), "t");
    r.merge(check_hom(GroupHom(gg.objects, gg.arrows, e)), "e");
    r.merge(check_hom(GroupHom(gg.arrows, gg.arrows, inv)), "inverse");
    // Composition is a homomorphism: (b o a)(d o c) = (bd) o (ac).
    r.declare("interchange");
    for (Index b = 0; b < A.order(); ++b)
        for (Index a : P.arrows_into(P.src(b)))
            for (Index d = 0; d < A.order(); ++d)
                for (Index c : P.arrows_into(P.src(d))) {
                    Index bd = A.mul(b, d), ac = A.mul(a, c);
                    if (!P.composable(bd, ac) || A.mul(P.comp(b, a), P.comp(d, c)) != P.comp(bd, ac))
                        r.fail("interchange", "(" + A.label(b) + "," + A.label(a) + "," + A.label(d) + "," +
                                                  A.label(c) + ")");
                }
    return r;
}

GroupGroupoid as_group_groupoid(const TwoGroup& tg) {
    return GroupGroupoid{tg.arrows_group(), tg.G_ref(), tg.groupoid()};
}

ValidationReport check_two_group(const TwoGroup& tg) { return check_group_groupoid(as_group_groupoid(tg)); }

GroupGroupoid pair_group_groupoid(GroupRef G) {
    auto A = direct_product(*G, *G, G->name() + "x" + G->name());
    auto P = share(pair_groupoid(G->labels(), "pair(" + G->name() + ")"));
    return GroupGroupoid{A, G, P};
}

GroupGroupoid identity_group_groupoid(GroupRef G) {
    std::vector<Index> ids(G->order());
    for (Index i = 0; i < ids.size(); ++i) ids[i] = i;
    auto P = share(FiniteGroupoid("id(" + G->name() + ")", G->labels(), G->labels(), ids, ids,
                                  [](Index b, Index) { return b; }));
    return GroupGroupoid{G, G, P};
}

NormalizedTwoGroup crossed_module_from_two_group(const GroupGroupoid& gg) {
    auto rep = check_group_groupoid(gg);
    if (!rep.ok()) raise(ErrorKind::StructureMapNotHom, rep.first_failure());
    const auto& A = *gg.arrows;
    const auto& P = *gg.groupoid;
    const auto& O = *gg.objects;
    std::vector<Index> kernel;
    for (Index a = 0; a < A.order(); ++a)
        if (P.src(a) == O.unit()) kernel.push_back(a);
    auto H = subgroup(A, kernel, "ker(s)");
    std::vector<Index> pos(A.order(), kNone);
    for (Index i = 0; i < kernel.size(); ++i) pos[kernel[i]] = i;
    std::vector<Index> t(O.order() * H->order());
    for (Index g = 0; g < O.order(); ++g)
        for (Index h = 0; h < H->order(); ++h)
            t[g * H->order() + h] = pos[A.conj(P.unit(g), kernel[h])];
    std::vector<Index> d(H->order());
    for (Index h = 0; h < H->order(); ++h) d[h] = P.tgt(kernel[h]);
    CrossedModule cm{H, gg.objects, GroupAction(gg.objects, H->labels(), std::move(t)), GroupHom(H, gg.objects, d)};
    return NormalizedTwoGroup{std::move(cm), std::move(kernel)};
}

PhiIso phi_iso(const GroupGroupoid& gg) {
    auto norm = crossed_module_from_two_group(gg);
    auto tg = two_group_from_crossed_module(norm.cm);
    const auto& A = *gg.arrows;
    const auto& P = *gg.groupoid;
    std::vector<Index> m(tg->num_arrows());
    for (Index a = 0; a < m.size(); ++a) m[a] = A.mul(norm.kernel[tg->h_of(a)], P.unit(tg->g_of(a)));
    std::vector<Index> obj(tg->G().order());
    for (Index g = 0; g < obj.size(); ++g) obj[g] = g;
    GroupHom hom(tg->arrows_group(), gg.arrows, m);
    GroupoidFunctor fun(tg->groupoid(), gg.groupoid, obj, m);
    if (!fun.bijective()) raise(ErrorKind::NotBijective, "(h,g) -> h e(g) is not a bijection");
    auto hr = check_hom(hom);
    if (!hr.ok()) raise(ErrorKind::StructureMapNotHom, "phi: " + hr.first_failure());
    auto fr = check_functor(fun);
    if (!fr.ok()) raise(ErrorKind::StructureMapNotHom, "phi: " + fr.first_failure());
    return PhiIso{tg, std::move(hom), std::move(fun)};
}

ValidationReport check_crossed_module_iso(const CrossedModule& a, const CrossedModule& b, const CrossedModuleIso& f) {
    ValidationReport r;
    r.merge(check_hom(GroupHom(a.H, b.H, f.alpha)), "alpha");
    r.merge(check_hom(GroupHom(a.G, b.G, f.beta)), "beta");
    auto bij = [](const std::vector<Index>& m, std::size_t n) {
        if (m.size() != n) return false;
        std::vector<char> hit(n, 0);
        for (Index v : m) {
            if (v >= n || hit[v]) return false;
            hit[v] = 1;
        }
        return true;
    };
    r.expect("alpha_bijective", bij(f.alpha, b.H->order()), "alpha");
    r.expect("beta_bijective", bij(f.beta, b.G->order()), "beta");
    r.declare("d_commutes");
    r.declare("C_commutes");
    for (Index h = 0; h < a.H->order(); ++h)
        if (b.d(f.alpha[h]) != f.beta[a.d(h)]) r.fail("d_commutes", a.H->label(h));
    for (Index g = 0; g < a.G->order(); ++g)
        for (Index h = 0; h < a.H->order(); ++h)
            if (f.alpha[a.act(g, h)] != b.act(f.beta[g], f.alpha[h]))
                r.fail("C_commutes", "(" + a.G->label(g) + "," + a.H->label(h) + ")");
    return r;
}

std::optional<CrossedModuleIso> find_crossed_module_isomorphism(const CrossedModule& a, const CrossedModule& b) {
    std::optional<CrossedModuleIso> out;
    if (a.H->order() != b.H->order() || a.G->order() != b.G->order()) return out;
    for_each_group_isomorphism(*a.G, *b.G, [&](const std::vector<Index>& beta) {
        for_each_group_isomorphism(*a.H, *b.H, [&](const std::vector<Index>& alpha) {
            CrossedModuleIso f{alpha, beta};
            if (check_crossed_module_iso(a, b, f).ok()) out = std::move(f);
            return !out;
        });
        return !out;
    });
    return out;
}

}  // namespace pbg
