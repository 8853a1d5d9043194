#include "pbg/action.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace pbg {

namespace {

std::string lbl2(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

ValidationReport check_two_group_action(const TwoGroupAction& a) {
    ValidationReport r;
    const auto& tg = *a.tg;
    const auto& P = *a.target;
    if (a.act_arr.group->order() != tg.num_arrows() || a.act_arr.size() != P.num_arrows() ||
        a.act_obj.group->order() != tg.G().order() || a.act_obj.size() != P.num_objects())
        raise(ErrorKind::TableArity, "2-group action tables do not match the 2-group and groupoid");
    r.merge(check_action(a.act_arr), "act_arr");
    r.merge(check_action(a.act_obj), "act_obj");
    for (const char* c : {"source_equivariance", "target_equivariance", "unit_compatibility", "multiplicativity"})
        r.declare(c);
    const auto& UG = *tg.arrows_group();
    for (Index u = 0; u < tg.num_arrows(); ++u)
        for (Index f = 0; f < P.num_arrows(); ++f) {
            Index uf = a.arr(u, f);
            if (P.src(uf) != a.obj(tg.s(u), P.src(f))) r.fail("source_equivariance", lbl2(UG.label(u), P.arrow_label(f)));
            if (P.tgt(uf) != a.obj(tg.t(u), P.tgt(f))) r.fail("target_equivariance", lbl2(UG.label(u), P.arrow_label(f)));
        }
    for (Index g = 0; g < tg.G().order(); ++g)
        for (Index p = 0; p < P.num_objects(); ++p)
            if (a.arr(tg.e(g), P.unit(p)) != P.unit(a.obj(g, p)))
                r.fail("unit_compatibility", lbl2(tg.G().label(g), P.object_label(p)));
    const auto& T = *tg.groupoid();
    for (Index u2 = 0; u2 < tg.num_arrows(); ++u2)
        for (Index u1 : T.arrows_into(T.src(u2))) {
            Index u = T.comp(u2, u1);
            for (Index f2 = 0; f2 < P.num_arrows(); ++f2)
                for (Index f1 : P.arrows_into(P.src(f2))) {
                    Index x2 = a.arr(u2, f2), x1 = a.arr(u1, f1);
                    if (!P.composable(x2, x1) || P.comp(x2, x1) != a.arr(u, P.comp(f2, f1)))
                        r.fail("multiplicativity", "(" + UG.label(u2) + "," + UG.label(u1) + "," +
                                                       P.arrow_label(f2) + "," + P.arrow_label(f1) + ")");
                }
        }
    return r;
}

TwoGroupAction regular_action(TwoGroupRef tg) {
    auto A = tg->arrows_group();
    auto G = tg->G_ref();
    return TwoGroupAction{tg, tg->groupoid(), left_translation(A), left_translation(G)};
}

TwoGroupAction trivial_two_group_action(TwoGroupRef tg, GroupoidRef target) {
    auto arr = trivial_action(tg->arrows_group(), target->arrow_labels());
    auto obj = trivial_action(tg->G_ref(), target->object_labels());
    return TwoGroupAction{std::move(tg), std::move(target), std::move(arr), std::move(obj)};
}

GroupoidQuotient quotient_by_subgroup(const TwoGroupAction& a, const std::vector<Index>& elems, std::string name) {
    const auto& P = *a.target;
    const auto& UG = *a.tg->arrows_group();
    const auto& G = a.tg->G();
    for (Index u : elems) {
        if (u == UG.unit()) continue;
        for (Index f = 0; f < P.num_arrows(); ++f)
            if (a.arr(u, f) == f)
                raise(ErrorKind::NotFree, UG.label(u) + " fixes arrow " + P.arrow_label(f));
    }
    if (auto fp = fixed_point(a.act_obj))
        raise(ErrorKind::NotFree, G.label(fp->first) + " fixes object " + P.object_label(fp->second));

    auto orbits_of = [](std::size_t n, auto&& image, auto&& label) {
        std::vector<Index> cls(n, kNone);
        std::vector<std::vector<Index>> orbits;
        for (Index x = 0; x < n; ++x) {
            if (cls[x] != kNone) continue;
            std::vector<Index> orb = image(x);
            std::sort(orb.begin(), orb.end());
            orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
            for (Index y : orb) cls[y] = Index(orbits.size());
            orbits.push_back(std::move(orb));
        }
        std::vector<std::string> key(orbits.size());
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            key[i] = label(orbits[i][0]);
            for (Index y : orbits[i]) key[i] = std::min(key[i], std::string(label(y)));
        }
        std::vector<Index> order(orbits.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Index x, Index y) { return key[x] < key[y]; });
        std::vector<Index> rank(orbits.size());
        std::vector<std::vector<Index>> sorted;
        std::vector<std::string> labels;
        for (Index i = 0; i < order.size(); ++i) {
            rank[order[i]] = i;
            sorted.push_back(orbits[order[i]]);
            labels.push_back("[" + key[order[i]] + "]");
        }
        for (auto& c : cls) c = rank[c];
        return std::make_tuple(cls, sorted, labels);
    };

    auto [acls, aorb, alabels] = orbits_of(
        P.num_arrows(),
        [&](Index f) {
            std::vector<Index> o;
            for (Index u : elems) o.push_back(a.arr(u, f));
            return o;
        },
        [&](Index f) -> const std::string& { return P.arrow_label(f); });
    auto [ocls, oorb, olabels] = orbits_of(
        P.num_objects(),
        [&](Index p) {
            std::vector<Index> o;
            for (Index g = 0; g < G.order(); ++g) o.push_back(a.obj(g, p));
            return o;
        },
        [&](Index p) -> const std::string& { return P.object_label(p); });

    const std::size_t nc = aorb.size();
    std::vector<Index> qsrc(nc), qtgt(nc);
    for (Index c = 0; c < nc; ++c) {
        qsrc[c] = ocls[P.src(aorb[c][0])];
        qtgt[c] = ocls[P.tgt(aorb[c][0])];
        for (Index f : aorb[c])
            if (ocls[P.src(f)] != qsrc[c] || ocls[P.tgt(f)] != qtgt[c])
                raise(ErrorKind::IllDefinedComposition, "endpoints of class " + alabels[c] + " are not well defined");
    }
    std::unordered_map<std::uint64_t, Index> table;
    for (Index c1 = 0; c1 < nc; ++c1) {
        Index f1 = aorb[c1][0];
        for (Index c2 = 0; c2 < nc; ++c2) {
            if (qsrc[c2] != qtgt[c1]) continue;
            Index val = kNone;
            for (Index f2 : aorb[c2])
                if (P.src(f2) == P.tgt(f1)) {
                    val = acls[P.comp(f2, f1)];
                    break;
                }
            if (val == kNone)
                raise(ErrorKind::IllDefinedComposition,
                      "no composable representatives for " + alabels[c2] + " o " + alabels[c1]);
            table[std::uint64_t(c2) * nc + c1] = val;
        }
    }
    for (Index f2 = 0; f2 < P.num_arrows(); ++f2)
        for (Index f1 : P.arrows_into(P.src(f2)))
            if (table.at(std::uint64_t(acls[f2]) * nc + acls[f1]) != acls[P.comp(f2, f1)])
                raise(ErrorKind::IllDefinedComposition,
                      "representatives " + P.arrow_label(f2) + ", " + P.arrow_label(f1) + " disagree");

    auto Qg = share(FiniteGroupoid(std::move(name), olabels, alabels, qsrc, qtgt, [&](Index b, Index c) {
        return table.at(std::uint64_t(b) * nc + c);
    }));
    GroupoidFunctor proj(a.target, Qg, ocls, acls);
    return GroupoidQuotient{Qg, std::move(proj), std::move(aorb), std::move(oorb)};
}

ValidationReport check_fibration(const GroupoidFunctor& proj) {
    ValidationReport r;
    r.declare("fibration");
    const auto& P = *proj.dom;
    const auto& M = *proj.cod;
    std::vector<char> hit(M.num_arrows() * P.num_objects(), 0);
    for (Index f = 0; f < P.num_arrows(); ++f) hit[std::size_t(proj.arr_map[f]) * P.num_objects() + P.src(f)] = 1;
    for (Index g = 0; g < M.num_arrows(); ++g)
        for (Index p = 0; p < P.num_objects(); ++p)
            if (proj.obj_map[p] == M.src(g) && !hit[std::size_t(g) * P.num_objects() + p])
                r.fail("fibration", lbl2(M.arrow_label(g), P.object_label(p)));
    return r;
}

ValidationReport check_pb_groupoid(const PBGroupoid& p) {
    ValidationReport r;
    const auto& a = p.action;
    const auto& P = *a.target;
    const auto& M = *p.base;
    const auto& tg = *a.tg;
    r.merge(check_two_group_action(a), "action");
    r.declare("free_arrows");
    r.declare("free_objects");
    if (auto fp = fixed_point(a.act_arr))
        r.fail("free_arrows", lbl2(tg.arrows_group()->label(fp->first), P.arrow_label(fp->second)));
    if (auto fp = fixed_point(a.act_obj)) r.fail("free_objects", lbl2(tg.G().label(fp->first), P.object_label(fp->second)));
    r.merge(check_groupoid(M), "base");
    r.merge(check_functor(p.proj), "proj");
    for (const char* c : {"proj_invariant_arrows", "proj_invariant_objects", "orbit_bijection_arrows",
                          "orbit_bijection_objects"})
        r.declare(c);
    for (Index u = 0; u < tg.num_arrows(); ++u)
        for (Index f = 0; f < P.num_arrows(); ++f)
            if (p.proj.arr_map[a.arr(u, f)] != p.proj.arr_map[f])
                r.fail("proj_invariant_arrows", lbl2(tg.arrows_group()->label(u), P.arrow_label(f)));
    for (Index g = 0; g < tg.G().order(); ++g)
        for (Index x = 0; x < P.num_objects(); ++x)
            if (p.proj.obj_map[a.obj(g, x)] != p.proj.obj_map[x])
                r.fail("proj_invariant_objects", lbl2(tg.G().label(g), P.object_label(x)));
    // With invariance and freeness, a fiber is one orbit iff it has the group's size.
    std::vector<std::size_t> fa(M.num_arrows(), 0), fo(M.num_objects(), 0);
    for (Index v : p.proj.arr_map) ++fa[v];
    for (Index v : p.proj.obj_map) ++fo[v];
    for (Index g = 0; g < M.num_arrows(); ++g)
        if (fa[g] != tg.num_arrows()) r.fail("orbit_bijection_arrows", M.arrow_label(g));
    for (Index m = 0; m < M.num_objects(); ++m)
        if (fo[m] != tg.G().order()) r.fail("orbit_bijection_objects", M.object_label(m));
    r.merge(check_fibration(p.proj));
    return r;
}

PBGroupoid quotient_pb(const TwoGroupAction& a) {
    std::vector<Index> all(a.tg->num_arrows());
    std::iota(all.begin(), all.end(), 0);
    auto q = quotient_by_subgroup(a, all, a.target->name() + "/R");
    return PBGroupoid{a, q.groupoid, std::move(q.projection)};
}

PartialQuotient partial_quotient(const TwoGroupAction& a) {
    const auto& tg = *a.tg;
    std::vector<Index> sect;
    for (Index g = 0; g < tg.G().order(); ++g) sect.push_back(tg.e(g));
    auto q = quotient_by_subgroup(a, sect, a.target->name() + "/_G");
    PartialQuotient out{q.groupoid, std::move(q.projection), std::move(q.arrow_orbits), std::move(q.object_orbits), {}};
    out.report.note("full_action_free", is_free(a.act_arr) && is_free(a.act_obj));
    out.report.note("restricted_action_free", true);
    out.report.merge(check_groupoid(*out.groupoid), "quotient");
    out.report.merge(check_functor(out.Q), "Q");

    // Q as a principal bundle groupoid for the identity 2-group G => G.
    auto idg = two_group_from_crossed_module(identity_crossed_module(tg.G_ref()));
    const auto& P = *a.target;
    std::vector<Index> t(tg.G().order() * P.num_arrows());
    for (Index g = 0; g < tg.G().order(); ++g)
        for (Index f = 0; f < P.num_arrows(); ++f) t[g * P.num_arrows() + f] = a.arr(tg.e(g), f);
    TwoGroupAction ga{idg, a.target, GroupAction(idg->arrows_group(), P.arrow_labels(), std::move(t)), a.act_obj};
    out.report.merge(check_pb_groupoid(PBGroupoid{ga, out.groupoid, out.Q}), "principal_G");
    return out;
}

ValidationReport check_principal_bundle(const PrincipalBundle& b) {
    ValidationReport r;
    r.merge(check_action(b.action), "action");
    r.declare("free");
    if (auto fp = fixed_point(b.action))
        r.fail("free", lbl2(b.action.group->label(fp->first), b.action.carrier[fp->second]));
    r.declare("invariant");
    r.declare("orbit_bijection");
    const auto& G = *b.action.group;
    if (b.proj.domain.size() != b.action.size()) raise(ErrorKind::TableArity, "bundle projection does not cover P");
    for (Index g = 0; g < G.order(); ++g)
        for (Index p = 0; p < b.action.size(); ++p)
            if (b.proj.map[b.action.act(g, p)] != b.proj.map[p]) r.fail("invariant", lbl2(G.label(g), b.action.carrier[p]));
    for (const auto& f : b.proj.fibers())
        if (f.size() != G.order()) r.fail("orbit_bijection", b.proj.codomain[b.proj.map[f.at(0)]]);
    return r;
}

PrincipalBundle trivial_principal_bundle(GroupRef G, const std::vector<std::string>& M) {
    const std::size_t nm = M.size();
    std::vector<std::string> P;
    std::vector<Index> proj;
    for (Index g = 0; g < G->order(); ++g)
        for (Index m = 0; m < nm; ++m) {
            P.push_back(lbl2(G->label(g), M[m]));
            proj.push_back(m);
        }
    std::vector<Index> t(G->order() * P.size());
    for (Index h = 0; h < G->order(); ++h)
        for (Index p = 0; p < P.size(); ++p) t[h * P.size() + p] = Index(G->mul(h, p / nm) * nm + p % nm);
    return PrincipalBundle{GroupAction(G, P, std::move(t)), Surjection(P, M, proj)};
}

PBGroupoid pb_groupoid_from_principal_bundle(const PrincipalBundle& b) {
    auto rep = check_principal_bundle(b);
    if (!rep.passed("free")) raise(ErrorKind::NotFree, rep.first_failure());
    if (!rep.ok()) raise(ErrorKind::PreconditionNotMet, "not a principal bundle: " + rep.first_failure());
    auto Gp = b.action.group;
    const auto& G = *Gp;
    auto tg = two_group_from_crossed_module(gauge_crossed_module(Gp));
    auto target = share(pair_groupoid(b.action.carrier, "pair(P)"));
    const std::size_t np = b.action.size(), na = np * np;
    std::vector<Index> t(tg->num_arrows() * na);
    for (Index u = 0; u < tg->num_arrows(); ++u) {
        Index h = tg->h_of(u), g = tg->g_of(u);
        Index hg = G.mul(h, g);
        for (Index p = 0; p < np; ++p)
            for (Index q = 0; q < np; ++q)
                t[u * na + p * np + q] = Index(b.action.act(hg, p) * np + b.action.act(g, q));
    }
    TwoGroupAction act{tg, target, GroupAction(tg->arrows_group(), target->arrow_labels(), std::move(t)), b.action};
    auto base = share(pair_groupoid(b.proj.codomain, "pair(M)"));
    const std::size_t nm = b.proj.codomain.size();
    std::vector<Index> pa(na);
    for (Index p = 0; p < np; ++p)
        for (Index q = 0; q < np; ++q) pa[p * np + q] = Index(b.proj.map[p] * nm + b.proj.map[q]);
    GroupoidFunctor proj(target, base, b.proj.map, std::move(pa));
    return PBGroupoid{std::move(act), base, std::move(proj)};
}

ValidationReport check_base_trivial(const PBGroupoid& p, const std::vector<Index>& triv_g,
                                    const std::vector<Index>& triv_y) {
    ValidationReport r;
    const auto& P = *p.action.target;
    const auto& G = p.action.tg->G();
    const std::size_t ny = p.base->num_objects();
    if (triv_g.size() != P.num_objects() || triv_y.size() != P.num_objects())
        raise(ErrorKind::TableArity, "trivialization must cover every object of P");
    r.declare("bijective");
    r.declare("intertwines");
    r.declare("over_base");
    std::vector<char> hit(G.order() * ny, 0);
    for (Index x = 0; x < P.num_objects(); ++x) {
        if (triv_g[x] >= G.order() || triv_y[x] >= ny) {
            r.fail("bijective", P.object_label(x));
            continue;
        }
        auto& h = hit[triv_g[x] * ny + triv_y[x]];
        if (h) r.fail("bijective", P.object_label(x));
        h = 1;
        if (triv_y[x] != p.proj.obj_map[x]) r.fail("over_base", P.object_label(x));
    }
    if (!r.ok()) return r;
    for (Index g = 0; g < G.order(); ++g)
        for (Index x = 0; x < P.num_objects(); ++x) {
            Index y = p.action.obj(g, x);
            if (triv_g[y] != G.mul(g, triv_g[x]) || triv_y[y] != triv_y[x])
                r.fail("intertwines", lbl2(G.label(g), P.object_label(x)));
        }
    return r;
}

BaseTrivialPB make_base_trivial(PBGroupoid p, std::vector<Index> triv_g, std::vector<Index> triv_y) {
    auto rep = check_base_trivial(p, triv_g, triv_y);
    if (!rep.ok()) raise(ErrorKind::NotBaseTrivial, rep.first_failure());
    const std::size_t ny = p.base->num_objects();
    std::vector<Index> inv(p.action.tg->G().order() * ny);
    for (Index x = 0; x < triv_g.size(); ++x) inv[triv_g[x] * ny + triv_y[x]] = x;
    return BaseTrivialPB{std::move(p), std::move(triv_g), std::move(triv_y), std::move(inv)};
}

BaseTrivialPB base_trivial_from_principal_bundle(const PrincipalBundle& b) {
    auto pb = pb_groupoid_from_principal_bundle(b);
    // Section: least point of each fiber.
    const auto& G = *b.action.group;
    const auto fib = b.proj.fibers();
    std::vector<Index> tg(b.action.size()), ty(b.action.size());
    for (Index m = 0; m < fib.size(); ++m) {
        Index s = fib[m].at(0);
        for (Index g = 0; g < G.order(); ++g) {
            Index x = b.action.act(g, s);
            tg[x] = g;
            ty[x] = m;
        }
    }
    return make_base_trivial(std::move(pb), std::move(tg), std::move(ty));
}

ValidationReport check_groupoid_action(const GroupoidActionData& d) {
    ValidationReport r;
    const auto& A = *d.acting;
    const std::size_t nb = d.carrier.size();
    if (d.anchor.size() != nb || d.star.size() != A.num_arrows() * nb)
        raise(ErrorKind::TableArity, "groupoid action tables do not match carrier");
    for (const char* c : {"domain", "anchor", "unit", "composition"}) r.declare(c);
    for (Index g = 0; g < A.num_arrows(); ++g)
        for (Index b = 0; b < nb; ++b) {
            Index v = d.act(g, b);
            bool def = A.src(g) == d.anchor[b];
            if ((v != kNone) != def || (v != kNone && v >= nb)) {
                r.fail("domain", lbl2(A.arrow_label(g), d.carrier[b]));
                continue;
            }
            if (def && d.anchor[v] != A.tgt(g)) r.fail("anchor", lbl2(A.arrow_label(g), d.carrier[b]));
        }
    if (!r.passed("domain")) return r;
    for (Index b = 0; b < nb; ++b)
        if (d.act(A.unit(d.anchor[b]), b) != b) r.fail("unit", d.carrier[b]);
    for (Index b = 0; b < nb; ++b)
        for (Index g1 : A.arrows_from(d.anchor[b])) {
            Index x = d.act(g1, b);
            for (Index g2 : A.arrows_from(A.tgt(g1))) {
                Index lhs = d.act(A.comp(g2, g1), b);
                Index rhs = d.anchor[x] == A.src(g2) ? d.act(g2, x) : kNone;
                if (lhs != rhs)
                    r.fail("composition", "(" + A.arrow_label(g2) + "," + A.arrow_label(g1) + "," + d.carrier[b] + ")");
            }
        }
    return r;
}

std::vector<Index> action_orbits(const GroupoidActionData& d) {
    const std::size_t nb = d.carrier.size();
    std::vector<Index> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index g = 0; g < d.acting->num_arrows(); ++g)
        for (Index b = 0; b < nb; ++b) {
            Index v = d.act(g, b);
            if (v == kNone) continue;
            Index x = root(b), y = root(v);
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    std::vector<Index> cls(nb), id(nb, kNone);
    Index next = 0;
    for (Index b = 0; b < nb; ++b) {
        Index rt = root(b);
        if (id[rt] == kNone) id[rt] = next++;
        cls[b] = id[rt];
    }
    return cls;
}

ValidationReport check_principal_groupoid_bundle(const PrincipalGroupoidBundle& b) {
    ValidationReport r = check_groupoid_action(b.data);
    if (!r.passed("domain")) return r;
    const auto& A = *b.data.acting;
    const std::size_t nb = b.data.carrier.size();
    if (b.Pi.domain.size() != nb) raise(ErrorKind::TableArity, "bundle projection does not cover the carrier");
    r.declare("free");
    r.declare("invariant");
    r.declare("orbit_bijection");
    for (Index g = 0; g < A.num_arrows(); ++g)
        for (Index x = 0; x < nb; ++x) {
            Index v = b.data.act(g, x);
            if (v == kNone) continue;
            if (v == x && g != A.unit(A.src(g))) r.fail("free", lbl2(A.arrow_label(g), b.data.carrier[x]));
            if (b.Pi.map[v] != b.Pi.map[x]) r.fail("invariant", lbl2(A.arrow_label(g), b.data.carrier[x]));
        }
    auto cls = action_orbits(b.data);
    std::vector<Index> image;
    Index norb = 0;
    for (Index c : cls) norb = std::max(norb, c + 1);
    image.assign(norb, kNone);
    for (Index x = 0; x < nb; ++x) {
        if (image[cls[x]] == kNone) image[cls[x]] = b.Pi.map[x];
        else if (image[cls[x]] != b.Pi.map[x]) r.fail("orbit_bijection", b.data.carrier[x]);
    }
    std::vector<char> hit(b.Pi.codomain.size(), 0);
    for (Index m : image) {
        if (hit[m]) r.fail("orbit_bijection", b.Pi.codomain[m]);
        hit[m] = 1;
    }
    return r;
}

}  // namespace pbg
