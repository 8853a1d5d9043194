#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace pbgtest;

namespace {

PBGroupoid gauge_pb(unsigned n, std::size_t m) { return pb_groupoid_from_principal_bundle(catalog_pbgauge0(n, m)); }

TwoGroupRef trivial_2group() { return two_group_from_crossed_module(identity_crossed_module(catalog_groups().trivial)); }

}  // namespace

TEST_CASE("2-group actions") {
    auto t = trivial_two_group_action(trivial_2group(), pair_ref(3));
    CHECK(check_two_group_action(t).ok());

    auto p = gauge_pb(2, 2);
    CHECK(check_two_group_action(p.action).ok());
    // (h,g).(p,q) = (hg p, g q)
    const auto& tg = p.tg();
    const auto& P = p.total();
    const auto& obj = p.action.act_obj;
    for (Index u = 0; u < tg.num_arrows(); ++u)
        for (Index f = 0; f < P.num_arrows(); ++f) {
            Index hg = tg.G().mul(tg.h_of(u), tg.g_of(u));
            Index img = p.action.arr(u, f);
            CHECK(P.tgt(img) == obj.act(hg, P.tgt(f)));
            CHECK(P.src(img) == obj.act(tg.g_of(u), P.src(f)));
        }

    auto broken = p.action;
    std::swap(broken.act_arr.table[P.num_arrows() + 1], broken.act_arr.table[P.num_arrows() + 2]);
    CHECK_FALSE(check_two_group_action(broken).ok());
}

TEST_CASE("quotients of free actions") {
    auto p = gauge_pb(2, 2);
    auto q = quotient_pb(p.action);
    CHECK(q.base->num_arrows() == 4);
    CHECK(p.total().num_arrows() / p.tg().num_arrows() == 4);
    CHECK(find_groupoid_isomorphism(q.base, pair_ref(2)).has_value());
    CHECK(check_pb_groupoid(q).ok());

    auto P3 = pair_ref(3);
    auto tq = quotient_pb(trivial_two_group_action(trivial_2group(), P3));
    CHECK(find_groupoid_isomorphism(tq.base, P3).has_value());

    auto reg = regular_action(two_group_from_crossed_module(catalog_a3_s3()));
    auto rq = quotient_pb(reg);
    CHECK(rq.base->num_arrows() == 1);
    CHECK(rq.base->num_objects() == 1);

    auto nf = trivial_two_group_action(two_group_from_crossed_module(gauge_crossed_module(catalog_groups().Z2)), P3);
    CHECK(throws_kind(ErrorKind::NotFree, [&] { quotient_pb(nf); }));
}

TEST_CASE("partial quotients") {
    auto p = gauge_pb(2, 2);
    auto pq = partial_quotient(p);
    CHECK(pq.report.ok());
    CHECK(pq.groupoid->num_arrows() == 8);
    CHECK(pq.groupoid->num_objects() == 2);
    CHECK(p.total().num_arrows() / p.tg().G().order() == 8);

    auto t = pb_groupoid_from_principal_bundle(trivial_principal_bundle(catalog_groups().trivial, pts(2)));
    auto tq = partial_quotient(t);
    CHECK(find_groupoid_isomorphism(tq.groupoid, t.action.target).has_value());

    auto tg = two_group_from_crossed_module(catalog_a3_s3());
    auto rq = partial_quotient(regular_action(tg));
    CHECK(rq.groupoid->num_arrows() == tg->H().order());
    // Orbit oracle: (e,g')(h,g) = (C_{g'} h, g'g), so C_{g^-1} h labels the class.
    std::set<Index> hs;
    for (const auto& orb : rq.arrow_orbits) {
        std::set<Index> h;
        for (Index a : orb) h.insert(tg->crossed_module().act(tg->G().inv(tg->g_of(a)), tg->h_of(a)));
        CHECK(h.size() == 1);
        hs.insert(*h.begin());
    }
    CHECK(hs.size() == tg->H().order());

    // Restricted freeness suffices: H acts trivially, G freely.
    const auto& g = catalog_groups();
    auto cm = trivial_d_crossed_module(g.Z2, g.Z2, trivial_action(g.Z2, g.Z2->labels()));
    auto tg2 = two_group_from_crossed_module(cm);
    auto base = share(pair_groupoid(pts(2)));
    auto X = share(product_groupoid(*share(pair_groupoid(g.Z2->labels())), *base));
    std::vector<Index> ta(tg2->num_arrows() * X->num_arrows()), to(2 * X->num_objects());
    for (Index u = 0; u < tg2->num_arrows(); ++u)
        for (Index x = 0; x < X->num_arrows(); ++x) {
            Index gp = Index(x / 4), r = Index(x % 4);
            Index p0 = gp / 2, q0 = gp % 2;
            Index gu = tg2->g_of(u);
            ta[u * X->num_arrows() + x] = ((g.Z2->mul(gu, p0) * 2 + g.Z2->mul(gu, q0)) * 4) + r;
        }
    for (Index x = 0; x < 2; ++x)
        for (Index o = 0; o < X->num_objects(); ++o) to[x * X->num_objects() + o] = g.Z2->mul(x, o / 2) * 2 + o % 2;
    TwoGroupAction a{tg2, X, GroupAction(tg2->arrows_group(), X->arrow_labels(), ta),
                     GroupAction(g.Z2, X->object_labels(), to)};
    REQUIRE(check_two_group_action(a).ok());
    CHECK_FALSE(is_free(a.act_arr));
    auto half = partial_quotient(a);
    CHECK(half.report.ok());
    CHECK(half.report.notes()["full_action_free"] == false);
    CHECK(half.groupoid->num_arrows() == X->num_arrows() / 2);
}

TEST_CASE("PB groupoids from principal bundles") {
    const auto& g = catalog_groups();
    PrincipalBundle reg{left_translation(g.S3), Surjection(g.S3->labels(), {"pt"}, std::vector<Index>(6, 0))};
    auto p = pb_groupoid_from_principal_bundle(reg);
    CHECK(p.base->num_objects() == 1);
    CHECK(p.base->num_arrows() == 1);
    CHECK(check_pb_groupoid(p).ok());

    auto z2 = gauge_pb(2, 2);
    CHECK(find_groupoid_isomorphism(z2.base, quotient_pb(z2.action).base).has_value());

    auto z3 = gauge_pb(3, 2);
    CHECK(z3.base->num_arrows() == 4);
    CHECK(z3.total().num_arrows() == 36);
    CHECK(check_pb_groupoid(z3).ok());

    PrincipalBundle bad{trivial_action(g.Z2, pts(2)), Surjection(pts(2), {"pt"}, {0, 0})};
    CHECK(throws_kind(ErrorKind::NotFree, [&] { pb_groupoid_from_principal_bundle(bad); }));
}

TEST_CASE("PB invariants on the gauge family") {
    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u}) {
            auto p = gauge_pb(n, m);
            CHECK(check_pb_groupoid(p).ok());
            CHECK(check_fibration(p.proj).ok());
            CHECK(p.total().num_arrows() == p.tg().num_arrows() * p.base->num_arrows());

            // Two-step quotient = one-step: residual H acts on P/_G with quotient M.
            auto pq = partial_quotient(p);
            const auto& tg = p.tg();
            std::vector<std::set<Index>> per_base(p.base->num_arrows());
            for (Index f = 0; f < p.total().num_arrows(); ++f) {
                per_base[p.proj.arr_map[f]].insert(pq.Q.arr_map[f]);
                for (Index h = 0; h < tg.H().order(); ++h) {
                    Index moved = p.action.arr(tg.arrow(h, tg.G().unit()), f);
                    CHECK(p.proj.arr_map[moved] == p.proj.arr_map[f]);
                }
            }
            for (const auto& s : per_base) CHECK(s.size() == tg.H().order());
        }
}

TEST_CASE("groupoid actions and principal groupoid bundles") {
    const auto& g = catalog_groups();
    auto Z2 = share(group_as_groupoid(*g.Z2));
    auto reg = left_translation(g.Z2);
    GroupoidActionData d{Z2, reg.carrier, {0, 0}, reg.table};
    CHECK(check_groupoid_action(d).ok());
    PrincipalGroupoidBundle b{d, Surjection(reg.carrier, {"pt"}, {0, 0})};
    CHECK(check_principal_groupoid_bundle(b).ok());

    // The pair groupoid acting on its objects: (p,q) * q = p.
    auto P = pair_ref(2);
    std::vector<Index> star(4 * 2, kNone);
    for (Index a = 0; a < 4; ++a) star[a * 2 + P->src(a)] = P->tgt(a);
    GroupoidActionData pd{P, P->object_labels(), {0, 1}, star};
    CHECK(check_groupoid_action(pd).ok());
    pd.star[1 * 2 + 1] = 1;  // (a,b) * b := b
    auto r = check_groupoid_action(pd);
    CHECK_FALSE(r.ok());
    CHECK(r.violations("anchor") == 1);

    auto gerbe = functor_phi(gauge_pb(2, 2), catalog_point_surjection(pts(2)));
    CHECK(check_groupoid_action(gerbe.action_data()).ok());
}
