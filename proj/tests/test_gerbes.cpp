#include <doctest.h>

#include "support.hpp"

using namespace pbgtest;

namespace {

PBGroupoid gauge_pb(unsigned n, std::size_t m) { return pb_groupoid_from_principal_bundle(catalog_pbgauge0(n, m)); }

TwoGroupRef a3s3() { return two_group_from_crossed_module(catalog_a3_s3()); }

}  // namespace

TEST_CASE("bundle gerbes: trivial gerbe and a broken star") {
    auto g = trivial_gerbe(a3s3(), pair_ref(2));
    CHECK(check_bundle_gerbe(g).ok());
    CHECK(g.B->num_arrows() == g.base->num_arrows() * g.tg->H().order());

    auto bad = g;
    std::swap(bad.star[g.B->num_arrows() + 0], bad.star[g.B->num_arrows() + 1]);
    auto r = check_bundle_gerbe(bad);
    CHECK_FALSE(r.ok());
    bool witnessed = false;
    for (const auto& c : r.checks())
        if (!c.ok()) witnessed = witnessed || !c.witnesses.empty();
    CHECK(witnessed);
}

TEST_CASE("Phi on the gauge family") {
    auto p = gauge_pb(2, 2);
    auto pi = catalog_point_surjection(pts(2));
    auto g = functor_phi(p, pi);
    CHECK(g.B->num_arrows() == 32);
    // Base P x_pt P: Y = M = {a,b} maps onto a point, so all 4 x 4 pairs.
    CHECK(g.base->num_arrows() == 16);
    CHECK(check_bundle_gerbe(g).ok());

    // Pi(e, unit at p) = (p,p)
    const auto& P = p.total();
    for (Index x = 0; x < P.num_objects(); ++x) {
        Index b = Index(p.tg().G().unit() * P.num_arrows() + P.unit(x));
        Index base_arrow = g.Pi.arr_map[b];
        CHECK(g.base->src(base_arrow) == x);
        CHECK(g.base->tgt(base_arrow) == x);
    }

    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u}) {
            auto q = gauge_pb(n, m);
            auto gg = functor_phi(q, catalog_point_surjection(pts(m)));
            CHECK(gg.B->num_arrows() == n * q.total().num_arrows());
            CHECK(check_bundle_gerbe(gg).ok());
        }

    // Base must be a fiber product for the given surjection.
    Surjection wrong(pts(2), pts(2), {0, 1});
    CHECK(throws_kind(ErrorKind::BaseNotFiberProduct, [&] { functor_phi(p, wrong); }));
}

TEST_CASE("Phi for the trivial 2-group") {
    auto triv = catalog_groups().trivial;
    auto p = pb_groupoid_from_principal_bundle(trivial_principal_bundle(triv, pts(2)));
    auto g = functor_phi(p, catalog_point_surjection(pts(2)));
    CHECK(check_bundle_gerbe(g).ok());
    CHECK(g.B->num_arrows() == g.base->num_arrows());
    CHECK(find_groupoid_isomorphism(g.B, g.base).has_value());
}

TEST_CASE("Xi and Psi") {
    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u}) {
            auto bt = base_trivial_from_principal_bundle(catalog_pbgauge0(n, m));
            auto xi = functor_xi(bt);
            CHECK(xi.splitting.ok());
            CHECK(check_bundle_gerbe(xi.gerbe).ok());
            CHECK(xi.gerbe.B->num_arrows() * n == bt.pb.total().num_arrows());
            // rho at a unit over (e, y) is e
            for (Index y = 0; y < bt.pb.base->num_objects(); ++y)
                CHECK(xi.gerbe.rho[xi.gerbe.B->unit(y)] == bt.pb.tg().G().unit());
            CHECK(verify_psi_xi_round_trip(bt).ok());
            CHECK(verify_xi_psi_round_trip(xi.gerbe).ok());
        }

    auto base = pair_ref(2);
    auto tp = trivial_pb(a3s3(), base);
    CHECK(verify_psi_xi_round_trip(tp).ok());
    auto tg = trivial_gerbe(a3s3(), base);
    CHECK(verify_xi_psi_round_trip(tg).ok());
    auto back = functor_xi(functor_psi(tg).pb).gerbe;
    CHECK(back.B->num_arrows() == tg.B->num_arrows());

    auto idg = share(identity_groupoid(pts(2)));
    auto over_id = functor_psi(trivial_gerbe(a3s3(), idg));
    CHECK(over_id.report.ok());
    CHECK(check_pb_groupoid(over_id.pb.pb).ok());
    CHECK(over_id.pb.pb.total().num_arrows() == 18 * 2);

    // Psi with the target map read literally is not equivariant.
    auto verbatim = functor_psi(tg, PsiConvention::Verbatim);
    CHECK_FALSE(verbatim.report.ok());
}

TEST_CASE("Xi needs a base-trivial PB groupoid") {
    auto p = gauge_pb(2, 2);
    std::vector<Index> bad_g(p.total().num_objects(), 0), bad_y(p.total().num_objects(), 0);
    CHECK(throws_kind(ErrorKind::NotBaseTrivial, [&] { make_base_trivial(p, bad_g, bad_y); }));
}

TEST_CASE("Phi against the partial quotient, explicit isomorphisms") {
    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u}) {
            auto bt = base_trivial_from_principal_bundle(catalog_pbgauge0(n, m));
            BgPqOptions o;
            o.pi = catalog_point_surjection(pts(m));
            o.triv_g = bt.triv_g;
            o.triv_y = bt.triv_y;
            auto r = verify_bg_pq(bt.pb, o);
            CHECK(r.ok());
            if (n == 2 && m == 2) CHECK(r.notes()["item1.arrows"] == 32);
        }
    auto triv = pb_groupoid_from_principal_bundle(trivial_principal_bundle(catalog_groups().trivial, pts(2)));
    BgPqOptions o;
    o.pi = catalog_point_surjection(pts(2));
    CHECK(verify_bg_pq(triv, o).ok());
    CHECK(throws_kind(ErrorKind::PreconditionNotMet, [&] { verify_bg_pq(triv, {}); }));
}

TEST_CASE("Phi is strictly functorial on translations") {
    // G x| G is abelian for G = Z2, so each unit arrow e(g) acts by a strict PB morphism.
    auto p = gauge_pb(2, 2);
    auto pi = catalog_point_surjection(pts(2));
    auto g = functor_phi(p, pi);
    const auto& tg = p.tg();
    for (Index x = 0; x < tg.G().order(); ++x) {
        Index u = tg.e(x);
        std::vector<Index> obj(p.total().num_objects()), arr(p.total().num_arrows());
        for (Index o = 0; o < obj.size(); ++o) obj[o] = p.action.obj(tg.g_of(u), o);
        for (Index f = 0; f < arr.size(); ++f) arr[f] = p.action.arr(u, f);
        GroupoidFunctor f(p.action.target, p.action.target, obj, arr);
        REQUIRE(check_functor(f).ok());
        auto F = phi_of_morphism(g, g, f);
        auto base = phi_base_of_morphism(g, g, f);
        CHECK(check_gerbe_morphism(g, g, F, base).ok());
    }
}
