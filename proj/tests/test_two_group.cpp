#include <doctest.h>

#include "support.hpp"

using namespace pbgtest;

namespace {

CrossedModule s3_over_trivial() {
    const auto& g = catalog_groups();
    return CrossedModule{g.S3, g.trivial, trivial_action(g.trivial, g.S3->labels()),
                         GroupHom(g.S3, g.trivial, std::vector<Index>(6, 0))};
}

// Independent interchange scan on the canonical model: (b2 o b1)(a2 o a1) = (b2 a2) o (b1 a1).
std::size_t interchange_failures(const TwoGroup& tg) {
    std::size_t bad = 0;
    const Index n = Index(tg.num_arrows());
    for (Index b1 = 0; b1 < n; ++b1)
        for (Index b2 = 0; b2 < n; ++b2) {
            if (tg.s(b2) != tg.t(b1)) continue;
            for (Index a1 = 0; a1 < n; ++a1)
                for (Index a2 = 0; a2 < n; ++a2) {
                    if (tg.s(a2) != tg.t(a1)) continue;
                    if (tg.mul(tg.comp(b2, b1), tg.comp(a2, a1)) != tg.comp(tg.mul(b2, a2), tg.mul(b1, a1))) ++bad;
                }
        }
    return bad;
}

}  // namespace

TEST_CASE("crossed modules: catalog instances and the S3 counterexample") {
    CHECK(check_crossed_module(catalog_a3_s3()).ok());
    CHECK(check_crossed_module(catalog_abelian_dtrivial()).ok());
    auto r = check_crossed_module(s3_over_trivial());
    CHECK_FALSE(r.ok());
    CHECK(r.passed("equivariance"));
    CHECK_FALSE(r.passed("peiffer"));
    // Oracle: pairs (h,k) with h k h^-1 != k.
    const auto& S3 = *catalog_groups().S3;
    std::size_t noncommuting = 0;
    for (Index h = 0; h < 6; ++h)
        for (Index k = 0; k < 6; ++k) noncommuting += S3.conj(h, k) != k;
    CHECK(r.violations("peiffer") == noncommuting);
    CHECK(throws_kind(ErrorKind::InvalidCrossedModule, [] { two_group_from_crossed_module(s3_over_trivial()); }));
}

TEST_CASE("two-groups from crossed modules") {
    const auto& g = catalog_groups();
    auto z2 = CrossedModule{g.Z2, g.Z2, trivial_action(g.Z2, g.Z2->labels()), GroupHom(g.Z2, g.Z2, {0, 1})};
    auto t1 = two_group_from_crossed_module(z2);
    CHECK(t1->num_arrows() == 4);
    CHECK(check_two_group(*t1).ok());

    auto t2 = two_group_from_crossed_module(identity_crossed_module(g.S3));
    CHECK(t2->num_arrows() == 6);
    for (Index a = 0; a < 6; ++a) CHECK(t2->s(a) == t2->t(a));

    auto t3 = two_group_from_crossed_module(catalog_a3_s3());
    CHECK(t3->num_arrows() == 18);
    CHECK(check_groupoid(*t3->groupoid()).ok());
    CHECK(check_two_group(*t3).ok());
    for (auto h : {t3->s_hom(), t3->t_hom(), t3->e_hom()}) CHECK(check_hom(h).ok());
    for (Index a = 0; a < 18; ++a)
        CHECK(t3->t(a) == g.S3->mul(t3->crossed_module().d(t3->h_of(a)), t3->g_of(a)));
    CHECK(interchange_failures(*t3) == 0);
    CHECK(interchange_failures(*two_group_from_crossed_module(catalog_abelian_dtrivial())) == 0);
}

TEST_CASE("round trip crossed module -> 2-group -> crossed module") {
    const auto& g = catalog_groups();
    for (const auto& cm : {catalog_a3_s3(), catalog_abelian_dtrivial(), gauge_crossed_module(g.Z3),
                           identity_crossed_module(g.S3)}) {
        auto tg = two_group_from_crossed_module(cm);
        auto back = crossed_module_from_two_group(as_group_groupoid(*tg));
        CHECK(check_crossed_module(back.cm).ok());
        CHECK(groups_isomorphic_brute(*back.cm.H, *cm.H));
        auto iso = find_crossed_module_isomorphism(cm, back.cm);
        REQUIRE(iso);
        CHECK(check_crossed_module_iso(cm, back.cm, *iso).ok());
    }
    auto id = crossed_module_from_two_group(identity_group_groupoid(g.S3));
    CHECK(id.cm.H->order() == 1);
    CHECK(id.cm.G->order() == 6);
}

TEST_CASE("raw group-groupoids: G x| G and phi") {
    const auto& g = catalog_groups();
    auto gg = pair_group_groupoid(g.Z3);
    CHECK(check_group_groupoid(gg).ok());
    auto n = crossed_module_from_two_group(gg);
    CHECK(n.cm.H->order() == 3);
    // d is a bijection, hence H = G.
    std::vector<Index> seen(3, 0);
    for (Index h = 0; h < 3; ++h) ++seen[n.cm.d(h)];
    CHECK(seen == std::vector<Index>{1, 1, 1});
    auto phi = phi_iso(gg);
    CHECK(phi.functor.bijective());
    CHECK(phi.group_map.map.size() == 9);
    CHECK(check_hom(phi.group_map).ok());
    CHECK(check_functor(phi.functor).ok());

    auto idp = phi_iso(identity_group_groupoid(g.Z3));
    for (Index i = 0; i < idp.group_map.map.size(); ++i) CHECK(idp.group_map.map[i] == i);

    auto canon = phi_iso(as_group_groupoid(*two_group_from_crossed_module(catalog_a3_s3())));
    for (Index i = 0; i < canon.group_map.map.size(); ++i) CHECK(canon.group_map.map[i] == i);
}
