#include <doctest.h>

#include "pbg/nerve.hpp"
#include "support.hpp"

using namespace pbgtest;

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

PBGroupoid gauge_pb(unsigned n, std::size_t m) { return pb_groupoid_from_principal_bundle(catalog_pbgauge0(n, m)); }

}  // namespace

TEST_CASE("nerves of small groupoids") {
    Nerve id(share(identity_groupoid(pts(3))), 3);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(id.size(k) == 3);
    CHECK(check_simplicial(id.simplicial()).ok());

    for (std::size_t n = 1; n <= 3; ++n) {
        Nerve p(pair_ref(n), 4);
        for (std::size_t k = 0; k <= 4; ++k) CHECK(p.size(k) == ipow(n, k + 1));
        CHECK(check_simplicial(p.simplicial()).ok());
    }

    const auto& S3 = *catalog_groups().S3;
    Nerve g(share(group_as_groupoid(S3)), 3);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(g.size(k) == ipow(6, k));
    for (Index x = 0; x < g.size(2); ++x) {
        auto t = g.tuple(2, x);
        CHECK(g.face(2, 1, x) == g.index_of({S3.mul(t[0], t[1])}));
        CHECK(g.face(2, 0, x) == g.index_of({t[1]}));
        CHECK(g.face(2, 2, x) == g.index_of({t[0]}));
    }
    CHECK(check_simplicial(g.simplicial()).ok());
}

TEST_CASE("simplicial identities on catalog nerves to K = 4") {
    auto tg = two_group_from_crossed_module(catalog_a3_s3());
    for (const auto& G : {pair_ref(3), tg->groupoid(), gauge_pb(2, 2).action.target,
                          share(fiber_product_groupoid(catalog_pbgauge0(3, 2).proj))}) {
        Nerve n(G, 4);
        CHECK(check_simplicial(n.simplicial()).ok());
    }
    CHECK(check_simplicial(constant_simplicial(3, 4)).ok());

    Nerve p(pair_ref(2), 3);
    auto s = p.simplicial();
    std::swap(s.faces[2][0], s.faces[2][1]);
    CHECK_FALSE(check_simplicial(s).ok());
}

TEST_CASE("nerve membership is composability") {
    auto P = pair_ref(2);
    Nerve n(P, 2);
    std::size_t composable = 0;
    for (Index a = 0; a < 4; ++a)
        for (Index b = 0; b < 4; ++b) {
            bool c = P->src(a) == P->tgt(b);
            composable += c;
            CHECK((n.index_of({a, b}) != kNone) == c);
        }
    CHECK(composable == n.size(2));
}

TEST_CASE("pair groupoid faces delete a vertex") {
    CHECK(check_pair_nerve_faces(pts(3), 3).ok());
}

TEST_CASE("three models of the 2-group nerve") {
    const auto& g = catalog_groups();
    auto z2 = two_group_from_crossed_module(gauge_crossed_module(g.Z2));
    TwoGroupNerveModels m(z2, 3);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(m.size(k) == ipow(2, k) * 2);
    CHECK(m.verify().ok());

    TwoGroupNerveModels one(z2, 1);
    for (Index x = 0; x < one.size(1); ++x) {
        CHECK(one.a_to_b(1, x) == x);
        CHECK(one.b_to_c(1, x) == x);
    }

    auto a3 = two_group_from_crossed_module(catalog_a3_s3());
    TwoGroupNerveModels ma(a3, 3);
    auto r = ma.verify();
    CHECK(r.ok());
    CHECK(r.passed("outer_faces_C_closed"));
    // d_k in model C drops bold h_k.
    for (Index x = 0; x < ma.size(2); ++x) {
        Index c = ma.b_to_c(2, x);
        auto [hs, gg] = ma.decode(2, c);
        Index y = ma.face_c(2, 2, c);
        auto [hs1, g1] = ma.decode(1, y);
        CHECK(hs1[0] == hs[0]);
        CHECK(g1 == gg);
    }
}

TEST_CASE("nerve of a PB groupoid") {
    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u}) {
            auto p = gauge_pb(n, m);
            PBNerve pn(p, 3);
            for (std::size_t k = 0; k <= 3; ++k) CHECK(pn.P().size(k) == pn.G().size(k) * pn.M().size(k));
            CHECK(pn.verify().ok());
            CHECK(nerve_pb_report(p, 3).ok());
            CHECK(partial_quotient_nerve(p, 3).ok());
        }

    auto p = gauge_pb(2, 2);
    PBNerve pn(p, 2);
    CHECK(pn.P().size(2) == 64);
    // Level 0 is the G-action on objects.
    for (Index g = 0; g < 2; ++g)
        for (Index x = 0; x < p.total().num_objects(); ++x) CHECK(pn.act(0, g, x) == p.action.obj(g, x));

    auto t = pb_groupoid_from_principal_bundle(trivial_principal_bundle(catalog_groups().trivial, pts(2)));
    PBNerve tn(t, 3);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(tn.P().size(k) == tn.M().size(k));

    auto z2 = two_group_from_crossed_module(gauge_crossed_module(catalog_groups().Z2));
    auto P3 = pair_ref(3);
    PBGroupoid bad{trivial_two_group_action(z2, P3), P3, identity_functor(P3)};
    CHECK(throws_kind(ErrorKind::NotFreeAtLevel, [&] { nerve_pb_report(bad, 2); }));
}

TEST_CASE("partial quotient nerve") {
    auto p = gauge_pb(2, 2);
    auto r = partial_quotient_nerve(p, 1);
    CHECK(r.ok());
    auto pq = partial_quotient(p);
    Nerve q(pq.groupoid, 1);
    CHECK(q.size(1) == 8);
    CHECK(q.size(0) == p.base->num_objects());
    CHECK(partial_quotient_nerve(p, 0).ok());
}
