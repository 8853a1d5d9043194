#include <doctest.h>

#include "support.hpp"

using namespace pbgtest;

TEST_CASE("groups: small catalog groups are valid") {
    const auto& g = catalog_groups();
    for (const auto& x : {g.trivial, g.Z2, g.Z3, g.Z4, g.S3}) {
        CHECK(check_group(*x).ok());
        CHECK(assoc_failures_brute(*x) == 0);
        for (Index a = 0; a < x->order(); ++a) {
            std::size_t inverses = 0;
            for (Index b = 0; b < x->order(); ++b) inverses += x->mul(a, b) == x->unit() && x->mul(b, a) == x->unit();
            CHECK(inverses == 1);
            CHECK(x->mul(a, x->inv(a)) == x->unit());
        }
    }
    CHECK(g.trivial->order() == 1);
    CHECK(g.Z2->mul(1, 1) == 0);
}

TEST_CASE("groups: corrupted Z3 table is caught with a witness") {
    auto t = catalog_groups().Z3->table();
    t[1 * 3 + 2] = 1;  // 1+2 := 1
    FiniteGroup bad("Z3bad", {"0", "1", "2"}, t);
    auto r = check_group(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.violations("associativity") == assoc_failures_brute(bad));
    CHECK(r.violations("associativity") > 0);
    for (const auto& c : r.checks())
        if (c.name == "associativity") CHECK_FALSE(c.witnesses.empty());
}

TEST_CASE("groups: table shape errors") {
    CHECK(throws_kind(ErrorKind::TableArity, [] { FiniteGroup("x", {"a", "b"}, {0, 1, 1}); }));
    CHECK(throws_kind(ErrorKind::TableArity, [] { FiniteGroup::from_rows("x", {"a", "b"}, {{0, 1}, {1}}); }));
    CHECK(throws_kind(ErrorKind::EmptyCarrier, [] { FiniteGroup("x", {}, {}); }));
}

TEST_CASE("homs: identity, reduction, and Z3 -> Z2") {
    const auto& g = catalog_groups();
    CHECK(check_hom(GroupHom(g.S3, g.S3, {0, 1, 2, 3, 4, 5})).ok());
    CHECK(check_hom(GroupHom(g.Z4, g.Z2, {0, 1, 0, 1})).ok());
    // All 8 maps Z3 -> Z2: only the constant-unit map is a hom.
    std::size_t homs = 0;
    for (Index m = 0; m < 8; ++m) {
        std::vector<Index> f{Index(m & 1), Index((m >> 1) & 1), Index((m >> 2) & 1)};
        bool brute = true;
        for (Index x = 0; x < 3; ++x)
            for (Index y = 0; y < 3; ++y) brute = brute && f[(x + y) % 3] == ((f[x] + f[y]) & 1);
        bool ok = check_hom(GroupHom(g.Z3, g.Z2, f)).ok();
        CHECK(ok == brute);
        homs += ok;
        if (f != std::vector<Index>{0, 0, 0}) CHECK_FALSE(ok);
    }
    CHECK(homs == 1);
}

TEST_CASE("actions: regular, trivial, conjugation") {
    const auto& g = catalog_groups();
    auto reg = left_translation(g.Z2);
    CHECK(check_action(reg).ok());
    CHECK(is_free(reg));
    auto triv = trivial_action(g.Z2, pts(3));
    CHECK(check_action(triv).ok());
    CHECK_FALSE(is_free(triv));
    auto conj = conjugation_action(g.S3);
    CHECK(check_action(conj).ok());
    CHECK_FALSE(is_free(conj));
    auto fp = fixed_point(conj);
    REQUIRE(fp);
    CHECK(conj.act(fp->first, fp->second) == fp->second);
}

TEST_CASE("semidirect products") {
    const auto& g = catalog_groups();
    auto triv = GroupAction(g.Z2, g.Z2->labels(), {0, 1, 0, 1});
    auto sd = semidirect_product(g.Z2, g.Z2, triv);
    auto dp = direct_product(*g.Z2, *g.Z2);
    CHECK(sd->table() == dp->table());

    auto inv = catalog_abelian_dtrivial().C;
    auto s = semidirect_product(g.Z3, g.Z2, inv);
    CHECK(s->order() == 6);
    CHECK(check_group(*s).ok());
    CHECK(groups_isomorphic_brute(*s, *g.S3));
    CHECK(find_group_isomorphism(*s, *g.S3).has_value());
    CHECK_FALSE(find_group_isomorphism(*s, *cyclic_group(6)).has_value());

    auto e = semidirect_product(g.trivial, g.S3, GroupAction(g.S3, g.trivial->labels(), std::vector<Index>(6, 0)));
    CHECK(groups_isomorphic_brute(*e, *g.S3));

    // (h,g)^-1 = (C_{g^-1} h^-1, g^-1)
    for (Index h = 0; h < 3; ++h)
        for (Index x = 0; x < 2; ++x) {
            Index gi = g.Z2->inv(x);
            CHECK(s->inv(sd_index(h, x, 2)) == sd_index(inv.act(gi, g.Z3->inv(h)), gi, 2));
        }

    // Z2 on Z3 by a map that is not an automorphism.
    CHECK(throws_kind(ErrorKind::NotByAutomorphisms, [&] {
        semidirect_product(g.Z3, g.Z2, GroupAction(g.Z2, g.Z3->labels(), {0, 1, 2, 0, 2, 2}));
    }));
}

TEST_CASE("groupoids: identity, pair, corruption") {
    auto id3 = identity_groupoid(pts(3));
    CHECK(check_groupoid(id3).ok());
    CHECK(id3.num_arrows() == 3);
    for (std::size_t n = 1; n <= 6; ++n) {
        auto p = pair_groupoid(pts(n));
        CHECK(p.num_arrows() == n * n);
        CHECK(check_groupoid(p).ok());
    }
    auto p2 = pair_groupoid(pts(2));
    std::vector<Index> inv(4);
    for (Index a = 0; a < 4; ++a) inv[a] = p2.inv(a);
    inv[1] = 1;  // (a,b)^-1 := (a,b)
    FiniteGroupoid bad("bad", p2.object_labels(), p2.arrow_labels(), p2.src_table(), p2.tgt_table(),
                       [&](Index b, Index a) { return p2.comp(b, a); }, inv);
    auto r = check_groupoid(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.violations("inverse") >= 1);
    CHECK(throws_kind(ErrorKind::EmptyCarrier, [] { pair_groupoid({}); }));
    CHECK(throws_kind(ErrorKind::NotComposable, [&] { p2.comp(p2.arrow_index("(a,b)"), p2.arrow_index("(a,b)")); }));
}

TEST_CASE("groupoids: units and inverses are canonical") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto p = pair_groupoid(pts(n));
        for (Index a = 0; a < p.num_arrows(); ++a) {
            CHECK(p.inv(p.inv(a)) == a);
            bool idem = p.src(a) == p.tgt(a) && p.comp(a, a) == a;
            CHECK(idem == (a == p.unit(p.src(a))));
        }
    }
}

TEST_CASE("fiber products and pullbacks") {
    Surjection bij(pts(3), pts(3), {2, 0, 1});
    auto fb = fiber_product_groupoid(bij);
    CHECK(fb.num_arrows() == 3);
    for (Index a = 0; a < 3; ++a) CHECK(fb.src(a) == fb.tgt(a));

    auto b = catalog_pbgauge0(2, 2);
    auto fp = fiber_product_groupoid(b.proj);
    std::size_t sq = 0;
    for (const auto& f : b.proj.fibers()) sq += f.size() * f.size();
    CHECK(fp.num_arrows() == sq);
    CHECK(sq == 8);
    CHECK(check_groupoid(fp).ok());

    Surjection con(pts(3), {"pt"}, {0, 0, 0});
    auto c = fiber_product_groupoid(con);
    CHECK(c.num_arrows() == 9);
    CHECK(find_groupoid_isomorphism(share(c), pair_ref(3)).has_value());

    auto idM = identity_groupoid(b.proj.codomain);
    auto pb = pullback_groupoid(b.proj, idM);
    CHECK(find_groupoid_isomorphism(share(pb), share(fp)).has_value());

    Surjection ident(pts(2), pts(2), {0, 1});
    auto pm = pair_groupoid(pts(2));
    CHECK(find_groupoid_isomorphism(share(pullback_groupoid(ident, pm)), share(pm)).has_value());

    auto big = pullback_groupoid(b.proj, pm);
    CHECK(big.num_arrows() == 16);
    CHECK(check_groupoid(big).ok());

    CHECK(throws_kind(ErrorKind::NotSurjective, [] { Surjection(pts(2), pts(3), {0, 1}); }));
}

TEST_CASE("functors") {
    auto p = pair_ref(3);
    CHECK(check_functor(identity_functor(p)).ok());
    auto a = identity_groupoid(pts(2)), b = identity_groupoid(pts(3));
    auto prod = product_groupoid(a, b);
    CHECK(prod.num_arrows() == 6);
    CHECK(prod.num_objects() == 6);
    CHECK(check_groupoid(prod).ok());
    for (Index x = 0; x < prod.num_arrows(); ++x) CHECK(prod.src(x) == prod.tgt(x));

    // Every arrow sent to the unit at its source: breaks target.
    std::vector<Index> obj(3), arr(9);
    for (Index o = 0; o < 3; ++o) obj[o] = o;
    for (Index x = 0; x < 9; ++x) arr[x] = p->unit(p->src(x));
    auto r = check_functor(GroupoidFunctor(p, p, obj, arr));
    CHECK_FALSE(r.ok());
    CHECK(r.violations("target") == 6);
}
