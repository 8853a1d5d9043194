#include "pbg/catalog.hpp"

namespace pbg {

namespace {

std::vector<std::string> points(std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(std::string(1, char('a' + i)));
    return out;
}

TwoGroupRef a3_s3() {
    static const TwoGroupRef tg = two_group_from_crossed_module(catalog_a3_s3());
    return tg;
}

void add_groups(DocumentWriter& w) {
    const auto& g = catalog_groups();
    for (const auto& x : {g.trivial, g.Z2, g.Z3, g.Z4, g.S3}) w.group(x);
}

void add_crossed_modules(DocumentWriter& w) {
    w.two_group(a3_s3(), "A3_S3");
    w.two_group(two_group_from_crossed_module(catalog_abelian_dtrivial()), "Z3_Z2_dtrivial");
}

void add_pbgauge0(DocumentWriter& w, unsigned n, std::size_t m) {
    const std::string tag = "pbgauge0_Z" + std::to_string(n) + "_M" + std::to_string(m);
    auto b = catalog_pbgauge0(n, m);
    w.principal_bundle(b, tag + ".bundle");
    auto bt = base_trivial_from_principal_bundle(b);
    auto pi = w.surjection(catalog_point_surjection(b.proj.codomain), tag + ".M_to_pt");
    w.pb(bt.pb, tag, bt.triv_g, bt.triv_y, pi);
}

void add_trivial_gerbe(DocumentWriter& w) {
    auto tg = a3_s3();
    w.two_group(tg, "A3_S3");
    auto Y = points(2);
    auto base = share(pair_groupoid(Y, "pair(Y)"));
    auto pb = trivial_pb(tg, base);
    auto pi = w.surjection(catalog_point_surjection(Y), "Y_to_pt");
    w.pb(pb.pb, "trivial_pb_A3_S3", pb.triv_g, pb.triv_y, pi);
    auto g = trivial_gerbe(tg, base);
    g.fiber = catalog_point_surjection(Y);
    w.gerbe(g, "trivial_gerbe_A3_S3");
}

}  // namespace

const CatalogGroups& catalog_groups() {
    static const CatalogGroups g{trivial_group("1"), cyclic_group(2, "Z2"), cyclic_group(3, "Z3"), cyclic_group(4, "Z4"),
                                 symmetric_group(3, "S3")};
    return g;
}

CrossedModule catalog_a3_s3() {
    const auto& S3 = catalog_groups().S3;
    std::vector<Index> a3;
    for (Index x = 0; x < S3->order(); ++x)
        if (3 % S3->element_order(x) == 0) a3.push_back(x);
    return normal_subgroup_crossed_module(S3, a3, "A3");
}

CrossedModule catalog_abelian_dtrivial() {
    const auto& g = catalog_groups();
    std::vector<Index> t;
    for (Index s = 0; s < 2; ++s)
        for (Index h = 0; h < 3; ++h) t.push_back(s == 0 ? h : g.Z3->inv(h));
    return trivial_d_crossed_module(g.Z3, g.Z2, GroupAction(g.Z2, g.Z3->labels(), t));
}

PrincipalBundle catalog_pbgauge0(unsigned n, std::size_t m) {
    const auto& g = catalog_groups();
    return trivial_principal_bundle(n == 2 ? g.Z2 : n == 3 ? g.Z3 : cyclic_group(n), points(m));
}

Surjection catalog_point_surjection(const std::vector<std::string>& m) {
    return Surjection(m, {"pt"}, std::vector<Index>(m.size(), 0));
}

std::vector<CatalogEntry> catalog_entries() {
    std::vector<CatalogEntry> out;
    auto one = [&](const std::string& file, auto&& fill) {
        DocumentWriter w(true);
        fill(w);
        out.push_back({file, w.document()});
    };
    one("groups.json", add_groups);
    one("crossed_modules.json", add_crossed_modules);
    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u})
            one("pbgauge0_Z" + std::to_string(n) + "_M" + std::to_string(m) + ".json",
                [&](DocumentWriter& w) { add_pbgauge0(w, n, m); });
    one("trivial_gerbe.json", add_trivial_gerbe);
    out.push_back({"catalog.json", catalog_document()});
    return out;
}

json catalog_document() {
    DocumentWriter w(true);
    add_groups(w);
    add_crossed_modules(w);
    for (unsigned n : {2u, 3u})
        for (std::size_t m : {1u, 2u}) add_pbgauge0(w, n, m);
    add_trivial_gerbe(w);
    return w.document();
}

}  // namespace pbg
