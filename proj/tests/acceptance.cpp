// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "pbg/catalog.hpp"
#include "pbg/cli.hpp"
#include "pbg/io.hpp"
#include "pbg/nerve.hpp"
#include "pbg/transformations.hpp"

using namespace pbg;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool c, const std::string& what) {
        if (!c && ok) {
            ok = false;
            detail = what;
        }
    }
};

PBGroupoid gauge_pb(unsigned n, std::size_t m) { return pb_groupoid_from_principal_bundle(catalog_pbgauge0(n, m)); }

std::vector<std::pair<unsigned, std::size_t>> family() { return {{2, 1}, {2, 2}, {3, 1}, {3, 2}}; }

std::string tag(unsigned n, std::size_t m) { return "Z" + std::to_string(n) + " M" + std::to_string(m); }

Outcome crossed_modules() {
    Outcome o;
    o.require(check_crossed_module(catalog_a3_s3()).ok(), "A3_S3 rejected");
    o.require(check_crossed_module(catalog_abelian_dtrivial()).ok(), "abelian d-trivial rejected");
    const auto& g = catalog_groups();
    CrossedModule bad{g.S3, g.trivial, trivial_action(g.trivial, g.S3->labels()),
                      GroupHom(g.S3, g.trivial, std::vector<Index>(6, 0))};
    auto r = check_crossed_module(bad);
    bool witnessed = false;
    for (const auto& c : r.checks())
        if (c.name == "peiffer" && !c.ok()) witnessed = !c.witnesses.empty();
    o.require(!r.ok() && witnessed, "S3/trivial not rejected with a witness");
    for (const auto& cm : {catalog_a3_s3(), catalog_abelian_dtrivial(), gauge_crossed_module(g.Z2),
                           gauge_crossed_module(g.Z3), identity_crossed_module(g.S3)}) {
        auto back = crossed_module_from_two_group(as_group_groupoid(*two_group_from_crossed_module(cm)));
        auto iso = find_crossed_module_isomorphism(cm, back.cm);
        o.require(iso && check_crossed_module_iso(cm, back.cm, *iso).ok(), "round trip not an isomorphism");
    }
    return o;
}

Outcome functors() {
    Outcome o;
    for (auto [n, m] : family()) {
        auto p = gauge_pb(n, m);
        auto pts = p.base->object_labels();
        auto g = functor_phi(p, catalog_point_surjection(pts));
        o.require(check_bundle_gerbe(g).ok(), "Phi fails on " + tag(n, m));
        auto bt = base_trivial_from_principal_bundle(catalog_pbgauge0(n, m));
        o.require(verify_psi_xi_round_trip(bt).ok(), "Psi Xi on " + tag(n, m));
        o.require(verify_xi_psi_round_trip(functor_xi(bt).gerbe).ok(), "Xi Psi on " + tag(n, m));
        BgPqOptions opt;
        opt.pi = catalog_point_surjection(pts);
        opt.triv_g = bt.triv_g;
        opt.triv_y = bt.triv_y;
        auto r = verify_bg_pq(p, opt);
        o.require(r.ok(), "Phi vs partial quotient on " + tag(n, m) + ": " + r.first_failure());
    }
    auto doc = parse_document(canonical(catalog_document()));
    for (const auto& [name, pb] : doc.pbs)
        if (pb.triv_g) o.require(verify_psi_xi_round_trip(doc.base_trivial(name)).ok(), "Psi Xi on " + name);
    for (const auto& [name, g] : doc.gerbes) o.require(verify_xi_psi_round_trip(g).ok(), "Xi Psi on " + name);
    return o;
}

Outcome nerves() {
    Outcome o;
    constexpr std::size_t K = 3;
    auto doc = parse_document(canonical(catalog_document()));
    for (const auto& [name, g] : doc.groupoids)
        o.require(check_simplicial(Nerve(g, K).simplicial()).ok(), "simplicial identities on " + name);
    for (const auto& [name, tg] : doc.two_groups) {
        o.require(check_simplicial(Nerve(tg->groupoid(), K).simplicial()).ok(), "simplicial identities on " + name);
        o.require(TwoGroupNerveModels(tg, K).verify().ok(), "2-group models on " + name);
    }
    for (auto [n, m] : family()) {
        auto p = gauge_pb(n, m);
        PBNerve pn(p, K);
        for (std::size_t k = 0; k <= K; ++k)
            o.require(pn.P().size(k) == pn.G().size(k) * pn.M().size(k), "level size on " + tag(n, m));
        o.require(pn.verify().ok(), "nerve_pb on " + tag(n, m));
        o.require(partial_quotient_nerve(p, K).ok(), "partial quotient nerve on " + tag(n, m));
    }
    return o;
}

// Fiber-preserving equivariant bijections of P, by exhausting all self-maps.
std::size_t brute_aut(const PrincipalBundle& b) {
    const std::size_t n = b.action.size();
    std::vector<Index> f(n, 0);
    std::size_t count = 0;
    for (;;) {
        bool ok = true;
        for (Index x = 0; ok && x < n; ++x) ok = b.proj.map[f[x]] == b.proj.map[x];
        for (Index g = 0; ok && g < b.action.group->order(); ++g)
            for (Index x = 0; ok && x < n; ++x) ok = f[b.action.act(g, x)] == b.action.act(g, f[x]);
        if (ok) count += std::set<Index>(f.begin(), f.end()).size() == n;
        std::size_t i = 0;
        while (i < n && ++f[i] == n) f[i++] = 0;
        if (i == n) return count;
    }
}

Outcome transformations() {
    Outcome o;
    auto b = catalog_pbgauge0(2, 2);
    auto p = pb_groupoid_from_principal_bundle(b);
    o.require(brute_aut(b) == 4, "brute-force |Aut(P)| != 4");
    o.require(aut_partial_quotient(p, 0).aut == "4", "|Aut(P)| != 4 via equivariant maps");
    for (std::size_t k = 0; k <= 2; ++k) {
        o.require(verify_square(p, k).ok(), "square at k = " + std::to_string(k));
        auto s = aut_partial_quotient(p, k);
        o.require(s.report.ok() && s.pi_image == s.equivariant_h,
                  "Aut(P^(k)/_G) at k = " + std::to_string(k) + ": " + s.report.first_failure());
    }
    auto bt = base_trivial_from_principal_bundle(b);
    for (std::size_t k = 0; k <= 1; ++k) {
        auto g = aut_gerbe(bt, k);
        o.require(g.report.ok(), "gerbe Aut at k = " + std::to_string(k) + ": " + g.report.first_failure());
    }
    o.require(embeddings(b, 2).ok(), "embedding chain");
    return o;
}

Outcome morita() {
    Outcome o;
    auto doc = parse_document(canonical(catalog_document()));
    for (const auto& [name, pi] : doc.surjections) {
        auto r = fiber_product_morita(pi);
        o.require(r.ok(), "Y[2] vs M on " + name + ": " + r.first_failure());
    }
    auto p = gauge_pb(2, 2);
    GroupoidFunctor to_pt(p.base, share(pair_groupoid({"pt"})), {0, 0}, {0, 0, 0, 0});
    auto pass = lemma_weakequiv_check(p.proj, to_pt);
    o.require(pass.ok() && pass.notes()["phi_weak_equivalence"] == true, "fiber-product inclusion, passing instance");
    auto D = share(identity_groupoid({"a", "b"}));
    GroupoidFunctor squash(D, share(identity_groupoid({"pt"})), {0, 0}, {0, 0});
    auto fail = lemma_weakequiv_check(identity_functor(D), squash);
    o.require(fail.ok() && fail.notes()["phi_weak_equivalence"] == false, "fiber-product inclusion, failing instance");
    for (auto [n, m] : family()) {
        auto pb = principal_2bundle_from_principal_bundle(catalog_pbgauge0(n, m));
        auto r = interpret_principal_2bundle(pb.action, pb.to_m);
        o.require(r.ok() && r.notes()["morita_equivalent"] == true, "principal 2-bundle on " + tag(n, m));
    }
    return o;
}

int run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    return pbg::run(args, out, err);
}

Outcome plumbing() {
    Outcome o;
    for (const auto& e : catalog_entries()) {
        auto text = canonical(e.document);
        o.require(canonical(emit_document(parse_document(text))) == text, "round trip on " + e.file);
    }
    auto dir = std::string("acceptance_catalog");
    o.require(run_cli({"catalog", "--emit", dir}) == 0, "exit 0");
    o.require(run_cli({"aut", dir + "/pbgauge0_Z2_M2.json", "-k", "1"}) == 0, "exit 0 on aut");
    auto doc = catalog_document();
    doc["stanzas"].push_back({{"kind", "crossed_module"}, {"name", "S3_over_1"}, {"H", "S3"}, {"G", "1"},
                              {"C", json::array({json::array({0, 1, 2, 3, 4, 5})})}, {"d", {0, 0, 0, 0, 0, 0}}});
    write_text(dir + "/counterexample.json", canonical(doc));
    o.require(run_cli({"validate", dir + "/counterexample.json"}) == 1, "exit 1");
    o.require(run_cli({"validate", dir + "/nope.json"}) == 2, "exit 2 on a missing file");
    o.require(run_cli({"frobnicate"}) == 2, "exit 2 on an unknown subcommand");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {"crossed modules", 1, crossed_modules}, {"functors", 10, functors}, {"nerves", 30, nerves},
        {"transformations", 60, transformations}, {"morita", 10, morita}, {"plumbing", 10, plumbing},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& c = all[i];
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("threw ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && s > c.limit_s) o.require(false, "over the time limit");
        std::printf("criterion %zu %-16s %s  %.3fs / %.0fs%s%s\n", i + 1, c.name, o.ok ? "PASS" : "FAIL", s,
                    c.limit_s, o.ok ? "" : "  ", o.detail.c_str());
        failed += !o.ok;
    }
    return failed;
}
