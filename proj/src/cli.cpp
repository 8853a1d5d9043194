#include "pbg/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "pbg/catalog.hpp"
#include "pbg/io.hpp"
#include "pbg/nerve.hpp"
#include "pbg/transformations.hpp"

namespace pbg {

namespace {

struct Options {
    std::string input, stanza, out, emit, as, which, pi, base, via = "all", emit_dir;
    std::vector<std::string> names;
    std::size_t k = 1;
    bool partial = false, check = false, verify_square = false, match_gerbe = false, timing = false;
};

struct Outcome {
    ValidationReport report;
    std::optional<json> output;
};

ValidationReport validate_stanza(const Document& d, const std::string& name, const std::string& kind) {
    if (kind == "group") return check_group(*d.groups.at(name));
    if (kind == "groupoid") return check_groupoid(*d.groupoids.at(name));
    if (kind == "hom") return check_hom(d.homs.at(name));
    if (kind == "group_action") return check_action(d.group_actions.at(name));
    if (kind == "crossed_module") return check_crossed_module(d.crossed_modules.at(name));
    if (kind == "group_groupoid") return check_group_groupoid(d.group_groupoids.at(name));
    if (kind == "two_group_action") return check_two_group_action(d.two_group_actions.at(name));
    if (kind == "pb_groupoid") {
        const auto& st = d.pbs.at(name);
        auto r = check_pb_groupoid(st.pb);
        if (st.triv_g && st.triv_y) r.merge(check_base_trivial(st.pb, *st.triv_g, *st.triv_y), "base_trivial");
        if (st.base_surjection)
            r.expect("base_is_fiber_product", base_is_fiber_product(*st.pb.base, d.surjections.at(*st.base_surjection)),
                     *st.base_surjection);
        return r;
    }
    if (kind == "bundle_gerbe") return check_bundle_gerbe(d.gerbes.at(name));
    if (kind == "functor") return check_functor(d.functors.at(name));
    if (kind == "principal_bundle") return check_principal_bundle(d.bundles.at(name));
    if (kind == "bitorsor") return check_bitorsor(d.bitorsors.at(name));
    ValidationReport r;
    r.declare("well_formed");  // surjections are checked on construction
    return r;
}

// Validates `name` before use; an invalid stanza ends the command with exit 1.
bool usable(const Document& d, const std::string& name, const std::string& kind, ValidationReport& r) {
    auto v = validate_stanza(d, name, kind);
    r.merge(v, "input." + name);
    return v.ok();
}

Outcome cmd_validate(const Document& d, const Options& o) {
    Outcome out;
    for (const auto& [name, kind] : d.stanzas) {
        if (!o.stanza.empty() && name != o.stanza) continue;
        out.report.merge(validate_stanza(d, name, kind), name);
    }
    if (!o.stanza.empty() && !d.kind_of(o.stanza)) raise(ErrorKind::DanglingReference, o.stanza);
    out.report.note("stanzas", d.stanzas.size());
    return out;
}

Outcome cmd_build(const Document& d, const Options& o) {
    Outcome out;
    auto& r = out.report;
    DocumentWriter w;
    if (o.as == "pb" || o.as == "principal_2bundle") {
        auto [name, kind] = d.pick(o.stanza, {"principal_bundle"});
        if (!usable(d, name, kind, r)) return out;
        const auto& b = d.bundles.at(name);
        if (o.as == "pb") {
            auto bt = base_trivial_from_principal_bundle(b);
            r.merge(check_pb_groupoid(bt.pb), "pb");
            auto pi = w.surjection(catalog_point_surjection(b.proj.codomain), name + ".M_to_pt");
            w.pb(bt.pb, name + ".pb", bt.triv_g, bt.triv_y, pi);
        } else {
            auto p2 = principal_2bundle_from_principal_bundle(b);
            r.merge(interpret_principal_2bundle(p2.action, p2.to_m));
            w.two_group_action(p2.action, name + ".action");
            w.functor(p2.to_m, name + ".to_M");
        }
    } else if (o.as == "two_group") {
        auto [name, kind] = d.pick(o.stanza, {"crossed_module", "group_groupoid"});
        if (!usable(d, name, kind, r)) return out;
        if (kind == "crossed_module") {
            auto tg = d.two_groups.at(name);
            r.merge(check_two_group(*tg), "two_group");
            auto gg = as_group_groupoid(*tg);
            auto back = crossed_module_from_two_group(gg);
            auto iso = find_crossed_module_isomorphism(tg->crossed_module(), back.cm);
            r.expect("round_trip_isomorphic", iso.has_value(), "crossed module -> 2-group -> crossed module");
            w.group_groupoid(gg, name + ".group_groupoid");
        } else {
            const auto& gg = d.group_groupoids.at(name);
            auto back = crossed_module_from_two_group(gg);
            r.merge(check_crossed_module(back.cm), "crossed_module");
            auto phi = phi_iso(gg);
            r.expect("phi_bijective", phi.functor.bijective(), "(h,g) -> h e(g)");
            w.crossed_module(back.cm, name + ".crossed_module");
        }
    } else if (o.as == "trivial_gerbe") {
        auto [name, kind] = d.pick(o.stanza, {"crossed_module"});
        if (!usable(d, name, kind, r)) return out;
        auto [bname, bkind] = d.pick(o.base, {"groupoid"});
        if (!usable(d, bname, bkind, r)) return out;
        auto g = trivial_gerbe(d.two_groups.at(name), d.groupoids.at(bname));
        r.merge(check_bundle_gerbe(g), "gerbe");
        w.gerbe(g, name + ".trivial_gerbe");
    } else {
        raise(ErrorKind::PreconditionNotMet, "--as must be pb, two_group, trivial_gerbe or principal_2bundle");
    }
    out.output = w.document();
    return out;
}

std::optional<Surjection> pb_surjection(const Document& d, const PBStanza& st, const std::string& flag) {
    if (!flag.empty()) {
        auto it = d.surjections.find(flag);
        if (it == d.surjections.end()) raise(ErrorKind::DanglingReference, flag);
        return it->second;
    }
    if (st.base_surjection) return d.surjections.at(*st.base_surjection);
    return std::nullopt;
}

Outcome cmd_functor(const Document& d, const Options& o) {
    Outcome out;
    auto& r = out.report;
    DocumentWriter w;
    if (o.which == "phi") {
        auto [name, kind] = d.pick(o.stanza, {"pb_groupoid"});
        if (!usable(d, name, kind, r)) return out;
        auto pi = pb_surjection(d, d.pbs.at(name), o.pi);
        if (!pi) raise(ErrorKind::PreconditionNotMet, "phi needs --pi or a base_surjection on the pb_groupoid");
        auto g = functor_phi(d.pbs.at(name).pb, *pi);
        r.merge(check_bundle_gerbe(g), "phi");
        w.gerbe(g, name + ".phi");
    } else if (o.which == "psi") {
        auto [name, kind] = d.pick(o.stanza, {"bundle_gerbe"});
        if (!usable(d, name, kind, r)) return out;
        const auto& g = d.gerbes.at(name);
        auto res = functor_psi(g);
        r.merge(res.report, "psi");
        r.merge(check_pb_groupoid(res.pb.pb), "psi.pb");
        std::optional<std::string> bs;
        if (g.fiber) bs = w.surjection(*g.fiber, name + ".fiber");
        w.pb(res.pb.pb, name + ".psi", res.pb.triv_g, res.pb.triv_y, bs);
    } else if (o.which == "xi") {
        auto [name, kind] = d.pick(o.stanza, {"pb_groupoid"});
        auto bt = d.base_trivial(name);
        if (!usable(d, name, kind, r)) return out;
        auto res = functor_xi(bt);
        r.merge(res.splitting, "xi.splitting");
        r.merge(check_bundle_gerbe(res.gerbe), "xi");
        auto g = res.gerbe;
        if (auto pi = pb_surjection(d, d.pbs.at(name), o.pi)) g.fiber = *pi;
        w.gerbe(g, name + ".xi");
    } else {
        raise(ErrorKind::PreconditionNotMet, "--which must be phi, psi or xi");
    }
    out.output = w.document();
    return out;
}

Outcome cmd_quotient(const Document& d, const Options& o) {
    Outcome out;
    auto& r = out.report;
    auto [name, kind] = d.pick(o.stanza, {"pb_groupoid", "two_group_action"});
    if (!usable(d, name, kind, r)) return out;
    const auto& act = kind == "pb_groupoid" ? d.pbs.at(name).pb.action : d.two_group_actions.at(name);
    DocumentWriter w;
    if (o.partial) {
        auto pq = partial_quotient(act);
        r.merge(pq.report, "partial_quotient");
        r.merge(check_groupoid(*pq.groupoid), "groupoid");
        r.merge(check_functor(pq.Q), "Q");
        r.note("objects", pq.groupoid->num_objects());
        r.note("arrows", pq.groupoid->num_arrows());
        w.functor(pq.Q, name + ".Q");
    } else {
        auto q = quotient_pb(act);
        r.merge(check_groupoid(*q.base), "groupoid");
        r.merge(check_fibration(q.proj), "projection");
        r.note("objects", q.base->num_objects());
        r.note("arrows", q.base->num_arrows());
        w.functor(q.proj, name + ".quotient");
    }
    out.output = w.document();
    return out;
}

Outcome cmd_nerve(const Document& d, const Options& o) {
    Outcome out;
    auto& r = out.report;
    auto [name, kind] = d.pick(o.stanza, {"groupoid", "crossed_module", "pb_groupoid"});
    if (!usable(d, name, kind, r)) return out;
    if (kind == "groupoid") {
        Nerve n(d.groupoids.at(name), o.k);
        json sizes = json::array();
        for (std::size_t k = 0; k <= n.top(); ++k) sizes.push_back(n.size(k));
        r.note("level_sizes", sizes);
        if (o.check) r.merge(check_simplicial(n.simplicial()), "nerve");
    } else if (kind == "crossed_module") {
        TwoGroupNerveModels m(d.two_groups.at(name), o.k);
        json sizes = json::array();
        for (std::size_t k = 0; k <= m.top(); ++k) sizes.push_back(m.size(k));
        r.note("level_sizes", sizes);
        if (o.check) r.merge(m.verify(), "models");
    } else {
        const auto& p = d.pbs.at(name).pb;
        PBNerve n(p, o.k);
        json sizes = json::array();
        for (std::size_t k = 0; k <= n.top(); ++k)
            sizes.push_back({{"P", n.P().size(k)}, {"G", n.G().size(k)}, {"M", n.M().size(k)}});
        r.note("level_sizes", sizes);
        if (o.check) {
            r.merge(nerve_pb_report(p, o.k), "nerve_pb");
            r.merge(partial_quotient_nerve(p, o.k), "partial_quotient_nerve");
        }
    }
    return out;
}

Outcome cmd_aut(const Document& d, const Options& o) {
    Outcome out;
    auto& r = out.report;
    auto [name, kind] = d.pick(o.stanza, {"pb_groupoid"});
    if (!usable(d, name, kind, r)) return out;
    AutOptions opt;
    opt.verify_square = o.verify_square;
    auto s = aut_partial_quotient(d.pbs.at(name).pb, o.k, opt);
    r.merge(s.report, "aut");
    if (o.match_gerbe) {
        auto g = aut_gerbe(d.base_trivial(name), o.k);
        r.merge(g.report, "gerbe");
    }
    r.note("k", o.k);
    return out;
}

Outcome cmd_morita(const Document& d, const Options& o) {
    Outcome out;
    auto& r = out.report;
    if (o.names.size() == 1) {
        auto [name, kind] = d.pick(o.names[0], {"surjection"});
        r.merge(fiber_product_morita(d.surjections.at(name)), name);
        return out;
    }
    if (o.names.size() != 2) raise(ErrorKind::PreconditionNotMet, "morita takes two groupoid stanzas or one surjection");
    auto [a, ka] = d.pick(o.names[0], {"groupoid"});
    auto [b, kb] = d.pick(o.names[1], {"groupoid"});
    if (!usable(d, a, ka, r) || !usable(d, b, kb, r)) return out;
    const auto& A = d.groupoids.at(a);
    const auto& B = d.groupoids.at(b);
    if (o.via == "all") r.merge(morita_three_way(A, B));
    else if (o.via == "pullback") r.merge(morita_decide(A, B, MoritaVia::Pullback));
    else if (o.via == "bitorsor") r.merge(morita_decide(A, B, MoritaVia::Bitorsor));
    else if (o.via == "weak") r.merge(morita_decide(A, B, MoritaVia::Weak));
    else raise(ErrorKind::PreconditionNotMet, "--via must be pullback, bitorsor, weak or all");
    return out;
}

Outcome cmd_catalog(const Options& o) {
    Outcome out;
    auto entries = catalog_entries();
    json files = json::array();
    for (const auto& e : entries) {
        auto text = canonical(e.document);
        auto doc = parse_document(text);
        out.report.merge(cmd_validate(doc, {}).report, e.file);
        out.report.expect(e.file + ".round_trip", canonical(emit_document(doc)) == text, "parse/emit changed bytes");
        if (!o.emit_dir.empty()) {
            std::filesystem::create_directories(o.emit_dir);
            write_text((std::filesystem::path(o.emit_dir) / e.file).string(), text);
        }
        files.push_back(e.file);
    }
    out.report.note("files", files);
    return out;
}

json error_json(const std::string& kind, const std::string& msg) {
    return {{"error", kind}, {"message", msg}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pb-groupoid toolkit", "pbg"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s, bool needs_input) {
        if (needs_input) s->add_option("input", o.input, "document")->required();
        s->add_option("--stanza", o.stanza, "stanza name");
        s->add_option("-o,--out", o.out, "report path (default stdout)");
        s->add_flag("--timing", o.timing, "add wall time to the report");
    };
    auto* validate = app.add_subcommand("validate", "check every stanza");
    common(validate, true);
    auto* build = app.add_subcommand("build", "assemble a structure");
    common(build, true);
    build->add_option("--as", o.as)->required()->check(CLI::IsMember({"pb", "two_group", "trivial_gerbe", "principal_2bundle"}));
    build->add_option("--base", o.base, "base groupoid for trivial_gerbe");
    build->add_option("--emit", o.emit, "write the constructed document");
    auto* functor = app.add_subcommand("functor", "apply Phi, Psi or Xi");
    common(functor, true);
    functor->add_option("--which", o.which)->required()->check(CLI::IsMember({"phi", "psi", "xi"}));
    functor->add_option("--pi", o.pi, "surjection stanza Y -> M");
    functor->add_option("--emit", o.emit, "write the constructed document");
    auto* quotient = app.add_subcommand("quotient", "quotient of a 2-group action");
    common(quotient, true);
    quotient->add_flag("--partial", o.partial, "quotient by the identity-bisection subgroup only");
    quotient->add_option("--emit", o.emit, "write the constructed document");
    auto* nerve = app.add_subcommand("nerve", "nerves to level k");
    common(nerve, true);
    nerve->add_option("-k", o.k)->check(CLI::Range(0, 6));
    nerve->add_flag("--check", o.check, "verify simplicial identities and model isomorphisms");
    auto* aut = app.add_subcommand("aut", "inner-transformation groups at level k");
    common(aut, true);
    aut->add_option("-k", o.k)->check(CLI::Range(0, 4));
    aut->add_flag("--verify-square", o.verify_square);
    aut->add_flag("--match-gerbe", o.match_gerbe, "compare with the gerbe's automorphisms");
    auto* morita = app.add_subcommand("morita", "Morita equivalence of two groupoids");
    common(morita, true);
    morita->add_option("names", o.names, "groupoid stanzas (or one surjection)")->required();
    morita->add_option("--via", o.via)->check(CLI::IsMember({"pullback", "bitorsor", "weak", "all"}));
    auto* catalog = app.add_subcommand("catalog", "built-in instances");
    common(catalog, false);
    catalog->add_option("--emit", o.emit_dir, "directory to write instance files into");

    if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !app.get_subcommand_no_throw(args[0])) {
        err << error_json("UnknownSubcommand", "unknown subcommand '" + args[0] + "'").dump() << "\n";
        return 2;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string kind = dynamic_cast<const CLI::ExtrasError*>(&e) || dynamic_cast<const CLI::RequiredError*>(&e)
                               ? (app.get_subcommands().empty() ? "UnknownSubcommand" : "ParseError")
                               : "ParseError";
        err << error_json(kind, e.what()).dump() << "\n";
        return 2;
    }
    auto* sub = app.get_subcommands().front();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome res;
        if (sub == catalog) {
            res = cmd_catalog(o);
        } else {
            auto d = load_document(o.input);
            if (sub == validate) res = cmd_validate(d, o);
            else if (sub == build) res = cmd_build(d, o);
            else if (sub == functor) res = cmd_functor(d, o);
            else if (sub == quotient) res = cmd_quotient(d, o);
            else if (sub == nerve) res = cmd_nerve(d, o);
            else if (sub == aut) res = cmd_aut(d, o);
            else res = cmd_morita(d, o);
        }
        json report = {{"command", sub->get_name()}, {"ok", res.report.ok()}, {"report", res.report.to_json()}};
        if (!o.input.empty()) report["input"] = o.input;
        if (!o.stanza.empty()) report["stanza"] = o.stanza;
        if (res.output) {
            if (o.emit.empty()) report["output"] = *res.output;
            else {
                write_text(o.emit, canonical(*res.output));
                report["output_file"] = o.emit;
            }
        }
        if (o.timing) {
            report["timing_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        auto text = canonical(report);
        if (o.out.empty()) out << text;
        else write_text(o.out, text);
        return res.report.ok() ? 0 : 1;
    } catch (const Error& e) {
        err << error_json(std::string(error_kind_name(e.kind())), e.what()).dump() << "\n";
        return is_input_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << error_json("ParseError", e.what()).dump() << "\n";
        return 2;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace pbg
