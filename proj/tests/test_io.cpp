#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbg/catalog.hpp"
#include "pbg/cli.hpp"
#include "pbg/io.hpp"
#include "support.hpp"

using namespace pbgtest;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int c = pbg::run(args, out, err);
    return {c, out.str(), err.str()};
}

fs::path scratch() {
    auto d = fs::temp_directory_path() / "pbg_io_tests";
    fs::create_directories(d);
    return d;
}

std::string put(const std::string& name, const std::string& text) {
    auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

json catalog_file_document(const std::string& file) {
    for (const auto& e : catalog_entries())
        if (e.file == file) return e.document;
    FAIL("no catalog entry " << file);
    return {};
}

std::string catalog_file(const std::string& file) { return put(file, canonical(catalog_file_document(file))); }

const char* kZ2 = R"({"kind": "document", "stanzas": [
  {"kind": "group", "name": "Z2", "elements": ["0", "1"], "mul": [[0, 1], [1, 0]]}
]})";

}  // namespace

TEST_CASE("parse a group") {
    auto d = parse_document(kZ2);
    REQUIRE(d.groups.count("Z2"));
    CHECK(d.groups["Z2"]->order() == 2);
    CHECK(d.kind_of("Z2") == std::optional<std::string>("group"));
    CHECK(check_group(*d.groups["Z2"]).ok());
}

TEST_CASE("parse errors") {
    const std::string dangling = R"({"kind": "document", "stanzas": [
  {"kind": "hom", "name": "f", "dom": "Z5", "cod": "Z5", "map": [0]}
]})";
    CHECK(throws_kind(ErrorKind::DanglingReference, [&] { parse_document(dangling); }));

    try {
        parse_document("{\"kind\": \"document\",\n  \"stanzas\": [1,,]}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }

    const std::string unknown = "{\"kind\": \"document\", \"stanzas\": [\n\n    {\"kind\": \"widget\", \"name\": \"w\"}]}";
    try {
        parse_document(unknown);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 5);
    }

    const std::string ragged = R"({"kind": "document", "stanzas": [
  {"kind": "group", "name": "G", "elements": ["0", "1"], "mul": [[0, 1], [1]]}
]})";
    CHECK(throws_kind(ErrorKind::TableArity, [&] { parse_document(ragged); }));
}

TEST_CASE("parse and emit round trip is byte-stable") {
    for (const auto& e : catalog_entries()) {
        CAPTURE(e.file);
        auto text = canonical(e.document);
        auto again = canonical(emit_document(parse_document(text)));
        CHECK(again == text);
        CHECK(canonical(emit_document(parse_document(again))) == again);
    }
    // Non-canonical layout and key order normalise to one form.
    auto a = canonical(emit_document(parse_document(kZ2)));
    auto b = canonical(emit_document(parse_document(
        R"({"stanzas":[{"mul":[[0,1],[1,0]],"name":"Z2","elements":["0","1"],"kind":"group"}],"kind":"document"})")));
    CHECK(a == b);
}

TEST_CASE("catalog documents parse with their named structures") {
    auto d = parse_document(canonical(catalog_document()));
    CHECK(d.catalog);
    CHECK(d.two_groups.count("A3_S3"));
    for (const auto& [name, pb] : d.pbs) CHECK(check_pb_groupoid(pb.pb).ok());
    CHECK(d.gerbes.size() == 1);
}

TEST_CASE("CLI exit code 0") {
    auto f = catalog_file("pbgauge0_Z2_M2.json");
    auto v = cli({"validate", f});
    CHECK(v.code == 0);
    CHECK(v.report()["ok"] == true);
    CHECK(v.report()["command"] == "validate");

    auto a = cli({"aut", f, "-k", "1", "--verify-square", "--match-gerbe"});
    CHECK(a.code == 0);
    auto notes = a.report()["report"]["notes"];
    CHECK(notes["aut.aut"] == "256");
    CHECK(notes["aut.equivariant_h"] == "16");

    auto m = cli({"morita", catalog_file("trivial_gerbe.json"), "Y_to_pt", "--via", "all"});
    CHECK(m.code == 0);

    auto out = (scratch() / "phi.json").string();
    auto phi = cli({"functor", f, "--which", "phi", "--emit", out});
    CHECK(phi.code == 0);
    CHECK(cli({"validate", out}).code == 0);

    auto q = cli({"quotient", f, "--partial"});
    CHECK(q.code == 0);
    CHECK(cli({"nerve", f, "-k", "2", "--check"}).code == 0);
    CHECK(cli({"catalog", "--emit", (scratch() / "cat").string()}).code == 0);
    CHECK(fs::exists(scratch() / "cat" / "catalog.json"));
}

TEST_CASE("CLI exit code 1 on a failed check") {
    auto bad = put("bad_group.json", R"({"kind": "document", "stanzas": [
  {"kind": "group", "name": "G", "elements": ["0", "1", "2"], "mul": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]}
]})");
    auto r = cli({"validate", bad});
    CHECK(r.code == 1);
    CHECK(r.report()["ok"] == false);

    // S3 over the trivial group breaks Peiffer.
    auto doc = catalog_file_document("groups.json");
    doc["stanzas"].push_back({{"kind", "crossed_module"}, {"name", "X"}, {"H", "S3"}, {"G", "1"},
                              {"C", json::array({json::array({0, 1, 2, 3, 4, 5})})}, {"d", {0, 0, 0, 0, 0, 0}}});
    auto cm = put("bad_cm.json", canonical(doc));
    CHECK(cli({"validate", cm}).code == 1);
}

TEST_CASE("CLI exit code 2 on bad input") {
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"validate", (scratch() / "missing.json").string()}).code == 2);
    CHECK(cli({"validate", put("junk.json", "{not json")}).code == 2);
    CHECK(cli({"aut", catalog_file("groups.json"), "-k", "9"}).code == 2);

    // Xi needs a trivialisation; drop it from the pb stanza.
    auto doc = catalog_file_document("pbgauge0_Z2_M2.json");
    for (auto& s : doc["stanzas"])
        if (s["kind"] == "pb_groupoid") s.erase("triv");
    auto f = put("no_triv.json", canonical(doc));
    auto r = cli({"functor", f, "--which", "xi"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotBaseTrivial") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
    auto f = catalog_file("pbgauge0_Z3_M2.json");
    for (auto args : std::vector<std::vector<std::string>>{{"validate", f}, {"aut", f, "-k", "1"}, {"nerve", f, "-k", "2", "--check"}}) {
        auto a = cli(args), b = cli(args);
        CHECK(a.out == b.out);
    }
    auto out = (scratch() / "report.json").string();
    auto r = cli({"validate", f, "-o", out});
    CHECK(r.code == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(json::parse(ss.str())["ok"] == true);
}
