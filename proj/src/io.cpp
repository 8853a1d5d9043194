#include "pbg/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace pbg {

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t off) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < off && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Byte offsets of the objects directly inside the top-level "stanzas" array.
std::vector<std::size_t> stanza_offsets(const std::string& text) {
    std::vector<std::size_t> out;
    int depth = 0;
    bool in_str = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_str) {
            if (c == '\\') ++i;
            else if (c == '"') in_str = false;
            continue;
        }
        if (c == '"') in_str = true;
        else if (c == '{' || c == '[') {
            if (c == '{' && depth == 2) out.push_back(i);
            ++depth;
        } else if (c == '}' || c == ']') {
            --depth;
        }
    }
    return out;
}

class Parser {
public:
    Parser(const std::string& text, Document& doc) : text_(text), doc_(doc), offsets_(stanza_offsets(text)) {}

    void run(const json& root) {
        if (!root.is_object()) fail_at(0, "document must be a JSON object");
        if (!root.contains("kind") || root["kind"] != "document") fail_at(0, "top-level \"kind\" must be \"document\"");
        doc_.catalog = root.value("catalog", false);
        if (!root.contains("stanzas") || !root["stanzas"].is_array()) fail_at(0, "missing \"stanzas\" array");
        const auto& st = root["stanzas"];
        for (std::size_t i = 0; i < st.size(); ++i) {
            idx_ = i;
            stanza(st[i]);
        }
    }

private:
    [[noreturn]] void fail_at(std::size_t off, const std::string& msg) const {
        auto [l, c] = line_col(text_, off);
        throw ParseError(l, c, msg);
    }
    [[noreturn]] void fail(const std::string& msg) const {
        fail_at(idx_ < offsets_.size() ? offsets_[idx_] : 0, "stanza " + std::to_string(idx_) + ": " + msg);
    }

    const json& field(const json& s, const char* key) const {
        if (!s.contains(key)) fail(std::string("missing field \"") + key + "\"");
        return s[key];
    }
    std::string str(const json& s, const char* key) const {
        const auto& v = field(s, key);
        if (!v.is_string()) fail(std::string("field \"") + key + "\" must be a string");
        return v.get<std::string>();
    }
    std::vector<std::string> strs(const json& s, const char* key) const {
        const auto& v = field(s, key);
        if (!v.is_array()) fail(std::string("field \"") + key + "\" must be an array of strings");
        std::vector<std::string> out;
        for (const auto& x : v) {
            if (!x.is_string()) fail(std::string("field \"") + key + "\" must be an array of strings");
            out.push_back(x.get<std::string>());
        }
        return out;
    }
    std::vector<Index> ints(const json& v, const char* key) const {
        if (!v.is_array()) fail(std::string("field \"") + key + "\" must be an array of integers");
        std::vector<Index> out;
        for (const auto& x : v) {
            if (x.is_null()) out.push_back(kNone);
            else if (x.is_number_unsigned()) out.push_back(x.get<Index>());
            else fail(std::string("field \"") + key + "\" must hold non-negative integers");
        }
        return out;
    }
    std::vector<Index> ints(const json& s, const char* key, bool) const { return ints(field(s, key), key); }
    std::vector<std::vector<Index>> rows(const json& s, const char* key) const {
        const auto& v = field(s, key);
        if (!v.is_array()) fail(std::string("field \"") + key + "\" must be an array of rows");
        std::vector<std::vector<Index>> out;
        for (const auto& r : v) out.push_back(ints(r, key));
        return out;
    }
    std::vector<Index> flat(const json& s, const char* key, std::size_t nrows, std::size_t ncols) const {
        auto r = rows(s, key);
        if (r.size() != nrows) raise(ErrorKind::TableArity, std::string("\"") + key + "\" has " + std::to_string(r.size()) +
                                                               " rows, expected " + std::to_string(nrows));
        std::vector<Index> out;
        for (const auto& row : r) {
            if (row.size() != ncols)
                raise(ErrorKind::TableArity, std::string("\"") + key + "\" row has " + std::to_string(row.size()) +
                                                 " entries, expected " + std::to_string(ncols));
            out.insert(out.end(), row.begin(), row.end());
        }
        return out;
    }

    template <class M>
    const typename M::mapped_type& ref(const M& m, const json& s, const char* key) const {
        auto name = str(s, key);
        auto it = m.find(name);
        if (it == m.end()) raise(ErrorKind::DanglingReference, name);
        return it->second;
    }

    GroupRef group_value(const json& s, const char* key) {
        const auto& v = field(s, key);
        if (v.is_object()) return parse_group(v, s.value("name", std::string()) + "." + key);
        return ref(doc_.groups, s, key);
    }

    GroupRef parse_group(const json& s, const std::string& name) {
        auto labels = strs(s, "elements");
        return make_group(FiniteGroup::from_rows(name, labels, rows(s, "mul")));
    }

    GroupoidRef parse_groupoid(const json& s, const std::string& name) {
        auto objects = strs(s, "objects");
        std::map<std::string, Index> oi, ai;
        for (Index i = 0; i < objects.size(); ++i)
            if (!oi.emplace(objects[i], i).second) fail("duplicate object \"" + objects[i] + "\"");
        const auto& arr = field(s, "arrows");
        if (!arr.is_array()) fail("\"arrows\" must be an array");
        std::vector<std::string> ids;
        std::vector<Index> src, tgt;
        auto obj = [&](const json& a, const char* key) {
            auto l = str(a, key);
            auto it = oi.find(l);
            if (it == oi.end()) fail("arrow endpoint \"" + l + "\" is not an object");
            return it->second;
        };
        for (const auto& a : arr) {
            if (!a.is_object()) fail("arrows must be objects with id, src, tgt");
            ids.push_back(str(a, "id"));
            if (!ai.emplace(ids.back(), Index(ids.size() - 1)).second) fail("duplicate arrow \"" + ids.back() + "\"");
            src.push_back(obj(a, "src"));
            tgt.push_back(obj(a, "tgt"));
        }
        auto arrow = [&](const json& v) {
            if (!v.is_string()) fail("composition entries must be arrow ids");
            auto it = ai.find(v.get<std::string>());
            if (it == ai.end()) fail("unknown arrow \"" + v.get<std::string>() + "\"");
            return it->second;
        };
        std::vector<std::array<Index, 3>> triples;
        const auto& comp = field(s, "comp");
        if (!comp.is_array()) fail("\"comp\" must be an array of [beta, alpha, beta o alpha]");
        for (const auto& t : comp) {
            if (!t.is_array() || t.size() != 3) fail("\"comp\" entries must be [beta, alpha, beta o alpha]");
            triples.push_back({arrow(t[0]), arrow(t[1]), arrow(t[2])});
        }
        std::optional<std::vector<Index>> inv;
        if (s.contains("inv")) {
            inv.emplace(ids.size(), kNone);
            for (const auto& p : s["inv"]) {
                if (!p.is_array() || p.size() != 2) fail("\"inv\" entries must be [arrow, inverse]");
                (*inv)[arrow(p[0])] = arrow(p[1]);
            }
        }
        return share(FiniteGroupoid::from_triples(name, objects, ids, src, tgt, triples, inv));
    }

    void stanza(const json& s) {
        if (!s.is_object()) fail("stanza must be an object");
        const auto kind = str(s, "kind");
        const auto name = str(s, "name");
        if (doc_.kind_of(name)) fail("duplicate stanza name \"" + name + "\"");
        if (kind == "group") {
            doc_.groups[name] = parse_group(s, name);
        } else if (kind == "groupoid") {
            doc_.groupoids[name] = parse_groupoid(s, name);
        } else if (kind == "hom") {
            doc_.homs.emplace(name, GroupHom(ref(doc_.groups, s, "dom"), ref(doc_.groups, s, "cod"), ints(s, "map", true)));
        } else if (kind == "group_action") {
            auto g = ref(doc_.groups, s, "group");
            auto carrier = strs(s, "carrier");
            doc_.group_actions.emplace(name, GroupAction(g, carrier, flat(s, "table", g->order(), carrier.size())));
        } else if (kind == "crossed_module") {
            auto H = group_value(s, "H");
            auto G = group_value(s, "G");
            const auto& dv = field(s, "d");
            std::vector<Index> d = dv.is_string() ? ref(doc_.homs, s, "d").map : ints(dv, "d");
            GroupAction C(G, H->labels(), flat(s, "C", G->order(), H->order()));
            CrossedModule cm{H, G, C, GroupHom(H, G, d)};
            doc_.crossed_modules.emplace(name, cm);
            if (check_crossed_module(cm).ok()) doc_.two_groups[name] = two_group_from_crossed_module(cm);
        } else if (kind == "group_groupoid") {
            doc_.group_groupoids.emplace(name, GroupGroupoid{ref(doc_.groups, s, "arrows"), ref(doc_.groups, s, "objects"),
                                                             ref(doc_.groupoids, s, "groupoid")});
        } else if (kind == "two_group_action") {
            auto ref_name = str(s, "two_group");
            if (!doc_.crossed_modules.count(ref_name)) raise(ErrorKind::DanglingReference, ref_name);
            if (!doc_.two_groups.count(ref_name))
                raise(ErrorKind::InvalidCrossedModule, "crossed module \"" + ref_name + "\" fails its checker");
            auto tg = doc_.two_groups.at(ref_name);
            auto P = ref(doc_.groupoids, s, "groupoid");
            GroupAction aa(tg->arrows_group(), P->arrow_labels(), flat(s, "act_arr", tg->num_arrows(), P->num_arrows()));
            GroupAction ao(tg->G_ref(), P->object_labels(), flat(s, "act_obj", tg->G().order(), P->num_objects()));
            doc_.two_group_actions.emplace(name, TwoGroupAction{tg, P, aa, ao});
        } else if (kind == "surjection") {
            doc_.surjections.emplace(name, Surjection(strs(s, "domain"), strs(s, "codomain"), ints(s, "map", true)));
        } else if (kind == "pb_groupoid") {
            const auto& act = ref(doc_.two_group_actions, s, "action");
            auto base = ref(doc_.groupoids, s, "base");
            const auto& pj = field(s, "proj");
            if (!pj.is_object()) fail("\"proj\" must be {objects, arrows}");
            GroupoidFunctor proj(act.target, base, ints(pj, "objects", true), ints(pj, "arrows", true));
            PBStanza st{PBGroupoid{act, base, proj}, std::nullopt, std::nullopt, std::nullopt};
            if (s.contains("triv")) {
                st.triv_g = ints(s["triv"], "g", true);
                st.triv_y = ints(s["triv"], "y", true);
            }
            if (s.contains("base_surjection")) {
                ref(doc_.surjections, s, "base_surjection");
                st.base_surjection = str(s, "base_surjection");
            }
            doc_.pbs.emplace(name, std::move(st));
        } else if (kind == "bundle_gerbe") {
            auto cmname = str(s, "two_group");
            if (!doc_.two_groups.count(cmname)) {
                if (!doc_.crossed_modules.count(cmname)) raise(ErrorKind::DanglingReference, cmname);
                raise(ErrorKind::InvalidCrossedModule, "crossed module \"" + cmname + "\" fails its checker");
            }
            auto tg = doc_.two_groups.at(cmname);
            auto B = ref(doc_.groupoids, s, "B");
            auto base = ref(doc_.groupoids, s, "base");
            std::vector<Index> objs(B->num_objects());
            std::iota(objs.begin(), objs.end(), 0);
            GroupoidFunctor Pi(B, base, objs, ints(s, "Pi", true));
            BundleGerbe g{tg, B, base, Pi, ints(s, "rho", true), flat(s, "star", tg->H().order(), B->num_arrows()),
                          std::nullopt};
            if (g.rho.size() != B->num_arrows()) raise(ErrorKind::TableArity, "\"rho\" must cover every arrow of B");
            if (s.contains("fiber")) g.fiber = ref(doc_.surjections, s, "fiber");
            doc_.gerbes.emplace(name, std::move(g));
        } else if (kind == "functor") {
            doc_.functors.emplace(name, GroupoidFunctor(ref(doc_.groupoids, s, "dom"), ref(doc_.groupoids, s, "cod"),
                                                        ints(s, "objects", true), ints(s, "arrows", true)));
        } else if (kind == "principal_bundle") {
            doc_.bundles.emplace(name, PrincipalBundle{ref(doc_.group_actions, s, "action"), ref(doc_.surjections, s, "proj")});
        } else if (kind == "bitorsor") {
            auto L = ref(doc_.groupoids, s, "left");
            auto R = ref(doc_.groupoids, s, "right");
            auto carrier = strs(s, "carrier");
            Bitorsor b{L, R, carrier, ints(s, "rho", true), ints(s, "sigma", true),
                       flat(s, "left_act", L->num_arrows(), carrier.size()),
                       flat(s, "right_act", R->num_arrows(), carrier.size())};
            if (b.rho.size() != carrier.size() || b.sigma.size() != carrier.size())
                raise(ErrorKind::TableArity, "anchors must cover the carrier");
            doc_.bitorsors.emplace(name, std::move(b));
        } else {
            fail("unknown stanza kind \"" + kind + "\"");
        }
        doc_.stanzas.emplace_back(name, kind);
    }

    const std::string& text_;
    Document& doc_;
    std::vector<std::size_t> offsets_;
    std::size_t idx_ = 0;
};

json index_rows(const std::vector<Index>& flat, std::size_t ncols) {
    json out = json::array();
    for (std::size_t i = 0; i < flat.size(); i += ncols) {
        json row = json::array();
        for (std::size_t j = 0; j < ncols; ++j) {
            Index v = flat[i + j];
            if (v == kNone) row.push_back(nullptr);
            else row.push_back(v);
        }
        out.push_back(std::move(row));
    }
    return out;
}

json index_list(const std::vector<Index>& v) {
    json out = json::array();
    for (Index x : v) {
        if (x == kNone) out.push_back(nullptr);
        else out.push_back(x);
    }
    return out;
}

bool scalar_array(const json& j) {
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

void write_canonical(const json& j, int indent, std::string& out) {
    const std::string pad(std::size_t(indent) * 2, ' '), pad2(std::size_t(indent + 1) * 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad2 + json(it.key()).dump() + ": ";
            write_canonical(it.value(), indent + 1, out);
        }
        out += "\n" + pad + "}";
    } else if (j.is_array()) {
        if (scalar_array(j)) {
            out += j.dump(-1, ' ', false, json::error_handler_t::strict);
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad2;
            write_canonical(j[i], indent + 1, out);
        }
        out += "\n" + pad + "]";
    } else {
        out += j.dump();
    }
}

}  // namespace

std::optional<std::string> Document::kind_of(const std::string& name) const {
    for (const auto& [n, k] : stanzas)
        if (n == name) return k;
    return std::nullopt;
}

std::pair<std::string, std::string> Document::pick(const std::string& name, const std::vector<std::string>& kinds) const {
    for (const auto& [n, k] : stanzas) {
        if (!name.empty() && n != name) continue;
        if (std::find(kinds.begin(), kinds.end(), k) != kinds.end()) return {n, k};
        if (!name.empty()) raise(ErrorKind::PreconditionNotMet, "stanza \"" + name + "\" has kind " + k);
    }
    if (!name.empty()) raise(ErrorKind::DanglingReference, name);
    std::string want;
    for (const auto& k : kinds) want += (want.empty() ? "" : "|") + k;
    raise(ErrorKind::PreconditionNotMet, "document has no stanza of kind " + want);
}

BaseTrivialPB Document::base_trivial(const std::string& pb_name) const {
    const auto& st = pbs.at(pb_name);
    if (!st.triv_g || !st.triv_y)
        raise(ErrorKind::NotBaseTrivial, "pb_groupoid \"" + pb_name + "\" carries no trivialization");
    return make_base_trivial(st.pb, *st.triv_g, *st.triv_y);
}

Document parse_document(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(msg.rfind(": ") + 2);
        throw ParseError(l, c, msg);
    }
    Document doc;
    Parser(text, doc).run(root);
    return doc;
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string canonical(const json& j) {
    std::string out;
    write_canonical(j, 0, out);
    out += "\n";
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

std::string DocumentWriter::fresh(std::string want) {
    if (want.empty()) want = "s";
    if (!used_.count(want)) {
        used_[want] = 1;
        return want;
    }
    for (int n = used_[want] + 1;; ++n) {
        std::string cand = want + "_" + std::to_string(n);
        if (!used_.count(cand)) {
            used_[want] = n;
            used_[cand] = 1;
            return cand;
        }
    }
}

std::string DocumentWriter::add(std::string name, json stanza) {
    if (reuse_) {
        for (const auto& st : stanzas_) {
            json t = st;
            t.erase("name");
            if (t == stanza) return st["name"].get<std::string>();
        }
    }
    name = fresh(std::move(name));
    stanza["name"] = name;
    stanzas_.push_back(std::move(stanza));
    return name;
}

std::string DocumentWriter::group(const GroupRef& g, std::string name) {
    if (auto it = seen_.find(g.get()); it != seen_.end()) return it->second;
    json rows = json::array();
    for (Index a = 0; a < g->order(); ++a) {
        json row = json::array();
        for (Index b = 0; b < g->order(); ++b) row.push_back(g->mul(a, b));
        rows.push_back(std::move(row));
    }
    auto n = add(name.empty() ? g->name() : name, {{"kind", "group"}, {"elements", g->labels()}, {"mul", rows}});
    seen_[g.get()] = n;
    keep_.push_back(g);
    return n;
}

std::string DocumentWriter::groupoid(const GroupoidRef& g, std::string name) {
    if (auto it = seen_.find(g.get()); it != seen_.end()) return it->second;
    json arrows = json::array(), comp = json::array(), inv = json::array();
    for (Index a = 0; a < g->num_arrows(); ++a) {
        arrows.push_back({{"id", g->arrow_label(a)},
                          {"src", g->object_label(g->src(a))},
                          {"tgt", g->object_label(g->tgt(a))}});
        if (g->inv(a) != kNone) inv.push_back({g->arrow_label(a), g->arrow_label(g->inv(a))});
    }
    for (Index b = 0; b < g->num_arrows(); ++b)
        for (Index a : g->arrows_into(g->src(b))) {
            Index c = g->comp(b, a);
            if (c != kNone) comp.push_back({g->arrow_label(b), g->arrow_label(a), g->arrow_label(c)});
        }
    auto n = add(name.empty() ? g->name() : name,
                 {{"kind", "groupoid"}, {"objects", g->object_labels()}, {"arrows", arrows}, {"comp", comp}, {"inv", inv}});
    seen_[g.get()] = n;
    keep_.push_back(g);
    return n;
}

std::string DocumentWriter::hom(const GroupHom& f, std::string name) {
    auto dom = group(f.dom), cod = group(f.cod);
    return add(std::move(name), {{"kind", "hom"}, {"dom", dom}, {"cod", cod}, {"map", index_list(f.map)}});
}

std::string DocumentWriter::group_action(const GroupAction& a, std::string name) {
    auto g = group(a.group);
    return add(std::move(name), {{"kind", "group_action"},
                                 {"group", g},
                                 {"carrier", a.carrier},
                                 {"table", index_rows(a.table, a.size())}});
}

std::string DocumentWriter::crossed_module(const CrossedModule& cm, std::string name) {
    auto H = group(cm.H), G = group(cm.G);
    return add(std::move(name), {{"kind", "crossed_module"},
                                 {"H", H},
                                 {"G", G},
                                 {"d", index_list(cm.d.map)},
                                 {"C", index_rows(cm.C.table, cm.H->order())}});
}

std::string DocumentWriter::two_group(const TwoGroupRef& tg, std::string name) {
    if (auto it = seen_.find(tg.get()); it != seen_.end()) return it->second;
    const auto& cm = tg->crossed_module();
    auto n = crossed_module(cm, name.empty() ? "(" + cm.H->name() + "," + cm.G->name() + ")" : name);
    seen_[tg.get()] = n;
    keep_.push_back(tg);
    return n;
}

std::string DocumentWriter::group_groupoid(const GroupGroupoid& gg, std::string name) {
    auto a = group(gg.arrows), o = group(gg.objects), g = groupoid(gg.groupoid);
    return add(std::move(name), {{"kind", "group_groupoid"}, {"arrows", a}, {"objects", o}, {"groupoid", g}});
}

std::string DocumentWriter::two_group_action(const TwoGroupAction& a, std::string name) {
    auto tg = two_group(a.tg), P = groupoid(a.target);
    json body = {{"kind", "two_group_action"},
                 {"two_group", tg},
                 {"groupoid", P},
                 {"act_arr", index_rows(a.act_arr.table, a.act_arr.size())},
                 {"act_obj", index_rows(a.act_obj.table, a.act_obj.size())}};
    return add(name.empty() ? "action" : std::move(name), std::move(body));
}

std::string DocumentWriter::surjection(const Surjection& s, std::string name) {
    json body = {{"kind", "surjection"}, {"domain", s.domain}, {"codomain", s.codomain}, {"map", index_list(s.map)}};
    return add(std::move(name), std::move(body));
}

std::string DocumentWriter::pb(const PBGroupoid& p, std::string name, const std::optional<std::vector<Index>>& triv_g,
                               const std::optional<std::vector<Index>>& triv_y,
                               const std::optional<std::string>& base_surjection) {
    auto act = nested([&] { return two_group_action(p.action, name + ".action"); });
    auto base = groupoid(p.base);
    json s = {{"kind", "pb_groupoid"},
              {"action", act},
              {"base", base},
              {"proj", {{"objects", index_list(p.proj.obj_map)}, {"arrows", index_list(p.proj.arr_map)}}}};
    if (triv_g && triv_y) s["triv"] = {{"g", index_list(*triv_g)}, {"y", index_list(*triv_y)}};
    if (base_surjection) s["base_surjection"] = *base_surjection;
    return add(std::move(name), std::move(s));
}

std::string DocumentWriter::gerbe(const BundleGerbe& b, std::string name) {
    auto tg = two_group(b.tg), B = groupoid(b.B), base = groupoid(b.base);
    json s = {{"kind", "bundle_gerbe"},
              {"two_group", tg},
              {"B", B},
              {"base", base},
              {"Pi", index_list(b.Pi.arr_map)},
              {"rho", index_list(b.rho)},
              {"star", index_rows(b.star, b.B->num_arrows())}};
    if (b.fiber) s["fiber"] = nested([&] { return surjection(*b.fiber, name + ".fiber"); });
    return add(std::move(name), std::move(s));
}

std::string DocumentWriter::functor(const GroupoidFunctor& f, std::string name) {
    auto d = groupoid(f.dom), c = groupoid(f.cod);
    return add(std::move(name), {{"kind", "functor"},
                                 {"dom", d},
                                 {"cod", c},
                                 {"objects", index_list(f.obj_map)},
                                 {"arrows", index_list(f.arr_map)}});
}

std::string DocumentWriter::principal_bundle(const PrincipalBundle& b, std::string name) {
    auto a = nested([&] { return group_action(b.action, name + ".action"); });
    auto p = nested([&] { return surjection(b.proj, name + ".proj"); });
    return add(std::move(name), {{"kind", "principal_bundle"}, {"action", a}, {"proj", p}});
}

std::string DocumentWriter::bitorsor(const Bitorsor& b, std::string name) {
    auto L = groupoid(b.left), R = groupoid(b.right);
    return add(std::move(name), {{"kind", "bitorsor"},
                                 {"left", L},
                                 {"right", R},
                                 {"carrier", b.carrier},
                                 {"rho", index_list(b.rho)},
                                 {"sigma", index_list(b.sigma)},
                                 {"left_act", index_rows(b.left_act, b.carrier.size())},
                                 {"right_act", index_rows(b.right_act, b.carrier.size())}});
}

json DocumentWriter::document() const {
    return {{"kind", "document"}, {"catalog", catalog_}, {"stanzas", stanzas_}};
}

json emit_document(const Document& d) {
    DocumentWriter w(d.catalog);
    for (const auto& [name, kind] : d.stanzas) {
        if (kind == "group") w.group(d.groups.at(name), name);
        else if (kind == "groupoid") w.groupoid(d.groupoids.at(name), name);
        else if (kind == "hom") w.hom(d.homs.at(name), name);
        else if (kind == "group_action") w.group_action(d.group_actions.at(name), name);
        else if (kind == "crossed_module") {
            if (d.two_groups.count(name)) w.two_group(d.two_groups.at(name), name);
            else w.crossed_module(d.crossed_modules.at(name), name);
        } else if (kind == "group_groupoid") w.group_groupoid(d.group_groupoids.at(name), name);
        else if (kind == "two_group_action") w.two_group_action(d.two_group_actions.at(name), name);
        else if (kind == "surjection") w.surjection(d.surjections.at(name), name);
        else if (kind == "pb_groupoid") {
            const auto& st = d.pbs.at(name);
            w.pb(st.pb, name, st.triv_g, st.triv_y, st.base_surjection);
        } else if (kind == "bundle_gerbe") w.gerbe(d.gerbes.at(name), name);
        else if (kind == "functor") w.functor(d.functors.at(name), name);
        else if (kind == "principal_bundle") w.principal_bundle(d.bundles.at(name), name);
        else if (kind == "bitorsor") w.bitorsor(d.bitorsors.at(name), name);
    }
    return w.document();
}

}  // namespace pbg
