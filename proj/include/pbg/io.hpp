#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbg/gerbe.hpp"
#include "pbg/morita.hpp"

namespace pbg {

struct PBStanza {
    PBGroupoid pb;
    std::optional<std::vector<Index>> triv_g, triv_y;
    std::optional<std::string> base_surjection;
};

// A parsed document: stanzas by name, in file order. Crossed modules that
// pass their checker also get a canonical 2-group in `two_groups`.
struct Document {
    bool catalog = false;
    std::vector<std::pair<std::string, std::string>> stanzas;  // (name, kind)

    std::map<std::string, GroupRef> groups;
    std::map<std::string, GroupoidRef> groupoids;
    std::map<std::string, GroupHom> homs;
    std::map<std::string, GroupAction> group_actions;
    std::map<std::string, CrossedModule> crossed_modules;
    std::map<std::string, TwoGroupRef> two_groups;
    std::map<std::string, GroupGroupoid> group_groupoids;
    std::map<std::string, TwoGroupAction> two_group_actions;
    std::map<std::string, Surjection> surjections;
    std::map<std::string, PBStanza> pbs;
    std::map<std::string, BundleGerbe> gerbes;
    std::map<std::string, GroupoidFunctor> functors;
    std::map<std::string, PrincipalBundle> bundles;
    std::map<std::string, Bitorsor> bitorsors;

    std::optional<std::string> kind_of(const std::string& name) const;
    // Named stanza, or the first stanza of one of `kinds` when name is empty.
    std::pair<std::string, std::string> pick(const std::string& name, const std::vector<std::string>& kinds) const;
    BaseTrivialPB base_trivial(const std::string& pb_name) const;
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);

// Sorted keys, two-space indent, arrays of scalars on one line.
std::string canonical(const json& j);
void write_text(const std::string& path, const std::string& text);

class DocumentWriter {
public:
    explicit DocumentWriter(bool catalog = false) : catalog_(catalog) {}

    std::string group(const GroupRef& g, std::string name = {});
    std::string groupoid(const GroupoidRef& g, std::string name = {});
    std::string hom(const GroupHom& f, std::string name);
    std::string group_action(const GroupAction& a, std::string name);
    std::string crossed_module(const CrossedModule& cm, std::string name);
    std::string two_group(const TwoGroupRef& tg, std::string name = {});
    std::string group_groupoid(const GroupGroupoid& gg, std::string name);
    std::string two_group_action(const TwoGroupAction& a, std::string name = {});
    std::string surjection(const Surjection& s, std::string name);
    std::string pb(const PBGroupoid& p, std::string name, const std::optional<std::vector<Index>>& triv_g = std::nullopt,
                   const std::optional<std::vector<Index>>& triv_y = std::nullopt,
                   const std::optional<std::string>& base_surjection = std::nullopt);
    std::string gerbe(const BundleGerbe& b, std::string name);
    std::string functor(const GroupoidFunctor& f, std::string name);
    std::string principal_bundle(const PrincipalBundle& b, std::string name);
    std::string bitorsor(const Bitorsor& b, std::string name);

    json document() const;

private:
    std::string fresh(std::string want);
    // Nested stanzas reuse an identical one already emitted.
    std::string add(std::string name, json stanza);
    template <class F>
    std::string nested(F&& f) {
        bool old = reuse_;
        reuse_ = true;
        auto r = f();
        reuse_ = old;
        return r;
    }

    bool catalog_;
    std::vector<json> stanzas_;
    std::map<std::string, int> used_;
    std::map<const void*, std::string> seen_;
    std::vector<std::shared_ptr<const void>> keep_;  // pins the keys of seen_
    bool reuse_ = false;
};

// Re-emits a parsed document stanza by stanza under the original names.
json emit_document(const Document& d);

}  // namespace pbg
