#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbg/errors.hpp"
#include "pbg/report.hpp"

namespace pbg {

// Cayley-table group on interned labels. Unit and inverse are derived;
// either may be kNone when the table is not a group (check_group reports it).
class FiniteGroup {
public:
    FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<Index> mul);

    static FiniteGroup from_rows(std::string name, std::vector<std::string> labels,
                                 const std::vector<std::vector<Index>>& rows);
    static FiniteGroup from_function(std::string name, std::vector<std::string> labels,
                                     const std::function<Index(Index, Index)>& mul);

    const std::string& name() const { return name_; }
    std::size_t order() const { return labels_.size(); }
    Index mul(Index a, Index b) const { return mul_[std::size_t(a) * labels_.size() + b]; }
    Index unit() const { return unit_; }
    Index inv(Index a) const { return inv_[a]; }
    Index conj(Index g, Index h) const { return mul(mul(g, h), inv(g)); }
    Index element_order(Index a) const;

    const std::string& label(Index i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Index> find(std::string_view label) const;
    Index index_of(std::string_view label) const;
    const std::vector<Index>& table() const { return mul_; }
    bool is_abelian() const;

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Index> index_;
    std::vector<Index> mul_;
    Index unit_ = kNone;
    std::vector<Index> inv_;
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

struct GroupHom {
    GroupRef dom;
    GroupRef cod;
    std::vector<Index> map;

    GroupHom(GroupRef d, GroupRef c, std::vector<Index> m);
    Index operator()(Index x) const { return map[x]; }
};

// Left action; table entry [g * |X| + x] is g.x.
struct GroupAction {
    GroupRef group;
    std::vector<std::string> carrier;
    std::vector<Index> table;

    GroupAction(GroupRef g, std::vector<std::string> x, std::vector<Index> t);
    Index act(Index g, Index x) const { return table[std::size_t(g) * carrier.size() + x]; }
    std::size_t size() const { return carrier.size(); }
};

ValidationReport check_group(const FiniteGroup& g);
ValidationReport check_hom(const GroupHom& f);
ValidationReport check_action(const GroupAction& a);
bool is_free(const GroupAction& a);
// First (g, x) with g != e and g.x = x.
std::optional<std::pair<Index, Index>> fixed_point(const GroupAction& a);

GroupRef make_group(FiniteGroup g);
GroupRef trivial_group(std::string name = "1");
GroupRef cyclic_group(unsigned n, std::string name = {});
GroupRef symmetric_group(unsigned n, std::string name = {});
GroupRef direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string name = {});

// Product (h2,g2)(h1,g1) = (h2 C_{g2}(h1), g2 g1); element (h,g) has index h*|G| + g.
GroupRef semidirect_product(GroupRef H, GroupRef G, const GroupAction& C, std::string name = {});
inline Index sd_index(Index h, Index g, std::size_t order_g) {
    return Index(std::size_t(h) * order_g + g);
}

// Subgroup on the given elements (must be closed), labels inherited.
GroupRef subgroup(const FiniteGroup& g, const std::vector<Index>& elems, std::string name);

GroupAction conjugation_action(GroupRef g);
GroupAction trivial_action(GroupRef g, std::vector<std::string> carrier);
GroupAction left_translation(GroupRef g);

// Isomorphisms by backtracking over images of a generating set.
std::optional<std::vector<Index>> find_group_isomorphism(const FiniteGroup& a, const FiniteGroup& b);
// Calls visit on each isomorphism until it returns false.
void for_each_group_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                const std::function<bool(const std::vector<Index>&)>& visit);

}  // namespace pbg
