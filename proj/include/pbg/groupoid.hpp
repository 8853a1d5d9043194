#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pbg/group.hpp"

namespace pbg {

// beta o alpha is defined iff src(beta) == tgt(alpha). Composition is stored
// per composable pair only: the row of beta is indexed by the position of
// alpha among the arrows into src(beta).
class FiniteGroupoid {
public:
    using CompFn = std::function<Index(Index beta, Index alpha)>;

    FiniteGroupoid(std::string name, std::vector<std::string> objects, std::vector<std::string> arrows,
                   std::vector<Index> src, std::vector<Index> tgt, const CompFn& comp,
                   std::optional<std::vector<Index>> inverse = std::nullopt);

    // Missing composable entries stay undefined (reported by check_groupoid);
    // a triple off the composable set raises CompositionDomain.
    static FiniteGroupoid from_triples(std::string name, std::vector<std::string> objects,
                                       std::vector<std::string> arrows, std::vector<Index> src,
                                       std::vector<Index> tgt,
                                       const std::vector<std::array<Index, 3>>& triples,
                                       std::optional<std::vector<Index>> inverse = std::nullopt);

    const std::string& name() const { return name_; }
    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    Index src(Index a) const { return src_[a]; }
    Index tgt(Index a) const { return tgt_[a]; }
    bool composable(Index beta, Index alpha) const { return src_[beta] == tgt_[alpha]; }
    // Throws NotComposable off the domain; kNone for an undefined entry.
    Index comp(Index beta, Index alpha) const;
    Index unit(Index o) const { return unit_[o]; }
    Index inv(Index a) const { return inv_[a]; }

    const std::vector<Index>& arrows_into(Index o) const { return in_[o]; }
    const std::vector<Index>& arrows_from(Index o) const { return out_[o]; }
    std::vector<Index> hom(Index from, Index to) const;

    const std::string& object_label(Index o) const { return objects_[o]; }
    const std::string& arrow_label(Index a) const { return arrows_[a]; }
    const std::vector<std::string>& object_labels() const { return objects_; }
    const std::vector<std::string>& arrow_labels() const { return arrows_; }
    std::optional<Index> find_object(const std::string& l) const;
    std::optional<Index> find_arrow(const std::string& l) const;
    Index object_index(const std::string& l) const;
    Index arrow_index(const std::string& l) const;
    const std::vector<Index>& src_table() const { return src_; }
    const std::vector<Index>& tgt_table() const { return tgt_; }

private:
    void index_structure();

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<std::string> arrows_;
    std::unordered_map<std::string, Index> obj_index_;
    std::unordered_map<std::string, Index> arr_index_;
    std::vector<Index> src_, tgt_;
    std::vector<std::vector<Index>> in_, out_;
    std::vector<Index> pos_in_;
    std::vector<std::size_t> row_;
    std::vector<Index> comp_;
    std::vector<Index> unit_;
    std::vector<Index> inv_;
};

using GroupoidRef = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidRef share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

struct GroupoidFunctor {
    GroupoidRef dom;
    GroupoidRef cod;
    std::vector<Index> obj_map;
    std::vector<Index> arr_map;

    GroupoidFunctor(GroupoidRef d, GroupoidRef c, std::vector<Index> o, std::vector<Index> a);
    bool bijective() const;
};

struct Surjection {
    std::vector<std::string> domain;
    std::vector<std::string> codomain;
    std::vector<Index> map;

    Surjection(std::vector<std::string> d, std::vector<std::string> c, std::vector<Index> m);
    std::vector<std::vector<Index>> fibers() const;
};

ValidationReport check_groupoid(const FiniteGroupoid& g);
ValidationReport check_functor(const GroupoidFunctor& f);

FiniteGroupoid pair_groupoid(const std::vector<std::string>& x, std::string name = "pair");
FiniteGroupoid identity_groupoid(const std::vector<std::string>& x, std::string name = "id");
FiniteGroupoid fiber_product_groupoid(const Surjection& pi, std::string name = "fiber_product");
FiniteGroupoid pullback_groupoid(const Surjection& pi, const FiniteGroupoid& m, std::string name = "pullback");
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b, std::string name = "product");
FiniteGroupoid group_as_groupoid(const FiniteGroup& g);

// Index of (y2, gamma, y1) in pullback_groupoid(pi, m); kNone if not an arrow.
struct PullbackIndex {
    std::size_t ny, na;
    std::vector<Index> idx;
    Index operator()(Index y2, Index gamma, Index y1) const {
        return idx[(std::size_t(y2) * na + gamma) * ny + y1];
    }
};
PullbackIndex pullback_index(const Surjection& pi, const FiniteGroupoid& m);

GroupoidFunctor identity_functor(GroupoidRef g);
GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f);

std::vector<Index> connected_components(const FiniteGroupoid& g);
GroupRef isotropy_group(const FiniteGroupoid& g, Index o);

// Structural search: components are matched by size and isotropy group,
// then a functor is assembled from spanning arrows and an isotropy
// isomorphism, and finally verified. fixed_objects pins the object map.
std::optional<GroupoidFunctor> find_groupoid_isomorphism(
    GroupoidRef a, GroupoidRef b, const std::optional<std::vector<Index>>& fixed_objects = std::nullopt);

}  // namespace pbg
