#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pbg/group.hpp"
#include "pbg/groupoid.hpp"

namespace pbg {

struct CrossedModule {
    GroupRef H;
    GroupRef G;
    GroupAction C;  // G on the carrier of H
    GroupHom d;     // H -> G

    Index act(Index g, Index h) const { return C.act(g, h); }
};

ValidationReport check_crossed_module(const CrossedModule& cm);

CrossedModule normal_subgroup_crossed_module(GroupRef G, const std::vector<Index>& normal, std::string hname);
// (G, G, conjugation, id): the structure 2-group of the pair-groupoid example.
CrossedModule gauge_crossed_module(GroupRef G);
// ({e}, G): the identity 2-group.
CrossedModule identity_crossed_module(GroupRef G);
// d = e_G; any action by automorphisms.
CrossedModule trivial_d_crossed_module(GroupRef H, GroupRef G, GroupAction C);

// Canonical model H x| G over G: s(h,g) = g, t(h,g) = d(h)g,
// (h2, d(h1)g1) o (h1, g1) = (h2 h1, g1). Arrow (h,g) has index h*|G| + g.
class TwoGroup {
public:
    explicit TwoGroup(CrossedModule cm);

    const CrossedModule& crossed_module() const { return cm_; }
    const FiniteGroup& H() const { return *cm_.H; }
    const FiniteGroup& G() const { return *cm_.G; }
    GroupRef H_ref() const { return cm_.H; }
    GroupRef G_ref() const { return cm_.G; }
    GroupRef arrows_group() const { return arrows_; }
    GroupoidRef groupoid() const { return groupoid_; }

    std::size_t num_arrows() const { return arrows_->order(); }
    Index arrow(Index h, Index g) const { return sd_index(h, g, cm_.G->order()); }
    Index h_of(Index a) const { return Index(a / cm_.G->order()); }
    Index g_of(Index a) const { return Index(a % cm_.G->order()); }
    Index s(Index a) const { return g_of(a); }
    Index t(Index a) const { return cm_.G->mul(cm_.d(h_of(a)), g_of(a)); }
    Index e(Index g) const { return arrow(cm_.H->unit(), g); }
    Index mul(Index a, Index b) const { return arrows_->mul(a, b); }
    Index comp(Index b, Index a) const { return groupoid_->comp(b, a); }

    GroupHom s_hom() const;
    GroupHom t_hom() const;
    GroupHom e_hom() const;

private:
    CrossedModule cm_;
    GroupRef arrows_;
    GroupoidRef groupoid_;
};

using TwoGroupRef = std::shared_ptr<const TwoGroup>;

TwoGroupRef two_group_from_crossed_module(CrossedModule cm);

// A groupoid in groups given raw: arrow i of the groupoid is element i of
// `arrows`, object j is element j of `objects`.
struct GroupGroupoid {
    GroupRef arrows;
    GroupRef objects;
    GroupoidRef groupoid;
};

ValidationReport check_group_groupoid(const GroupGroupoid& gg);
ValidationReport check_two_group(const TwoGroup& tg);

GroupGroupoid as_group_groupoid(const TwoGroup& tg);
GroupGroupoid pair_group_groupoid(GroupRef G);
GroupGroupoid identity_group_groupoid(GroupRef G);

struct NormalizedTwoGroup {
    CrossedModule cm;
    std::vector<Index> kernel;  // H index -> arrow index of the raw input
};

// H = ker(s), C_g h = e(g) h e(g)^{-1}, d = t restricted to H.
NormalizedTwoGroup crossed_module_from_two_group(const GroupGroupoid& gg);

struct PhiIso {
    TwoGroupRef canonical;
    GroupHom group_map;        // H x| G -> raw arrows
    GroupoidFunctor functor;   // canonical groupoid -> raw groupoid
};

// (h,g) |-> h e(g), verified bijective, multiplicative and functorial.
PhiIso phi_iso(const GroupGroupoid& gg);

struct CrossedModuleIso {
    std::vector<Index> alpha;  // H -> H'
    std::vector<Index> beta;   // G -> G'
};

ValidationReport check_crossed_module_iso(const CrossedModule& a, const CrossedModule& b, const CrossedModuleIso& f);
std::optional<CrossedModuleIso> find_crossed_module_isomorphism(const CrossedModule& a, const CrossedModule& b);

}  // namespace pbg
