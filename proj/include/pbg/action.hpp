#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pbg/two_group.hpp"

namespace pbg {

struct TwoGroupAction {
    TwoGroupRef tg;
    GroupoidRef target;
    GroupAction act_arr;  // H x| G on arrows of target
    GroupAction act_obj;  // G on objects of target

    Index arr(Index u, Index phi) const { return act_arr.act(u, phi); }
    Index obj(Index g, Index p) const { return act_obj.act(g, p); }
};

ValidationReport check_two_group_action(const TwoGroupAction& a);

// The 2-group acting on its own groupoid by left multiplication.
TwoGroupAction regular_action(TwoGroupRef tg);
// Only the unit acts; tg must be the trivial 2-group or the action is not free.
TwoGroupAction trivial_two_group_action(TwoGroupRef tg, GroupoidRef target);

struct GroupoidQuotient {
    GroupoidRef groupoid;
    GroupoidFunctor projection;
    std::vector<std::vector<Index>> arrow_orbits;
    std::vector<std::vector<Index>> object_orbits;
};

// Quotient of a.target by the arrow elements `elems` (a subgroup of H x| G)
// and the whole object group. Classes are ordered and labelled by their
// lexicographically least member label.
GroupoidQuotient quotient_by_subgroup(const TwoGroupAction& a, const std::vector<Index>& elems, std::string name);

struct PBGroupoid {
    TwoGroupAction action;
    GroupoidRef base;
    GroupoidFunctor proj;

    const TwoGroup& tg() const { return *action.tg; }
    const FiniteGroupoid& total() const { return *action.target; }
};

ValidationReport check_fibration(const GroupoidFunctor& proj);
ValidationReport check_pb_groupoid(const PBGroupoid& p);

PBGroupoid quotient_pb(const TwoGroupAction& a);

struct PartialQuotient {
    GroupoidRef groupoid;
    GroupoidFunctor Q;
    std::vector<std::vector<Index>> arrow_orbits;
    std::vector<std::vector<Index>> object_orbits;
    ValidationReport report;  // includes whether the full H x| G action is free
};

// P^(1)/_G: quotient by {(e,g)}. Only freeness of that restriction is required.
PartialQuotient partial_quotient(const TwoGroupAction& a);
inline PartialQuotient partial_quotient(const PBGroupoid& p) { return partial_quotient(p.action); }

// A free G-set P with its quotient map to M.
struct PrincipalBundle {
    GroupAction action;
    Surjection proj;
};

ValidationReport check_principal_bundle(const PrincipalBundle& b);
// P = G x M, labels "(g,m)", index g*|M| + m, G acting on the left factor.
PrincipalBundle trivial_principal_bundle(GroupRef G, const std::vector<std::string>& M);
// G x| G acting on the pair groupoid of P by (h,g).(p,q) = (hg p, g q);
// base is the pair groupoid of M with proj (p,q) -> (pi p, pi q).
PBGroupoid pb_groupoid_from_principal_bundle(const PrincipalBundle& b);

// PB groupoid whose object set is identified with G x Y, Y = base objects.
struct BaseTrivialPB {
    PBGroupoid pb;
    std::vector<Index> triv_g;  // object of P -> G component
    std::vector<Index> triv_y;  // object of P -> base object

    Index object(Index g, Index y) const { return inverse[std::size_t(g) * pb.base->num_objects() + y]; }
    std::vector<Index> inverse;
};

ValidationReport check_base_trivial(const PBGroupoid& p, const std::vector<Index>& triv_g,
                                    const std::vector<Index>& triv_y);
BaseTrivialPB make_base_trivial(PBGroupoid p, std::vector<Index> triv_g, std::vector<Index> triv_y);
// Uses the (g,m) labelling of trivial_principal_bundle.
BaseTrivialPB base_trivial_from_principal_bundle(const PrincipalBundle& b);

struct GroupoidActionData {
    GroupoidRef acting;
    std::vector<std::string> carrier;
    std::vector<Index> anchor;  // carrier -> objects of acting
    std::vector<Index> star;    // [gamma*|B| + b]; kNone off {s(gamma) = anchor(b)}

    Index act(Index gamma, Index b) const { return star[std::size_t(gamma) * carrier.size() + b]; }
};

ValidationReport check_groupoid_action(const GroupoidActionData& d);
std::vector<Index> action_orbits(const GroupoidActionData& d);

struct PrincipalGroupoidBundle {
    GroupoidActionData data;
    Surjection Pi;
};

ValidationReport check_principal_groupoid_bundle(const PrincipalGroupoidBundle& b);

}  // namespace pbg
