#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbg/action.hpp"

namespace pbg {

// Checks full, faithful and essentially surjective. Certificates land in
// the notes: hom-set sizes per object pair and one (alpha, p) per target object.
ValidationReport check_weak_equivalence(const GroupoidFunctor& f);
bool is_weak_equivalence(const GroupoidFunctor& f);

// Left action of `left` with anchor rho, right action of `right` with anchor
// sigma. right_act[eta * |X| + x] = x . eta, defined when sigma(x) = t(eta).
struct Bitorsor {
    GroupoidRef left;
    GroupoidRef right;
    std::vector<std::string> carrier;
    std::vector<Index> rho;
    std::vector<Index> sigma;
    std::vector<Index> left_act;   // [gamma * |X| + x], s(gamma) = rho(x)
    std::vector<Index> right_act;  // [eta * |X| + x]
    Index lact(Index gamma, Index x) const { return left_act[std::size_t(gamma) * carrier.size() + x]; }
    Index ract(Index x, Index eta) const { return right_act[std::size_t(eta) * carrier.size() + x]; }
};

ValidationReport check_bitorsor(const Bitorsor& b);
// X = {(beta, a) : s(beta) = F a}; left B by post-composition, right A through F.
Bitorsor bitorsor_from_functor(const GroupoidFunctor& f);

struct MoritaPullback {
    bool equivalent = false;
    std::optional<GroupoidFunctor> witness;  // rho^-1 G -> sigma^-1 H
};
// Both pullbacks live over P; the object map of the witness is fixed to the identity.
MoritaPullback check_morita_pullback(GroupoidRef g, GroupoidRef h, const Surjection& rho, const Surjection& sigma);

enum class MoritaVia { Pullback, Bitorsor, Weak };

// Decides Morita equivalence of finite groupoids through skeleta: a functor
// a -> b is assembled from a component matching with isomorphic isotropy and
// then certified by the chosen route.
ValidationReport morita_decide(GroupoidRef a, GroupoidRef b, MoritaVia via);
// All three routes plus their agreement.
ValidationReport morita_three_way(GroupoidRef a, GroupoidRef b);

// Y^[2] vs the identity groupoid on M, three ways.
ValidationReport fiber_product_morita(const Surjection& pi);

// Groupoid of pairs (alpha, beta) with F alpha = F beta.
FiniteGroupoid fiber_product_over(const GroupoidFunctor& f, std::string name = "fiber_product");

// Inclusion P x_Y P -> P x_M P is a weak equivalence iff phi is.
ValidationReport lemma_weakequiv_check(const GroupoidFunctor& pi1, const GroupoidFunctor& phi);

// P^(1) -> M invariant under a 2-group action; M an identity groupoid.
ValidationReport interpret_principal_2bundle(const TwoGroupAction& a, const GroupoidFunctor& to_m);

struct Principal2Bundle {
    TwoGroupAction action;
    GroupoidFunctor to_m;
};
// P x_M P with (h,g).(p,q) = (hg p, g q) over the identity groupoid on M.
Principal2Bundle principal_2bundle_from_principal_bundle(const PrincipalBundle& b);

}  // namespace pbg
