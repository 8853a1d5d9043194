#pragma once

#include <optional>
#include <vector>

#include "pbg/action.hpp"

namespace pbg {

// Groupoid B over Y with composition o_mu, projection Pi to the base Y^(1)
// (identity on objects), anchor rho into G, and star[h*|B| + b] = (h, rho(b)) * b.
struct BundleGerbe {
    TwoGroupRef tg;
    GroupoidRef B;
    GroupoidRef base;
    GroupoidFunctor Pi;
    std::vector<Index> rho;
    std::vector<Index> star;
    std::optional<Surjection> fiber;  // Y -> M when base is Y^[2]

    Index act(Index h, Index b) const { return star[std::size_t(h) * B->num_arrows() + b]; }
    GroupoidActionData action_data() const;
};

ValidationReport check_bundle_gerbe(const BundleGerbe& b);

// Base Y^(1) x (H x| G) as a base-trivial PB groupoid, and its gerbe.
BaseTrivialPB trivial_pb(TwoGroupRef tg, GroupoidRef base);
BundleGerbe trivial_gerbe(TwoGroupRef tg, GroupoidRef base);

// Checks that base is Y^[2] for pi (arrow <-> (tgt, src) bijection).
bool base_is_fiber_product(const FiniteGroupoid& base, const Surjection& pi);

// Carrier G x P^(1) over P x_M P; arrow (g, phi) has index g*|P^(1)| + phi.
BundleGerbe functor_phi(const PBGroupoid& p, const Surjection& pi);

enum class PsiConvention {
    Repaired,  // t(k,b) = (k rho(b)^{-1}, t(Pi b))
    Verbatim,  // t(k,b) = (k rho(b), t(Pi b)), kept to exhibit the failure
};

struct PsiResult {
    BaseTrivialPB pb;       // valid only when report.ok() for Verbatim
    ValidationReport report;
};

// Arrows G x B with index k*|B| + b, objects G x Y with index k*|Y| + y.
PsiResult functor_psi(const BundleGerbe& b, PsiConvention conv = PsiConvention::Repaired);

struct XiResult {
    BundleGerbe gerbe;
    std::vector<Index> b_of_arrow;  // arrow of P^(1) -> B index or kNone
    std::vector<Index> arrow_of_b;
    ValidationReport splitting;     // phi(xi) = (s_G xi, s_G(xi)^{-1} xi) bijective
};

XiResult functor_xi(const BaseTrivialPB& p);

ValidationReport check_pb_isomorphism(const PBGroupoid& a, const PBGroupoid& b, const GroupoidFunctor& f,
                                      const GroupoidFunctor& base_map);
ValidationReport check_gerbe_morphism(const BundleGerbe& a, const BundleGerbe& b, const GroupoidFunctor& f,
                                      const GroupoidFunctor& base_map);
ValidationReport check_gerbe_isomorphism(const BundleGerbe& a, const BundleGerbe& b, const GroupoidFunctor& f,
                                         const GroupoidFunctor& base_map);

// Psi(Xi(p)) = p via xi -> (s_G xi, s_G(xi)^{-1} xi); Xi(Psi(B)) = B via b -> (e, b).
ValidationReport verify_psi_xi_round_trip(const BaseTrivialPB& p);
ValidationReport verify_xi_psi_round_trip(const BundleGerbe& b);

// Phi(f) = Id_G x f for a strict PB morphism f: target of a -> target of b.
GroupoidFunctor phi_of_morphism(const BundleGerbe& ga, const BundleGerbe& gb, const GroupoidFunctor& f);
// Base map of Phi(f): (y2, y1) -> (f y2, f y1).
GroupoidFunctor phi_base_of_morphism(const BundleGerbe& ga, const BundleGerbe& gb, const GroupoidFunctor& f);

struct BgPqOptions {
    std::optional<Surjection> pi;                 // item 1
    std::optional<std::vector<Index>> triv_g, triv_y;  // item 2
};

ValidationReport verify_bg_pq(const PBGroupoid& p, const BgPqOptions& opt);

}  // namespace pbg
