#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbg/gerbe.hpp"
#include "pbg/nerve.hpp"

namespace pbg {

inline constexpr std::size_t kCarrierCap = 10000;

// Level k of the nerve bundle, tabulated. Group elements are model-A indices
// into N^k(H x| G); classes are orbits of the diagonal G action through e.
class LevelBundle {
public:
    LevelBundle(const PBGroupoid& p, std::size_t k, std::size_t carrier_cap = kCarrierCap);

    std::size_t level() const { return k_; }
    std::size_t num_points() const { return nP_; }
    std::size_t group_order() const { return nG_; }
    std::size_t num_base() const { return nM_; }

    Index act(Index u, Index x) const { return act_[std::size_t(u) * nP_ + x]; }
    Index mul(Index u, Index v) const { return mul_[std::size_t(u) * nG_ + v]; }
    Index inv(Index u) const { return inv_[u]; }
    Index unit() const { return unit_; }
    Index conj(Index u, Index v) const { return mul(mul(u, v), inv(u)); }
    Index proj(Index x) const { return proj_[x]; }

    // u in H^k iff its G coordinate is e; section(g) = (e, .., e, g).
    bool in_h(Index u) const { return gpart_[u] == g_unit_; }
    bool in_section(Index u) const { return in_sect_[u] != 0; }
    Index section(Index g) const { return section_[g]; }
    // (h_k..h_1, g) -> (C_{g^-1} h_k, .., C_{g^-1} h_1, e)
    Index gamma(Index u) const { return gamma_[u]; }
    std::size_t base_group_order() const { return section_.size(); }

    std::size_t num_orbits() const { return reps_.size(); }
    Index orbit_of(Index x) const { return orbit_[x]; }
    Index rep(Index o) const { return reps_[o]; }
    Index coord(Index x) const { return coord_[x]; }  // x = coord(x) . rep(orbit_of(x))
    const std::vector<Index>& orbit_points(Index o) const { return points_[o]; }

    std::size_t num_classes() const { return nC_; }
    Index class_of(Index x) const { return class_[x]; }

    const Nerve& point_nerve() const { return *np_; }

private:
    std::size_t k_, nP_ = 0, nG_ = 0, nM_ = 0, nC_ = 0;
    std::vector<Index> act_, mul_, inv_, proj_;
    Index unit_ = kNone, g_unit_ = kNone;
    std::vector<Index> gpart_, gamma_, section_;
    std::vector<char> in_sect_;
    std::vector<Index> orbit_, reps_, coord_, class_;
    std::vector<std::vector<Index>> points_;
    std::shared_ptr<Nerve> np_;
};

// a(x) = psi(x) . x; throws NoGroupElement when a(x) is off the orbit of x.
std::vector<Index> psi_k(const LevelBundle& lb, const std::vector<Index>& perm);
std::vector<Index> psi_k_inverse(const LevelBundle& lb, const std::vector<Index>& psi);
// psi(u.x) = u psi(x) u^-1
bool is_equivariant(const LevelBundle& lb, const std::vector<Index>& values);
std::vector<Index> gamma_k(const LevelBundle& lb, const std::vector<Index>& psi);
// Maps on classes: [x] -> [(gamma(x), e) . x] and [x] -> [a(x)]. Throw IllDefinedOnClasses.
std::vector<Index> xi_k(const LevelBundle& lb, const std::vector<Index>& gamma);
std::vector<Index> pi_k(const LevelBundle& lb, const std::vector<Index>& perm);

// Counts equivariant fiber-preserving bijections over all fiber-preserving
// self-maps; nullopt when there are more than `cap` candidates.
std::optional<std::size_t> brute_force_aut_count(const LevelBundle& lb, std::size_t cap = 1000000);

struct AutOptions {
    bool verify_square = true;
    std::size_t explicit_cap = 1024;  // enumerate Aut globally up to this order
};

struct AutSummary {
    ValidationReport report;
    bool explicit_mode = false;
    // Decimal strings; orders can exceed 64 bits.
    std::string aut, equivariant, equivariant_h, equivariant_section, pi_image, xi_image;
};

AutSummary aut_partial_quotient(const PBGroupoid& p, std::size_t k, const AutOptions& opt = {});
// As above; raises SquareFailure when the square fails.
ValidationReport verify_square(const PBGroupoid& p, std::size_t k);

// Aut of N^k(B) for B = Xi(p), computed on B directly and through Aut(P^(k)/_G).
AutSummary aut_gerbe(const BaseTrivialPB& p, std::size_t k);

// f -> f x f -> f^{x(k+1)} into Aut of the gauge PB groupoid's nerve levels.
ValidationReport embeddings(const PrincipalBundle& b, std::size_t K);

std::string big_product(const std::vector<std::size_t>& factors);

}  // namespace pbg
