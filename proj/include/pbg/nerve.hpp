#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pbg/action.hpp"

namespace pbg {

// Levels X^(0..K); faces[k][i]: X^(k) -> X^(k-1) for k >= 1;
// degens[k][j]: X^(k) -> X^(k+1) for k < K, 0 <= j <= k.
struct SimplicialObject {
    std::string name;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::vector<Index>>> faces;
    std::vector<std::vector<std::vector<Index>>> degens;

    std::size_t top() const { return sizes.size() - 1; }
};

ValidationReport check_simplicial(const SimplicialObject& s);
SimplicialObject constant_simplicial(std::size_t n, std::size_t K);

inline constexpr std::size_t kLevelCap = 1000000;

// Composable tuples (a_1, ..., a_k) with s(a_i) = t(a_{i+1}); level 0 = objects.
// Vertices v_0 = t(a_1), v_i = s(a_i).
class Nerve {
public:
    Nerve(GroupoidRef g, std::size_t K);

    const FiniteGroupoid& groupoid() const { return *g_; }
    GroupoidRef groupoid_ref() const { return g_; }
    std::size_t top() const { return sizes_.size() - 1; }
    std::size_t size(std::size_t k) const { return sizes_[k]; }
    bool capped() const { return capped_; }

    // Arrow m (1-based) of tuple x at level k >= 1.
    Index arrow(std::size_t k, Index x, std::size_t m) const { return data_[k][std::size_t(x) * k + m - 1]; }
    std::vector<Index> tuple(std::size_t k, Index x) const;
    Index vertex(std::size_t k, Index x, std::size_t j) const;
    // kNone when the arrows are not composable.
    Index index_of(const std::vector<Index>& arrows) const;

    Index face(std::size_t k, std::size_t i, Index x) const;
    Index degen(std::size_t k, std::size_t j, Index x) const;

    SimplicialObject simplicial() const;

private:
    GroupoidRef g_;
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<Index>> data_;
    std::vector<std::vector<Index>> offset_;  // offset_[k][prefix index]
    std::vector<Index> pos_in_;
    bool capped_ = false;
};

// Vertex sequence (p_0..p_k) of the pair groupoid nerve -> tuple index.
Index pair_nerve_index(const Nerve& n, const std::vector<Index>& vertices);
ValidationReport check_pair_nerve_faces(const std::vector<std::string>& x, std::size_t K);

// Three presentations of the nerve of H x| G => G.
// A: nerve tuples with coordinatewise product.
// B: (h_k, ..., h_1, g), product by transport along A.
// C: H^k x| G with diagonal action, bold h_j = h_j ... h_1.
class TwoGroupNerveModels {
public:
    TwoGroupNerveModels(TwoGroupRef tg, std::size_t K);

    const Nerve& A() const { return nerve_; }
    std::size_t top() const { return nerve_.top(); }
    std::size_t size(std::size_t k) const { return nerve_.size(k); }

    // Encoding of (h_k..h_1, g): hs[0] = h_1.
    Index encode(const std::vector<Index>& hs, Index g) const;
    std::pair<std::vector<Index>, Index> decode(std::size_t k, Index x) const;

    Index a_to_b(std::size_t k, Index x) const { return ab_[k][x]; }
    Index b_to_a(std::size_t k, Index x) const { return ba_[k][x]; }
    Index b_to_c(std::size_t k, Index x) const;
    Index c_to_b(std::size_t k, Index x) const;

    Index mul_a(std::size_t k, Index x, Index y) const;
    Index mul_b(std::size_t k, Index x, Index y) const;
    Index mul_c(std::size_t k, Index x, Index y) const;

    // Inner faces/degeneracies as quoted; outer faces by transport along A.
    Index face_b(std::size_t k, std::size_t i, Index x) const;
    Index degen_b(std::size_t k, std::size_t j, Index x) const;
    Index face_c(std::size_t k, std::size_t i, Index x) const;
    Index degen_c(std::size_t k, std::size_t j, Index x) const;
    // Closed forms for C's outer faces, checked against transport.
    Index face_c_closed(std::size_t k, std::size_t i, Index x) const;

    SimplicialObject simplicial_a() const { return nerve_.simplicial(); }
    SimplicialObject simplicial_b() const;
    SimplicialObject simplicial_c() const;

    ValidationReport verify() const;

private:
    TwoGroupRef tg_;
    Nerve nerve_;
    std::vector<std::vector<Index>> ab_, ba_;
};

// Level-k principal bundle of a PB groupoid: G^(k) (model A) acting slotwise on P^(k).
class PBNerve {
public:
    PBNerve(const PBGroupoid& p, std::size_t K);

    const PBGroupoid& pb() const { return *p_; }
    const Nerve& P() const { return np_; }
    const Nerve& G() const { return ng_; }
    const Nerve& M() const { return nm_; }
    std::size_t top() const { return np_.top(); }

    Index act(std::size_t k, Index u, Index x) const;
    Index proj(std::size_t k, Index x) const;
    Index gmul(std::size_t k, Index u, Index v) const;
    Index ginv(std::size_t k, Index u) const;
    Index gunit(std::size_t k) const;

    ValidationReport verify() const;

private:
    const PBGroupoid* p_;
    Nerve np_, ng_, nm_;
};

ValidationReport nerve_pb_report(const PBGroupoid& p, std::size_t K);

// N^k(P^(1))/G -> N^k(P^(1)/_G) with face and degeneracy squares.
ValidationReport partial_quotient_nerve(const PBGroupoid& p, std::size_t K);

}  // namespace pbg
