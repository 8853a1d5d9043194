#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "pbg/catalog.hpp"

namespace pbgtest {

using namespace pbg;

inline std::vector<std::string> pts(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, char('a' + i)));
    return out;
}

// Brute-force group isomorphism test over all bijections; oracle for small orders.
inline bool groups_isomorphic_brute(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return false;
    std::vector<Index> p(a.order());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (Index x = 0; ok && x < a.order(); ++x)
            for (Index y = 0; ok && y < a.order(); ++y) ok = p[a.mul(x, y)] == b.mul(p[x], p[y]);
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline std::size_t assoc_failures_brute(const FiniteGroup& g) {
    std::size_t n = 0;
    const auto& t = g.table();
    const std::size_t k = g.order();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c)
                if (t[t[a * k + b] * k + c] != t[a * k + t[b * k + c]]) ++n;
    return n;
}

inline bool throws_kind(ErrorKind k, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

inline GroupoidRef pair_ref(std::size_t n) { return share(pair_groupoid(pts(n))); }

}  // namespace pbgtest
