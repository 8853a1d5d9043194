#include "pbg/group.hpp"

#include <algorithm>
#include <numeric>

namespace pbg {

namespace {

std::string triple(const FiniteGroup& g, Index a, Index b, Index c) {
    return "(" + g.label(a) + "," + g.label(b) + "," + g.label(c) + ")";
}

std::vector<Index> closure(const FiniteGroup& g, const std::vector<Index>& gens) {
    std::vector<char> seen(g.order(), 0);
    std::vector<Index> out{g.unit()};
    seen[g.unit()] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (Index s : gens) {
            Index y = g.mul(out[i], s);
            if (!seen[y]) {
                seen[y] = 1;
                out.push_back(y);
            }
        }
    return out;
}

std::vector<Index> generating_set(const FiniteGroup& g) {
    std::vector<Index> gens;
    std::vector<Index> span{g.unit()};
    while (span.size() < g.order()) {
        std::vector<char> in(g.order(), 0);
        for (Index x : span) in[x] = 1;
        Index best = kNone;
        for (Index x = 0; x < g.order(); ++x)
            if (!in[x] && (best == kNone || g.element_order(x) > g.element_order(best))) best = x;
        gens.push_back(best);
        span = closure(g, gens);
    }
    return gens;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<Index> mul)
    : name_(std::move(name)), labels_(std::move(labels)), mul_(std::move(mul)) {
    const std::size_t n = labels_.size();
    if (n == 0) raise(ErrorKind::EmptyCarrier, "group '" + name_ + "' has no elements");
    if (mul_.size() != n * n)
        raise(ErrorKind::TableArity, "group '" + name_ + "': mul table has " +
                                         std::to_string(mul_.size()) + " entries, expected " +
                                         std::to_string(n * n));
    for (Index i = 0; i < n; ++i)
        if (!index_.emplace(labels_[i], i).second)
            raise(ErrorKind::TableArity, "group '" + name_ + "': duplicate label " + labels_[i]);
    for (Index v : mul_)
        if (v >= n) raise(ErrorKind::TableArity, "group '" + name_ + "': entry out of range");

    for (Index e = 0; e < n && unit_ == kNone; ++e) {
        bool ok = true;
        for (Index x = 0; x < n && ok; ++x) ok = this->mul(e, x) == x && this->mul(x, e) == x;
        if (ok) unit_ = e;
    }
    inv_.assign(n, kNone);
    if (unit_ != kNone)
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                if (this->mul(x, y) == unit_ && this->mul(y, x) == unit_) {
                    inv_[x] = y;
                    break;
                }
}

FiniteGroup FiniteGroup::from_rows(std::string name, std::vector<std::string> labels,
                                   const std::vector<std::vector<Index>>& rows) {
    const std::size_t n = labels.size();
    if (rows.size() != n)
        raise(ErrorKind::TableArity, "group '" + name + "': " + std::to_string(rows.size()) +
                                         " rows for " + std::to_string(n) + " elements");
    std::vector<Index> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            raise(ErrorKind::TableArity, "group '" + name + "': row " + std::to_string(i) +
                                             " has length " + std::to_string(rows[i].size()));
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return FiniteGroup(std::move(name), std::move(labels), std::move(flat));
}

FiniteGroup FiniteGroup::from_function(std::string name, std::vector<std::string> labels,
                                       const std::function<Index(Index, Index)>& mul) {
    const std::size_t n = labels.size();
    std::vector<Index> flat(n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) flat[a * n + b] = mul(a, b);
    return FiniteGroup(std::move(name), std::move(labels), std::move(flat));
}

Index FiniteGroup::element_order(Index a) const {
    Index x = a;
    Index k = 1;
    while (x != unit_ && k <= order()) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::optional<Index> FiniteGroup::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Index FiniteGroup::index_of(std::string_view label) const {
    auto i = find(label);
    if (!i) raise(ErrorKind::DanglingReference, "no element '" + std::string(label) + "' in group " + name_);
    return *i;
}

bool FiniteGroup::is_abelian() const {
    for (Index a = 0; a < order(); ++a)
        for (Index b = 0; b < a; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

GroupHom::GroupHom(GroupRef d, GroupRef c, std::vector<Index> m)
    : dom(std::move(d)), cod(std::move(c)), map(std::move(m)) {
    if (map.size() != dom->order())
        raise(ErrorKind::TableArity, "hom " + dom->name() + "->" + cod->name() + ": map has " +
                                         std::to_string(map.size()) + " entries");
    for (Index v : map)
        if (v >= cod->order()) raise(ErrorKind::TableArity, "hom value out of range");
}

GroupAction::GroupAction(GroupRef g, std::vector<std::string> x, std::vector<Index> t)
    : group(std::move(g)), carrier(std::move(x)), table(std::move(t)) {
    if (table.size() != group->order() * carrier.size())
        raise(ErrorKind::TableArity, "action of " + group->name() + ": table has " +
                                         std::to_string(table.size()) + " entries");
    for (Index v : table)
        if (v >= carrier.size()) raise(ErrorKind::TableArity, "action value out of range");
}

ValidationReport check_group(const FiniteGroup& g) {
    ValidationReport r;
    const Index n = Index(g.order());
    r.declare("associativity");
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) r.fail("associativity", triple(g, a, b, c));
    r.expect("unit", g.unit() != kNone, "no two-sided neutral element");
    r.declare("inverse");
    if (g.unit() != kNone)
        for (Index a = 0; a < n; ++a)
            if (g.inv(a) == kNone) r.fail("inverse", g.label(a));
    return r;
}

ValidationReport check_hom(const GroupHom& f) {
    ValidationReport r;
    r.declare("multiplicative");
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    for (Index x = 0; x < A.order(); ++x)
        for (Index y = 0; y < A.order(); ++y)
            if (f(A.mul(x, y)) != B.mul(f(x), f(y)))
                r.fail("multiplicative", "(" + A.label(x) + "," + A.label(y) + ")");
    r.expect("unit", A.unit() != kNone && B.unit() != kNone && f(A.unit()) == B.unit(),
             "unit not preserved");
    return r;
}

ValidationReport check_action(const GroupAction& a) {
    ValidationReport r;
    const auto& G = *a.group;
    r.declare("unit");
    r.declare("compatibility");
    for (Index x = 0; x < a.size(); ++x)
        if (a.act(G.unit(), x) != x) r.fail("unit", a.carrier[x]);
    for (Index g2 = 0; g2 < G.order(); ++g2)
        for (Index g1 = 0; g1 < G.order(); ++g1)
            for (Index x = 0; x < a.size(); ++x)
                if (a.act(g2, a.act(g1, x)) != a.act(G.mul(g2, g1), x))
                    r.fail("compatibility", "(" + G.label(g2) + "," + G.label(g1) + "," + a.carrier[x] + ")");
    return r;
}

std::optional<std::pair<Index, Index>> fixed_point(const GroupAction& a) {
    const auto& G = *a.group;
    for (Index g = 0; g < G.order(); ++g) {
        if (g == G.unit()) continue;
        for (Index x = 0; x < a.size(); ++x)
            if (a.act(g, x) == x) return std::make_pair(g, x);
    }
    return std::nullopt;
}

bool is_free(const GroupAction& a) { return !fixed_point(a).has_value(); }

GroupRef make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupRef trivial_group(std::string name) {
    return make_group(FiniteGroup(std::move(name), {"e"}, {0}));
}

GroupRef cyclic_group(unsigned n, std::string name) {
    if (name.empty()) name = "Z" + std::to_string(n);
    std::vector<std::string> labels;
    for (unsigned i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return make_group(FiniteGroup::from_function(std::move(name), std::move(labels),
                                                 [n](Index a, Index b) { return Index((a + b) % n); }));
}

GroupRef symmetric_group(unsigned n, std::string name) {
    if (name.empty()) name = "S" + std::to_string(n);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> labels;
    for (const auto& q : perms) {
        std::string s;
        for (int v : q) s += char('1' + v);
        labels.push_back(s);
    }
    auto idx = [&](const std::vector<int>& q) {
        return Index(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    // (ab)(i) = a(b(i))
    return make_group(FiniteGroup::from_function(std::move(name), std::move(labels), [&](Index a, Index b) {
        std::vector<int> c(n);
        for (unsigned i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
        return idx(c);
    }));
}

GroupRef direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string name) {
    if (name.empty()) name = a.name() + "x" + b.name();
    const std::size_t nb = b.order();
    std::vector<std::string> labels;
    for (Index i = 0; i < a.order(); ++i)
        for (Index j = 0; j < nb; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
    return make_group(FiniteGroup::from_function(std::move(name), std::move(labels), [&](Index x, Index y) {
        return Index(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
    }));
}

GroupRef semidirect_product(GroupRef H, GroupRef G, const GroupAction& C, std::string name) {
    if (C.size() != H->order() || C.group->order() != G->order())
        raise(ErrorKind::TableArity, "semidirect product: action shape does not match H and G");
    for (Index g = 0; g < G->order(); ++g) {
        std::vector<Index> m(H->order());
        for (Index h = 0; h < H->order(); ++h) m[h] = C.act(g, h);
        auto rep = check_hom(GroupHom(H, H, m));
        if (!rep.ok())
            raise(ErrorKind::NotByAutomorphisms, "C_" + G->label(g) + " is not a homomorphism of " + H->name());
    }
    if (name.empty()) name = H->name() + "x|" + G->name();
    const std::size_t ng = G->order();
    std::vector<std::string> labels;
    for (Index h = 0; h < H->order(); ++h)
        for (Index g = 0; g < ng; ++g) labels.push_back("(" + H->label(h) + "," + G->label(g) + ")");
    return make_group(FiniteGroup::from_function(std::move(name), std::move(labels), [&](Index x, Index y) {
        Index h2 = x / ng, g2 = x % ng, h1 = y / ng, g1 = y % ng;
        return sd_index(H->mul(h2, C.act(g2, h1)), G->mul(g2, g1), ng);
    }));
}

GroupRef subgroup(const FiniteGroup& g, const std::vector<Index>& elems, std::string name) {
    std::vector<Index> pos(g.order(), kNone);
    std::vector<std::string> labels;
    for (Index i = 0; i < elems.size(); ++i) {
        pos[elems[i]] = i;
        labels.push_back(g.label(elems[i]));
    }
    return make_group(FiniteGroup::from_function(std::move(name), std::move(labels), [&](Index a, Index b) {
        Index p = pos[g.mul(elems[a], elems[b])];
        if (p == kNone) raise(ErrorKind::PreconditionNotMet, "subset of " + g.name() + " is not closed");
        return p;
    }));
}

GroupAction conjugation_action(GroupRef g) {
    const std::size_t n = g->order();
    std::vector<Index> t(n * n);
    for (Index a = 0; a < n; ++a)
        for (Index x = 0; x < n; ++x) t[a * n + x] = g->conj(a, x);
    return GroupAction(g, g->labels(), std::move(t));
}

GroupAction trivial_action(GroupRef g, std::vector<std::string> carrier) {
    const std::size_t n = carrier.size();
    std::vector<Index> t(g->order() * n);
    for (Index a = 0; a < g->order(); ++a)
        for (Index x = 0; x < n; ++x) t[a * n + x] = x;
    return GroupAction(std::move(g), std::move(carrier), std::move(t));
}

GroupAction left_translation(GroupRef g) {
    const std::size_t n = g->order();
    std::vector<Index> t(n * n);
    for (Index a = 0; a < n; ++a)
        for (Index x = 0; x < n; ++x) t[a * n + x] = g->mul(a, x);
    return GroupAction(g, g->labels(), std::move(t));
}

void for_each_group_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                const std::function<bool(const std::vector<Index>&)>& visit) {
    if (a.order() != b.order()) return;
    if (a.order() > 128) raise(ErrorKind::SearchExhausted, "group isomorphism search limited to order 128");
    const auto gens = generating_set(a);
    std::vector<std::vector<Index>> cand(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (Index y = 0; y < b.order(); ++y)
            if (b.element_order(y) == a.element_order(gens[i])) cand[i].push_back(y);

    std::vector<Index> img(gens.size());
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (stop) return;
        if (depth == gens.size()) {
            std::vector<Index> f(a.order(), kNone);
            std::vector<Index> queue{a.unit()};
            f[a.unit()] = b.unit();
            for (std::size_t q = 0; q < queue.size(); ++q)
                for (std::size_t s = 0; s < gens.size(); ++s) {
                    Index y = a.mul(queue[q], gens[s]);
                    Index fy = b.mul(f[queue[q]], img[s]);
                    if (f[y] == kNone) {
                        f[y] = fy;
                        queue.push_back(y);
                    } else if (f[y] != fy) {
                        return;
                    }
                }
            std::vector<char> hit(b.order(), 0);
            for (Index v : f) {
                if (hit[v]) return;
                hit[v] = 1;
            }
            for (Index x = 0; x < a.order(); ++x)
                for (Index y = 0; y < a.order(); ++y)
                    if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return;
            if (!visit(f)) stop = true;
            return;
        }
        for (Index c : cand[depth]) {
            img[depth] = c;
            rec(depth + 1);
            if (stop) return;
        }
    };
    rec(0);
}

std::optional<std::vector<Index>> find_group_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
    std::optional<std::vector<Index>> out;
    for_each_group_isomorphism(a, b, [&](const std::vector<Index>& f) {
        out = f;
        return false;
    });
    return out;
}

}  // namespace pbg
