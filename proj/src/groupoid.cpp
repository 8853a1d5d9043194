#include "pbg/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace pbg {

namespace {

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::string name, std::vector<std::string> objects,
                               std::vector<std::string> arrows, std::vector<Index> src,
                               std::vector<Index> tgt, const CompFn& comp,
                               std::optional<std::vector<Index>> inverse)
    : name_(std::move(name)), objects_(std::move(objects)), arrows_(std::move(arrows)),
      src_(std::move(src)), tgt_(std::move(tgt)) {
    index_structure();
    for (Index b = 0; b < num_arrows(); ++b) {
        const auto& ins = in_[src_[b]];
        for (std::size_t i = 0; i < ins.size(); ++i) {
            Index v = comp(b, ins[i]);
            if (v != kNone && v >= num_arrows())
                raise(ErrorKind::TableArity, "groupoid '" + name_ + "': composite out of range");
            comp_[row_[b] + i] = v;
        }
    }

    unit_.assign(num_objects(), kNone);
    for (Index o = 0; o < num_objects(); ++o) {
        for (Index u : out_[o]) {
            if (tgt_[u] != o) continue;
            bool ok = true;
            for (Index a : in_[o]) ok = ok && this->comp(u, a) == a;
            for (Index b : out_[o]) ok = ok && this->comp(b, u) == b;
            if (ok) {
                unit_[o] = u;
                break;
            }
        }
    }

    if (inverse) {
        if (inverse->size() != num_arrows())
            raise(ErrorKind::TableArity, "groupoid '" + name_ + "': inverse table size mismatch");
        for (Index v : *inverse)
            if (v != kNone && v >= num_arrows()) raise(ErrorKind::TableArity, "inverse out of range");
        inv_ = std::move(*inverse);
    } else {
        inv_.assign(num_arrows(), kNone);
        for (Index a = 0; a < num_arrows(); ++a) {
            Index s = src_[a], t = tgt_[a];
            if (unit_[s] == kNone || unit_[t] == kNone) continue;
            for (Index b : out_[t]) {
                if (tgt_[b] != s) continue;
                if (this->comp(b, a) == unit_[s] && this->comp(a, b) == unit_[t]) {
                    inv_[a] = b;
                    break;
                }
            }
        }
    }
}

void FiniteGroupoid::index_structure() {
    const std::size_t no = objects_.size(), na = arrows_.size();
    if (no == 0) raise(ErrorKind::EmptyCarrier, "groupoid '" + name_ + "' has no objects");
    if (src_.size() != na || tgt_.size() != na)
        raise(ErrorKind::TableArity, "groupoid '" + name_ + "': src/tgt tables must cover every arrow");
    for (Index o = 0; o < no; ++o)
        if (!obj_index_.emplace(objects_[o], o).second)
            raise(ErrorKind::TableArity, "groupoid '" + name_ + "': duplicate object " + objects_[o]);
    for (Index a = 0; a < na; ++a)
        if (!arr_index_.emplace(arrows_[a], a).second)
            raise(ErrorKind::TableArity, "groupoid '" + name_ + "': duplicate arrow " + arrows_[a]);
    in_.assign(no, {});
    out_.assign(no, {});
    pos_in_.assign(na, 0);
    for (Index a = 0; a < na; ++a) {
        if (src_[a] >= no || tgt_[a] >= no)
            raise(ErrorKind::TableArity, "groupoid '" + name_ + "': endpoint out of range");
        pos_in_[a] = Index(in_[tgt_[a]].size());
        in_[tgt_[a]].push_back(a);
        out_[src_[a]].push_back(a);
    }
    row_.assign(na, 0);
    std::size_t off = 0;
    for (Index b = 0; b < na; ++b) {
        row_[b] = off;
        off += in_[src_[b]].size();
    }
    comp_.assign(off, kNone);
}

FiniteGroupoid FiniteGroupoid::from_triples(std::string name, std::vector<std::string> objects,
                                            std::vector<std::string> arrows, std::vector<Index> src,
                                            std::vector<Index> tgt,
                                            const std::vector<std::array<Index, 3>>& triples,
                                            std::optional<std::vector<Index>> inverse) {
    const std::size_t na = arrows.size();
    std::unordered_map<std::uint64_t, Index> table;
    for (const auto& [b, a, c] : triples) {
        if (b >= na || a >= na || c >= na) raise(ErrorKind::TableArity, "composition triple out of range");
        if (src[b] != tgt[a])
            raise(ErrorKind::CompositionDomain, "groupoid '" + name + "': composite of " + arrows[b] +
                                                    " after " + arrows[a] + " given but not composable");
        auto [it, fresh] = table.emplace(std::uint64_t(b) * na + a, c);
        if (!fresh && it->second != c)
            raise(ErrorKind::TableArity, "groupoid '" + name + "': conflicting composite for " + arrows[b] +
                                             " o " + arrows[a]);
    }
    return FiniteGroupoid(std::move(name), std::move(objects), std::move(arrows), std::move(src),
                          std::move(tgt),
                          [&](Index b, Index a) {
                              auto it = table.find(std::uint64_t(b) * na + a);
                              return it == table.end() ? kNone : it->second;
                          },
                          std::move(inverse));
}

Index FiniteGroupoid::comp(Index beta, Index alpha) const {
    if (src_[beta] != tgt_[alpha])
        raise(ErrorKind::NotComposable, "groupoid '" + name_ + "': " + arrows_[beta] + " o " + arrows_[alpha]);
    return comp_[row_[beta] + pos_in_[alpha]];
}

std::vector<Index> FiniteGroupoid::hom(Index from, Index to) const {
    std::vector<Index> out;
    for (Index a : out_[from])
        if (tgt_[a] == to) out.push_back(a);
    return out;
}

std::optional<Index> FiniteGroupoid::find_object(const std::string& l) const {
    auto it = obj_index_.find(l);
    if (it == obj_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Index> FiniteGroupoid::find_arrow(const std::string& l) const {
    auto it = arr_index_.find(l);
    if (it == arr_index_.end()) return std::nullopt;
    return it->second;
}

Index FiniteGroupoid::object_index(const std::string& l) const {
    auto i = find_object(l);
    if (!i) raise(ErrorKind::DanglingReference, "no object '" + l + "' in groupoid " + name_);
    return *i;
}

Index FiniteGroupoid::arrow_index(const std::string& l) const {
    auto i = find_arrow(l);
    if (!i) raise(ErrorKind::DanglingReference, "no arrow '" + l + "' in groupoid " + name_);
    return *i;
}

GroupoidFunctor::GroupoidFunctor(GroupoidRef d, GroupoidRef c, std::vector<Index> o, std::vector<Index> a)
    : dom(std::move(d)), cod(std::move(c)), obj_map(std::move(o)), arr_map(std::move(a)) {
    if (obj_map.size() != dom->num_objects() || arr_map.size() != dom->num_arrows())
        raise(ErrorKind::TableArity, "functor " + dom->name() + "->" + cod->name() + ": table size mismatch");
    for (Index v : obj_map)
        if (v >= cod->num_objects()) raise(ErrorKind::TableArity, "functor object image out of range");
    for (Index v : arr_map)
        if (v >= cod->num_arrows()) raise(ErrorKind::TableArity, "functor arrow image out of range");
}

bool GroupoidFunctor::bijective() const {
    if (dom->num_objects() != cod->num_objects() || dom->num_arrows() != cod->num_arrows()) return false;
    std::vector<char> ho(cod->num_objects(), 0), ha(cod->num_arrows(), 0);
    for (Index v : obj_map) {
        if (ho[v]) return false;
        ho[v] = 1;
    }
    for (Index v : arr_map) {
        if (ha[v]) return false;
        ha[v] = 1;
    }
    return true;
}

Surjection::Surjection(std::vector<std::string> d, std::vector<std::string> c, std::vector<Index> m)
    : domain(std::move(d)), codomain(std::move(c)), map(std::move(m)) {
    if (map.size() != domain.size()) raise(ErrorKind::TableArity, "surjection table size mismatch");
    std::vector<char> hit(codomain.size(), 0);
    for (Index v : map) {
        if (v >= codomain.size()) raise(ErrorKind::TableArity, "surjection value out of range");
        hit[v] = 1;
    }
    for (Index m2 = 0; m2 < codomain.size(); ++m2)
        if (!hit[m2]) raise(ErrorKind::NotSurjective, "no point maps to " + codomain[m2]);
}

std::vector<std::vector<Index>> Surjection::fibers() const {
    std::vector<std::vector<Index>> f(codomain.size());
    for (Index y = 0; y < domain.size(); ++y) f[map[y]].push_back(y);
    return f;
}

ValidationReport check_groupoid(const FiniteGroupoid& g) {
    ValidationReport r;
    for (const char* c : {"composition_total", "composite_endpoints", "associativity", "unit", "inverse"})
        r.declare(c);
    const Index na = Index(g.num_arrows());
    auto lbl = [&](Index a) { return g.arrow_label(a); };
    for (Index b = 0; b < na; ++b)
        for (Index a : g.arrows_into(g.src(b))) {
            Index c = g.comp(b, a);
            if (c == kNone) {
                r.fail("composition_total", pair_label(lbl(b), lbl(a)));
                continue;
            }
            if (g.src(c) != g.src(a) || g.tgt(c) != g.tgt(b))
                r.fail("composite_endpoints", pair_label(lbl(b), lbl(a)));
        }
    for (Index c = 0; c < na; ++c)
        for (Index b : g.arrows_into(g.src(c)))
            for (Index a : g.arrows_into(g.src(b))) {
                Index cb = g.comp(c, b), ba = g.comp(b, a);
                if (cb == kNone || ba == kNone) continue;
                if (g.src(cb) != g.tgt(a) || g.tgt(ba) != g.src(c)) continue;
                if (g.comp(cb, a) != g.comp(c, ba))
                    r.fail("associativity", "(" + lbl(c) + "," + lbl(b) + "," + lbl(a) + ")");
            }
    for (Index o = 0; o < g.num_objects(); ++o)
        if (g.unit(o) == kNone) r.fail("unit", g.object_label(o));
    for (Index a = 0; a < na; ++a) {
        Index i = g.inv(a);
        Index us = g.unit(g.src(a)), ut = g.unit(g.tgt(a));
        bool ok = i != kNone && us != kNone && ut != kNone && g.src(i) == g.tgt(a) && g.tgt(i) == g.src(a) &&
                  g.comp(i, a) == us && g.comp(a, i) == ut;
        if (!ok) r.fail("inverse", lbl(a));
    }
    return r;
}

ValidationReport check_functor(const GroupoidFunctor& f) {
    ValidationReport r;
    const auto& A = *f.dom;
    const auto& B = *f.cod;
    for (const char* c : {"source", "target", "unit", "composition"}) r.declare(c);
    for (Index a = 0; a < A.num_arrows(); ++a) {
        if (B.src(f.arr_map[a]) != f.obj_map[A.src(a)]) r.fail("source", A.arrow_label(a));
        if (B.tgt(f.arr_map[a]) != f.obj_map[A.tgt(a)]) r.fail("target", A.arrow_label(a));
    }
    for (Index o = 0; o < A.num_objects(); ++o)
        if (A.unit(o) == kNone || f.arr_map[A.unit(o)] != B.unit(f.obj_map[o])) r.fail("unit", A.object_label(o));
    for (Index b = 0; b < A.num_arrows(); ++b)
        for (Index a : A.arrows_into(A.src(b))) {
            Index fb = f.arr_map[b], fa = f.arr_map[a];
            Index c = A.comp(b, a);
            if (c == kNone || !B.composable(fb, fa) || B.comp(fb, fa) != f.arr_map[c])
                r.fail("composition", pair_label(A.arrow_label(b), A.arrow_label(a)));
        }
    return r;
}

FiniteGroupoid pair_groupoid(const std::vector<std::string>& x, std::string name) {
    const std::size_t n = x.size();
    if (n == 0) raise(ErrorKind::EmptyCarrier, "pair groupoid of the empty set");
    std::vector<std::string> arrows;
    std::vector<Index> src, tgt;
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q) {
            arrows.push_back(pair_label(x[p], x[q]));
            tgt.push_back(p);
            src.push_back(q);
        }
    // (p,q) o (q,r) = (p,r)
    return FiniteGroupoid(std::move(name), x, std::move(arrows), std::move(src), std::move(tgt),
                          [n](Index b, Index a) { return Index((b / n) * n + a % n); });
}

FiniteGroupoid identity_groupoid(const std::vector<std::string>& x, std::string name) {
    if (x.empty()) raise(ErrorKind::EmptyCarrier, "identity groupoid of the empty set");
    std::vector<Index> ids(x.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<std::string> arrows;
    for (const auto& l : x) arrows.push_back("1_" + l);
    return FiniteGroupoid(std::move(name), x, std::move(arrows), ids, ids, [](Index b, Index) { return b; });
}

FiniteGroupoid fiber_product_groupoid(const Surjection& pi, std::string name) {
    const std::size_t ny = pi.domain.size();
    if (ny == 0) raise(ErrorKind::EmptyCarrier, "fiber product over an empty set");
    std::vector<std::string> arrows;
    std::vector<Index> src, tgt;
    std::vector<Index> idx(ny * ny, kNone);
    for (Index y2 = 0; y2 < ny; ++y2)
        for (Index y1 = 0; y1 < ny; ++y1)
            if (pi.map[y2] == pi.map[y1]) {
                idx[y2 * ny + y1] = Index(arrows.size());
                arrows.push_back(pair_label(pi.domain[y2], pi.domain[y1]));
                tgt.push_back(y2);
                src.push_back(y1);
            }
    // (y3,y2) o (y2,y1) = (y3,y1)
    return FiniteGroupoid(std::move(name), pi.domain, std::move(arrows), src, tgt,
                          [&](Index b, Index a) { return idx[tgt[b] * ny + src[a]]; });
}

PullbackIndex pullback_index(const Surjection& pi, const FiniteGroupoid& m) {
    if (pi.codomain.size() != m.num_objects())
        raise(ErrorKind::NotSurjective, "pullback: surjection codomain is not the object set of " + m.name());
    PullbackIndex out{pi.domain.size(), m.num_arrows(), {}};
    out.idx.assign(out.ny * out.na * out.ny, kNone);
    Index next = 0;
    const auto fib = pi.fibers();
    for (Index y2 = 0; y2 < out.ny; ++y2)
        for (Index g : m.arrows_into(pi.map[y2]))
            for (Index y1 : fib[m.src(g)]) out.idx[(std::size_t(y2) * out.na + g) * out.ny + y1] = next++;
    return out;
}

FiniteGroupoid pullback_groupoid(const Surjection& pi, const FiniteGroupoid& m, std::string name) {
    const auto pix = pullback_index(pi, m);
    const auto fib = pi.fibers();
    std::vector<std::string> arrows;
    std::vector<Index> src, tgt, mid;
    for (Index y2 = 0; y2 < pix.ny; ++y2)
        for (Index g : m.arrows_into(pi.map[y2]))
            for (Index y1 : fib[m.src(g)]) {
                arrows.push_back("(" + pi.domain[y2] + "," + m.arrow_label(g) + "," + pi.domain[y1] + ")");
                tgt.push_back(y2);
                src.push_back(y1);
                mid.push_back(g);
            }
    return FiniteGroupoid(std::move(name), pi.domain, std::move(arrows), src, tgt, [&](Index b, Index a) {
        Index c = m.comp(mid[b], mid[a]);
        return c == kNone ? kNone : pix(tgt[b], c, src[a]);
    });
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b, std::string name) {
    const std::size_t bo = b.num_objects(), ba = b.num_arrows();
    std::vector<std::string> objects, arrows;
    std::vector<Index> src, tgt;
    for (Index x = 0; x < a.num_objects(); ++x)
        for (Index y = 0; y < bo; ++y) objects.push_back(pair_label(a.object_label(x), b.object_label(y)));
    for (Index x = 0; x < a.num_arrows(); ++x)
        for (Index y = 0; y < ba; ++y) {
            arrows.push_back(pair_label(a.arrow_label(x), b.arrow_label(y)));
            src.push_back(Index(a.src(x) * bo + b.src(y)));
            tgt.push_back(Index(a.tgt(x) * bo + b.tgt(y)));
        }
    return FiniteGroupoid(std::move(name), std::move(objects), std::move(arrows), std::move(src), std::move(tgt),
                          [&](Index u, Index v) {
                              Index p = a.comp(u / ba, v / ba), q = b.comp(u % ba, v % ba);
                              return (p == kNone || q == kNone) ? kNone : Index(p * ba + q);
                          });
}

FiniteGroupoid group_as_groupoid(const FiniteGroup& g) {
    std::vector<Index> zeros(g.order(), 0);
    return FiniteGroupoid(g.name(), {"*"}, g.labels(), zeros, zeros,
                          [&](Index b, Index a) { return g.mul(b, a); });
}

GroupoidFunctor identity_functor(GroupoidRef g) {
    std::vector<Index> o(g->num_objects()), a(g->num_arrows());
    std::iota(o.begin(), o.end(), 0);
    std::iota(a.begin(), a.end(), 0);
    return GroupoidFunctor(g, g, std::move(o), std::move(a));
}

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
    if (f.cod->num_objects() != g.dom->num_objects() || f.cod->num_arrows() != g.dom->num_arrows())
        raise(ErrorKind::PreconditionNotMet, "functors are not composable");
    std::vector<Index> o(f.obj_map.size()), a(f.arr_map.size());
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = g.obj_map[f.obj_map[i]];
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = g.arr_map[f.arr_map[i]];
    return GroupoidFunctor(f.dom, g.cod, std::move(o), std::move(a));
}

std::vector<Index> connected_components(const FiniteGroupoid& g) {
    std::vector<Index> parent(g.num_objects());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<Index(Index)> root = [&](Index x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (Index a = 0; a < g.num_arrows(); ++a) {
        Index x = root(g.src(a)), y = root(g.tgt(a));
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
    std::vector<Index> comp(g.num_objects());
    std::vector<Index> id(g.num_objects(), kNone);
    Index next = 0;
    for (Index o = 0; o < g.num_objects(); ++o) {
        Index r = root(o);
        if (id[r] == kNone) id[r] = next++;
        comp[o] = id[r];
    }
    return comp;
}

GroupRef isotropy_group(const FiniteGroupoid& g, Index o) {
    const auto loops = g.hom(o, o);
    std::vector<Index> pos(g.num_arrows(), kNone);
    std::vector<std::string> labels;
    for (Index i = 0; i < loops.size(); ++i) {
        pos[loops[i]] = i;
        labels.push_back(g.arrow_label(loops[i]));
    }
    return make_group(FiniteGroup::from_function(g.name() + "@" + g.object_label(o), std::move(labels),
                                                 [&](Index x, Index y) { return pos[g.comp(loops[x], loops[y])]; }));
}

namespace {

struct ComponentData {
    Index base;
    std::vector<Index> objects;
    std::vector<Index> tau;  // tau[o]: base -> o, indexed by object
    GroupRef isotropy;
    std::vector<Index> loops;
};

std::vector<ComponentData> component_data(const FiniteGroupoid& g) {
    const auto comp = connected_components(g);
    Index nc = 0;
    for (Index c : comp) nc = std::max(nc, c + 1);
    std::vector<ComponentData> out(nc);
    for (Index o = 0; o < g.num_objects(); ++o) {
        auto& cd = out[comp[o]];
        if (cd.objects.empty()) cd.base = o;
        cd.objects.push_back(o);
    }
    for (auto& cd : out) {
        cd.tau.assign(g.num_objects(), kNone);
        for (Index a : g.arrows_from(cd.base))
            if (cd.tau[g.tgt(a)] == kNone) cd.tau[g.tgt(a)] = a;
        cd.loops = g.hom(cd.base, cd.base);
        cd.isotropy = isotropy_group(g, cd.base);
    }
    return out;
}

}  // namespace

std::optional<GroupoidFunctor> find_groupoid_isomorphism(GroupoidRef a, GroupoidRef b,
                                                         const std::optional<std::vector<Index>>& fixed_objects) {
    if (a->num_objects() != b->num_objects() || a->num_arrows() != b->num_arrows()) return std::nullopt;
    if (!check_groupoid(*a).ok() || !check_groupoid(*b).ok()) return std::nullopt;
    const auto ca = component_data(*a);
    const auto cb = component_data(*b);
    if (ca.size() != cb.size()) return std::nullopt;
    const auto compb = connected_components(*b);

    std::vector<Index> obj(a->num_objects(), kNone), arr(a->num_arrows(), kNone);
    std::vector<char> used(cb.size(), 0);
    for (const auto& A : ca) {
        Index match = kNone;
        std::vector<Index> iso;
        Index bbase = kNone;
        if (fixed_objects) {
            match = compb[(*fixed_objects)[A.base]];
            if (used[match] || cb[match].objects.size() != A.objects.size()) return std::nullopt;
            for (Index o : A.objects)
                if (compb[(*fixed_objects)[o]] != match) return std::nullopt;
            bbase = (*fixed_objects)[A.base];
            auto loops_b = b->hom(bbase, bbase);
            if (loops_b.size() != A.loops.size()) return std::nullopt;
            auto iso_b = isotropy_group(*b, bbase);
            auto f = find_group_isomorphism(*A.isotropy, *iso_b);
            if (!f) return std::nullopt;
            for (Index& v : *f) v = loops_b[v];
            iso = *f;
            for (Index o : A.objects) obj[o] = (*fixed_objects)[o];
        } else {
            for (Index j = 0; j < cb.size() && match == kNone; ++j) {
                if (used[j] || cb[j].objects.size() != A.objects.size()) continue;
                auto f = find_group_isomorphism(*A.isotropy, *cb[j].isotropy);
                if (!f) continue;
                match = j;
                for (Index& v : *f) v = cb[j].loops[v];
                iso = *f;
            }
            if (match == kNone) return std::nullopt;
            bbase = cb[match].base;
            for (std::size_t i = 0; i < A.objects.size(); ++i) obj[A.objects[i]] = cb[match].objects[i];
        }
        used[match] = 1;
        std::vector<Index> taub(b->num_objects(), kNone);
        for (Index x : b->arrows_from(bbase))
            if (taub[b->tgt(x)] == kNone) taub[b->tgt(x)] = x;
        std::vector<Index> loop_pos(a->num_arrows(), kNone);
        for (Index i = 0; i < A.loops.size(); ++i) loop_pos[A.loops[i]] = i;
        for (Index o1 : A.objects)
            for (Index x : a->arrows_from(o1)) {
                Index o2 = a->tgt(x);
                // loop = tau_{o2}^{-1} x tau_{o1}
                Index loop = a->comp(a->inv(A.tau[o2]), a->comp(x, A.tau[o1]));
                Index img = iso[loop_pos[loop]];
                Index t2 = taub[obj[o2]], t1 = taub[obj[o1]];
                arr[x] = b->comp(t2, b->comp(img, b->inv(t1)));
            }
    }
    GroupoidFunctor f(a, b, obj, arr);
    if (!f.bijective() || !check_functor(f).ok()) return std::nullopt;
    return f;
}

}  // namespace pbg
