#include "opforge/operad.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace opforge {

// --- keys and permutations -----------------------------------------------------

std::string key_to_string(const CompKey& k) {
    std::ostringstream os;
    os << "(";
    for (std::size_t t = 0; t < k.in.size(); ++t)
        os << (t ? "," : "") << k.in[t];
    os << "|" << k.out << ")";
    return os.str();
}

CompKey composed_key(const CompKey& outer, int i, const CompKey& inner) {
    if (i < 0 || i >= outer.arity())
        throw std::invalid_argument("composition slot out of range");
    if (outer.in[i] != inner.out)
        throw std::invalid_argument("composition color mismatch");
    CompKey res;
    res.out = outer.out;
    res.in.insert(res.in.end(), outer.in.begin(), outer.in.begin() + i);
    res.in.insert(res.in.end(), inner.in.begin(), inner.in.end());
    res.in.insert(res.in.end(), outer.in.begin() + i + 1, outer.in.end());
    return res;
}

std::vector<int> apply_perm(const std::vector<int>& sigma, const std::vector<int>& c) {
    std::vector<int> out(c.size());
    for (std::size_t t = 0; t < c.size(); ++t) out[sigma[t]] = c[t];
    return out;
}

std::vector<std::vector<int>> permutations_lex(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<int> blow_up(const std::vector<int>& sigma, int i, int m) {
    int n = static_cast<int>(sigma.size());
    std::vector<int> width(n, 1), tstart(n, 0);
    width[sigma[i]] = m;
    for (int p = 1; p < n; ++p) tstart[p] = tstart[p - 1] + width[p - 1];
    std::vector<int> out(n + m - 1);
    for (int e = 0; e < n + m - 1; ++e) {
        int j, inner = 0;
        if (e < i)
            j = e;
        else if (e < i + m) {
            j = i;
            inner = e - i;
        } else
            j = e - m + 1;
        out[e] = tstart[sigma[j]] + inner;
    }
    return out;
}

// --- accessors -------------------------------------------------------------------

DgComplex ColoredDgOperad::component(const CompKey& key) const {
    auto it = components.find(key);
    DgComplex zero;
    zero.ring = ring;
    return it == components.end() ? zero : it->second;
}

ChainMap ColoredDgOperad::act_gen(const CompKey& key, int i) const {
    if (i < 0 || i + 1 >= key.arity())
        throw std::invalid_argument("transposition index out of range");
    CompKey tgt = key;
    std::swap(tgt.in[i], tgt.in[i + 1]);
    auto it = sym.find({key, i});
    return it == sym.end() ? ChainMap::zero(component(key), component(tgt))
                           : it->second;
}

ChainMap ColoredDgOperad::act(const CompKey& key, const std::vector<int>& sigma) const {
    int n = key.arity();
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("permutation size mismatch");
    std::vector<int> pos(n);
    std::iota(pos.begin(), pos.end(), 0);
    ChainMap m = ChainMap::identity(component(key));
    CompKey k = key;
    for (int j = n - 1; j >= 0; --j) {
        int s = -1;
        for (int t = 0; t < n; ++t)
            if (sigma[t] == j) s = t;
        for (int t = pos[s]; t < j; ++t) {
            m = act_gen(k, t).compose(m);
            std::swap(k.in[t], k.in[t + 1]);
            for (int u = 0; u < n; ++u) {
                if (pos[u] == t)
                    pos[u] = t + 1;
                else if (pos[u] == t + 1)
                    pos[u] = t;
            }
        }
    }
    return m;
}

ChainMap ColoredDgOperad::comp(const CompKey& outer, int i, const CompKey& inner) const {
    CompKey res = composed_key(outer, i, inner);
    auto it = comps.find(std::make_tuple(outer, i, inner));
    if (it != comps.end()) return it->second;
    return ChainMap::zero(tensor(component(outer), component(inner)), component(res));
}

ChainMap ColoredDgOperad::unit_map(int color) const {
    CompKey k{{color}, color};
    ChainMap u = ChainMap::zero(DgComplex::point(ring, 0), component(k));
    auto it = units.find(color);
    if (it != units.end() && !it->second.is_zero()) u.blocks[0] = it->second;
    return u;
}

void ColoredDgOperad::set_component(const CompKey& key, const DgComplex& c) {
    if (c.ring != ring) throw RingMismatch("component ring mismatch");
    c.validate();
    if (key.arity() > arity_bound)
        throw ArityOverflow("component arity exceeds bound: " + key_to_string(key));
    if (c.is_zero()) {
        components.erase(key);
        return;
    }
    DgComplex cc = c;
    for (auto it = cc.diffs.begin(); it != cc.diffs.end();)
        it = it->second.is_zero() ? cc.diffs.erase(it) : std::next(it);
    components[key] = cc;
}

void ColoredDgOperad::set_sym(const CompKey& key, int i, const ChainMap& f) {
    CompKey tgt = key;
    std::swap(tgt.in[i], tgt.in[i + 1]);
    if (f.degree != 0 || f.source != component(key) || f.target != component(tgt))
        throw std::invalid_argument("sym generator shape mismatch at " +
                                    key_to_string(key));
    sym[{key, i}] = f;
}

void ColoredDgOperad::set_comp(const CompKey& outer, int i, const CompKey& inner,
                               const ChainMap& f) {
    CompKey res = composed_key(outer, i, inner);
    if (res.arity() > arity_bound)
        throw ArityOverflow("composition overflows arity bound at " +
                            key_to_string(res));
    if (f.degree != 0 || f.source != tensor(component(outer), component(inner)) ||
        f.target != component(res))
        throw std::invalid_argument("partial composition shape mismatch at " +
                                    key_to_string(outer));
    comps[std::make_tuple(outer, i, inner)] = f;
}

DgComplex PlanarColoredOperad::component(const CompKey& key) const {
    auto it = components.find(key);
    DgComplex zero;
    zero.ring = ring;
    return it == components.end() ? zero : it->second;
}

ChainMap PlanarColoredOperad::comp(const CompKey& outer, int i,
                                   const CompKey& inner) const {
    CompKey res = composed_key(outer, i, inner);
    auto it = comps.find(std::make_tuple(outer, i, inner));
    if (it != comps.end()) return it->second;
    return ChainMap::zero(tensor(component(outer), component(inner)), component(res));
}

ChainMap PlanarColoredOperad::unit_map(int color) const {
    CompKey k{{color}, color};
    ChainMap u = ChainMap::zero(DgComplex::point(ring, 0), component(k));
    auto it = units.find(color);
    if (it != units.end() && !it->second.is_zero()) u.blocks[0] = it->second;
    return u;
}

// --- axiom checking ----------------------------------------------------------------

namespace {

struct OperadView {
    CoeffRing ring;
    int n_colors = 0;
    int arity_bound = 0;
    const std::map<CompKey, DgComplex>* components = nullptr;
    std::function<DgComplex(const CompKey&)> component;
    std::function<ChainMap(const CompKey&, int, const CompKey&)> comp;
    std::function<ChainMap(int)> unit_map;
};

// shared associativity / unit checks; sym handled by the caller
AxiomReport check_common(const OperadView& v) {
    for (const auto& [key, c] : *v.components) {
        if (c.ring != v.ring)
            return {false, "component ring mismatch at " + key_to_string(key)};
        try {
            c.validate();
        } catch (const std::exception& e) {
            return {false, "invalid component " + key_to_string(key) + ": " + e.what()};
        }
        if (key.arity() > v.arity_bound)
            return {false, "component beyond arity bound: " + key_to_string(key)};
        for (int col : key.in)
            if (col < 0 || col >= v.n_colors)
                return {false, "unknown color in " + key_to_string(key)};
        if (key.out < 0 || key.out >= v.n_colors)
            return {false, "unknown color in " + key_to_string(key)};
    }
    // units: degree-0 cycles, left/right unit laws
    for (int c = 0; c < v.n_colors; ++c) {
        ChainMap u = v.unit_map(c);
        if (u.is_zero()) return {false, "missing unit for color " + std::to_string(c)};
        if (!u.is_chain_map())
            return {false, "unit not a cycle for color " + std::to_string(c)};
    }
    for (const auto& [key, c] : *v.components) {
        ChainMap id = ChainMap::identity(c);
        // right: x o_i 1 = x
        for (int i = 0; i < key.arity(); ++i) {
            CompKey ukey{{key.in[i]}, key.in[i]};
            ChainMap rhs = v.comp(key, i, ukey).compose(
                tensor_map(id, v.unit_map(key.in[i])));
            if (rhs != id)
                return {false, "right unit law fails at " + key_to_string(key) +
                                   " slot " + std::to_string(i)};
        }
        // left: 1 o_0 x = x
        CompKey ukey{{key.out}, key.out};
        ChainMap lhs = v.comp(ukey, 0, key).compose(tensor_map(v.unit_map(key.out), id));
        if (lhs != id) return {false, "left unit law fails at " + key_to_string(key)};
    }
    // stored comps: chain maps (unreachable-shape entries would already have thrown)
    for (const auto& [X, cx] : *v.components) {
        int n = X.arity();
        for (const auto& [Y, cy] : *v.components) {
            int m = Y.arity();
            for (int i = 0; i < n; ++i) {
                if (X.in[i] != Y.out || n + m - 1 > v.arity_bound) continue;
                if (!v.comp(X, i, Y).is_chain_map())
                    return {false, "composition not a chain map at " +
                                       key_to_string(X) + " o_" + std::to_string(i) +
                                       " " + key_to_string(Y)};
            }
        }
    }
    // sequential and parallel associativity
    for (const auto& [X, cx] : *v.components) {
        int n = X.arity();
        for (const auto& [Y, cy] : *v.components) {
            int m = Y.arity();
            for (const auto& [Z, cz] : *v.components) {
                int l = Z.arity();
                if (n + m + l - 2 > v.arity_bound) continue;
                std::vector<DgComplex> flat{cx, cy, cz};
                for (int i = 0; i < n; ++i) {
                    if (X.in[i] != Y.out) continue;
                    CompKey XY = composed_key(X, i, Y);
                    // sequential: plug Z into a slot of Y
                    if (n + m - 1 <= v.arity_bound && m + l - 1 <= v.arity_bound) {
                        for (int j = 0; j < m; ++j) {
                            if (Y.in[j] != Z.out) continue;
                            CompKey YZ = composed_key(Y, j, Z);
                            ChainMap left =
                                v.comp(XY, i + j, Z)
                                    .compose(tensor_map(v.comp(X, i, Y),
                                                        ChainMap::identity(cz)))
                                    .compose(group_factors(flat, {2, 1}));
                            ChainMap right =
                                v.comp(X, i, YZ)
                                    .compose(tensor_map(ChainMap::identity(cx),
                                                        v.comp(Y, j, Z)))
                                    .compose(group_factors(flat, {1, 2}));
                            if (left != right)
                                return {false,
                                        "sequential associativity fails: " +
                                            key_to_string(X) + " o_" +
                                            std::to_string(i) + " " + key_to_string(Y) +
                                            " o_" + std::to_string(j) + " " +
                                            key_to_string(Z)};
                        }
                    }
                    // parallel: plug Z into a later slot of X
                    if (n + m - 1 <= v.arity_bound && n + l - 1 <= v.arity_bound) {
                        for (int k = i + 1; k < n; ++k) {
                            if (X.in[k] != Z.out) continue;
                            CompKey XZ = composed_key(X, k, Z);
                            ChainMap left =
                                v.comp(XY, k + m - 1, Z)
                                    .compose(tensor_map(v.comp(X, i, Y),
                                                        ChainMap::identity(cz)))
                                    .compose(group_factors(flat, {2, 1}));
                            ChainMap right =
                                v.comp(XZ, i, Y)
                                    .compose(tensor_map(v.comp(X, k, Z),
                                                        ChainMap::identity(cy)))
                                    .compose(group_factors({cx, cz, cy}, {2, 1}))
                                    .compose(permute_factors(flat, {0, 2, 1}));
                            if (left != right)
                                return {false,
                                        "parallel associativity fails: " +
                                            key_to_string(X) + " slots " +
                                            std::to_string(i) + "," +
                                            std::to_string(k) + " with " +
                                            key_to_string(Y) + ", " +
                                            key_to_string(Z)};
                        }
                    }
                }
            }
        }
    }
    return {true, ""};
}

}  // namespace

AxiomReport check_operad_axioms(const ColoredDgOperad& o) {
    OperadView v{o.ring,
                 static_cast<int>(o.colors.size()),
                 o.arity_bound,
                 &o.components,
                 [&](const CompKey& k) { return o.component(k); },
                 [&](const CompKey& a, int i, const CompKey& b) { return o.comp(a, i, b); },
                 [&](int c) { return o.unit_map(c); }};
    // symmetric group relations on generators
    for (const auto& [key, c] : o.components) {
        int n = key.arity();
        ChainMap id = ChainMap::identity(c);
        for (int i = 0; i + 1 < n; ++i) {
            ChainMap g = o.act_gen(key, i);
            if (!g.is_chain_map())
                return {false, "action generator not a chain map at " +
                                   key_to_string(key) + " s_" + std::to_string(i)};
            CompKey sw = key;
            std::swap(sw.in[i], sw.in[i + 1]);
            if (o.act_gen(sw, i).compose(g) != id)
                return {false, "involution fails at " + key_to_string(key) + " s_" +
                                   std::to_string(i)};
            if (i + 2 < n) {
                // braid: s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}
                std::vector<int> w1{i, i + 1, i}, w2{i + 1, i, i + 1};
                auto word = [&](const std::vector<int>& w) {
                    CompKey k = key;
                    ChainMap f = id;
                    for (int t : w) {
                        f = o.act_gen(k, t).compose(f);
                        std::swap(k.in[t], k.in[t + 1]);
                    }
                    return f;
                };
                if (word(w1) != word(w2))
                    return {false, "braid relation fails at " + key_to_string(key) +
                                       " s_" + std::to_string(i)};
            }
            for (int j = i + 2; j + 1 < n; ++j) {
                CompKey kj = key;
                std::swap(kj.in[j], kj.in[j + 1]);
                CompKey ki = key;
                std::swap(ki.in[i], ki.in[i + 1]);
                if (o.act_gen(kj, i).compose(o.act_gen(key, j)) !=
                    o.act_gen(ki, j).compose(o.act_gen(key, i)))
                    return {false, "distant commutation fails at " + key_to_string(key)};
            }
        }
    }
    AxiomReport common = check_common(v);
    if (!common.ok) return common;
    // equivariance on generators
    for (const auto& [X, cx] : o.components) {
        int n = X.arity();
        for (const auto& [Y, cy] : o.components) {
            int m = Y.arity();
            if (n + m - 1 > o.arity_bound) continue;
            for (int i = 0; i < n; ++i) {
                if (X.in[i] != Y.out) continue;
                CompKey XY = composed_key(X, i, Y);
                ChainMap base = o.comp(X, i, Y);
                // outer action
                for (int t = 0; t + 1 < n; ++t) {
                    std::vector<int> sig(n);
                    std::iota(sig.begin(), sig.end(), 0);
                    std::swap(sig[t], sig[t + 1]);
                    CompKey sX{apply_perm(sig, X.in), X.out};
                    ChainMap lhs = o.comp(sX, sig[i], Y).compose(
                        tensor_map(o.act_gen(X, t), ChainMap::identity(cy)));
                    ChainMap rhs = o.act(XY, blow_up(sig, i, m)).compose(base);
                    if (lhs != rhs)
                        return {false, "outer equivariance fails at " +
                                           key_to_string(X) + " s_" + std::to_string(t) +
                                           " slot " + std::to_string(i) + " with " +
                                           key_to_string(Y)};
                }
                // inner action
                for (int u = 0; u + 1 < m; ++u) {
                    CompKey sY = Y;
                    std::swap(sY.in[u], sY.in[u + 1]);
                    ChainMap lhs = o.comp(X, i, sY).compose(
                        tensor_map(ChainMap::identity(cx), o.act_gen(Y, u)));
                    ChainMap rhs = o.act_gen(XY, i + u).compose(base);
                    if (lhs != rhs)
                        return {false, "inner equivariance fails at " +
                                           key_to_string(X) + " slot " +
                                           std::to_string(i) + " with " +
                                           key_to_string(Y) + " s_" +
                                           std::to_string(u)};
                }
            }
        }
    }
    return {true, ""};
}

AxiomReport check_planar_axioms(const PlanarColoredOperad& p) {
    OperadView v{p.ring,
                 static_cast<int>(p.colors.size()),
                 p.arity_bound,
                 &p.components,
                 [&](const CompKey& k) { return p.component(k); },
                 [&](const CompKey& a, int i, const CompKey& b) { return p.comp(a, i, b); },
                 [&](int c) { return p.unit_map(c); }};
    return check_common(v);
}

// --- full composition ----------------------------------------------------------------

ChainMap full_composition(const ColoredDgOperad& o, const std::vector<int>& f,
                          const std::vector<int>& c, const std::vector<int>& d, int e) {
    int nI = static_cast<int>(c.size());
    int nJ = static_cast<int>(d.size());
    if (static_cast<int>(f.size()) != nI)
        throw std::invalid_argument("full_composition: |f| != |c|");
    for (int x : f)
        if (x < 0 || x >= nJ)
            throw std::invalid_argument("full_composition: f out of range");
    if (nI > o.arity_bound || nJ > o.arity_bound)
        throw ArityOverflow("full_composition: arity beyond bound");
    std::vector<std::vector<int>> fiber(nJ);
    for (int i = 0; i < nI; ++i) fiber[f[i]].push_back(i);
    CompKey outer{d, e};
    std::vector<CompKey> inner(nJ);
    for (int j = 0; j < nJ; ++j) {
        for (int i : fiber[j]) inner[j].in.push_back(c[i]);
        inner[j].out = d[j];
        if (fiber[j].empty() && !o.components.count(inner[j]))
            throw MissingNullary("full_composition: missing nullary component " +
                                 key_to_string(inner[j]));
    }
    // plug nullaries first so intermediate arities never exceed max(|c|, |d|)
    std::vector<int> order;
    for (int j = 0; j < nJ; ++j)
        if (fiber[j].empty()) order.push_back(j);
    for (int j = 0; j < nJ; ++j)
        if (!fiber[j].empty()) order.push_back(j);

    std::vector<DgComplex> flat{o.component(outer)};
    for (int j = 0; j < nJ; ++j) flat.push_back(o.component(inner[j]));
    // reorder the inner factors to plugging order
    std::vector<int> sigma(nJ + 1);
    sigma[0] = 0;
    for (int p = 0; p < nJ; ++p) sigma[1 + order[p]] = 1 + p;
    ChainMap cur = ChainMap::identity(o.component(outer));
    std::vector<DgComplex> used{o.component(outer)};
    // tokens: -1 = already-expanded color position, j >= 0 = pending slot of d
    std::vector<int> tokens(nJ);
    std::iota(tokens.begin(), tokens.end(), 0);
    CompKey key = outer;
    for (int j : order) {
        int slot = -1;
        for (std::size_t t = 0; t < tokens.size(); ++t)
            if (tokens[t] == j) slot = static_cast<int>(t);
        std::vector<DgComplex> newf = used;
        newf.push_back(o.component(inner[j]));
        ChainMap regroup =
            group_factors(newf, {static_cast<int>(used.size()), 1});
        cur = o.comp(key, slot, inner[j])
                  .compose(tensor_map(cur, ChainMap::identity(o.component(inner[j]))))
                  .compose(regroup);
        key = composed_key(key, slot, inner[j]);
        if (key.arity() > o.arity_bound)
            throw ArityOverflow("full_composition: intermediate arity beyond bound");
        // token at `slot` expands into the fiber
        std::vector<int> nt(tokens.begin(), tokens.begin() + slot);
        nt.insert(nt.end(), fiber[j].size(), -1);
        nt.insert(nt.end(), tokens.begin() + slot + 1, tokens.end());
        tokens = nt;
        used = newf;
    }
    cur = cur.compose(permute_factors(flat, sigma));
    // key.in now lists c grouped by fiber; sort back to the original order of I
    std::vector<int> ord;
    for (int j = 0; j < nJ; ++j)
        for (int i : fiber[j]) ord.push_back(i);
    std::vector<int> tau(nI);
    for (int p = 0; p < nI; ++p) tau[p] = ord[p];
    return o.act(key, tau).compose(cur);
}

// --- operad maps -----------------------------------------------------------------------

CompKey OperadMap::mapped(const CompKey& key) const {
    CompKey out;
    out.out = color_map.at(key.out);
    for (int c : key.in) out.in.push_back(color_map.at(c));
    return out;
}

ChainMap OperadMap::block(const CompKey& key) const {
    auto it = blocks.find(key);
    return it == blocks.end()
               ? ChainMap::zero(source.component(key), target.component(mapped(key)))
               : it->second;
}

AxiomReport check_operad_map(const OperadMap& f) {
    if (f.color_map.size() != f.source.colors.size())
        return {false, "color map size mismatch"};
    for (int c : f.color_map)
        if (c < 0 || c >= static_cast<int>(f.target.colors.size()))
            return {false, "color map out of range"};
    for (const auto& [key, b] : f.blocks) {
        if (b.degree != 0 || b.source != f.source.component(key) ||
            b.target != f.target.component(f.mapped(key)))
            return {false, "component map shape mismatch at " + key_to_string(key)};
        if (!b.is_chain_map())
            return {false, "component map not a chain map at " + key_to_string(key)};
    }
    for (std::size_t c = 0; c < f.source.colors.size(); ++c) {
        CompKey uk{{static_cast<int>(c)}, static_cast<int>(c)};
        if (f.block(uk).compose(f.source.unit_map(static_cast<int>(c))) !=
            f.target.unit_map(f.color_map[c]))
            return {false, "unit not preserved for color " + std::to_string(c)};
    }
    for (const auto& [key, cx] : f.source.components) {
        for (int i = 0; i + 1 < key.arity(); ++i) {
            CompKey sw = key;
            std::swap(sw.in[i], sw.in[i + 1]);
            if (f.target.act_gen(f.mapped(key), i).compose(f.block(key)) !=
                f.block(sw).compose(f.source.act_gen(key, i)))
                return {false, "action not preserved at " + key_to_string(key) + " s_" +
                                   std::to_string(i)};
        }
    }
    for (const auto& [X, cx] : f.source.components) {
        for (const auto& [Y, cy] : f.source.components) {
            if (X.arity() + Y.arity() - 1 > f.source.arity_bound) continue;
            for (int i = 0; i < X.arity(); ++i) {
                if (X.in[i] != Y.out) continue;
                CompKey XY = composed_key(X, i, Y);
                if (f.block(XY).compose(f.source.comp(X, i, Y)) !=
                    f.target.comp(f.mapped(X), i, f.mapped(Y))
                        .compose(tensor_map(f.block(X), f.block(Y))))
                    return {false, "composition not preserved at " + key_to_string(X) +
                                       " o_" + std::to_string(i) + " " +
                                       key_to_string(Y)};
            }
        }
    }
    return {true, ""};
}

}  // namespace opforge
