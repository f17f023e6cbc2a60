#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "opforge/operad.hpp"

namespace opforge {

// --- planar <-> symmetric ------------------------------------------------------

PlanarColoredOperad forget_symmetry(const ColoredDgOperad& o) {
    PlanarColoredOperad p;
    p.ring = o.ring;
    p.colors = o.colors;
    p.arity_bound = o.arity_bound;
    p.components = o.components;
    p.comps = o.comps;
    p.units = o.units;
    return p;
}

namespace {

// the planar component sitting in ordering summand theta over key (c, d)
CompKey theta_key(const CompKey& key, const std::vector<int>& theta) {
    CompKey out;
    out.out = key.out;
    for (int t : theta) out.in.push_back(key.in[t]);
    return out;
}

}  // namespace

MultiSum sigma_summand_layout(const PlanarColoredOperad& p, const CompKey& key) {
    std::vector<DgComplex> parts;
    for (const auto& theta : permutations_lex(key.arity()))
        parts.push_back(p.component(theta_key(key, theta)));
    return direct_sum_many(parts);
}

ColoredDgOperad planar_to_symmetric(const PlanarColoredOperad& p) {
    ColoredDgOperad o;
    o.ring = p.ring;
    o.colors = p.colors;
    o.arity_bound = p.arity_bound;
    // candidate keys: every reordering of a planar key
    std::set<CompKey> keys;
    for (const auto& [key, c] : p.components) {
        std::vector<int> in = key.in;
        std::sort(in.begin(), in.end());
        do keys.insert(CompKey{in, key.out});
        while (std::next_permutation(in.begin(), in.end()));
    }
    std::map<CompKey, MultiSum> layout;
    for (const auto& key : keys) {
        layout[key] = sigma_summand_layout(p, key);
        o.set_component(key, layout[key].sum);
    }
    auto perm_index = [](const std::vector<std::vector<int>>& perms,
                         const std::vector<int>& q) {
        return static_cast<int>(
            std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    // symmetric action permutes the ordering summands
    for (const auto& key : keys) {
        int n = key.arity();
        auto perms = permutations_lex(n);
        for (int i = 0; i + 1 < n; ++i) {
            CompKey tgt = key;
            std::swap(tgt.in[i], tgt.in[i + 1]);
            ChainMap f = ChainMap::zero(layout[key].sum, layout[tgt].sum);
            for (std::size_t t = 0; t < perms.size(); ++t) {
                std::vector<int> tp = perms[t];
                for (int& v : tp) {
                    if (v == i)
                        v = i + 1;
                    else if (v == i + 1)
                        v = i;
                }
                f = f + layout[tgt].incl[perm_index(perms, tp)].compose(
                            layout[key].proj[t]);
            }
            o.set_sym(key, i, f);
        }
    }
    // compositions via the lexicographic-ordering rule
    for (const auto& X : keys) {
        int n = X.arity();
        auto pn = permutations_lex(n);
        for (const auto& Y : keys) {
            int m = Y.arity();
            if (n + m - 1 > p.arity_bound) continue;
            auto pm = permutations_lex(m);
            auto pr = permutations_lex(n + m - 1);
            for (int i = 0; i < n; ++i) {
                if (X.in[i] != Y.out) continue;
                CompKey R = composed_key(X, i, Y);
                ChainMap f = ChainMap::zero(tensor(layout[X].sum, layout[Y].sum),
                                            layout[R].sum);
                for (std::size_t a = 0; a < pn.size(); ++a) {
                    const auto& theta = pn[a];
                    int pos = 0;
                    while (theta[pos] != i) ++pos;
                    for (std::size_t b = 0; b < pm.size(); ++b) {
                        const auto& eta = pm[b];
                        std::vector<int> zeta(n + m - 1);
                        auto adj = [&](int j) { return j < i ? j : j + m - 1; };
                        for (int u = 0; u < n + m - 1; ++u) {
                            if (u < pos)
                                zeta[u] = adj(theta[u]);
                            else if (u < pos + m)
                                zeta[u] = i + eta[u - pos];
                            else
                                zeta[u] = adj(theta[u - m + 1]);
                        }
                        ChainMap piece =
                            layout[R]
                                .incl[perm_index(pr, zeta)]
                                .compose(p.comp(theta_key(X, theta), pos,
                                                theta_key(Y, eta)))
                                .compose(tensor_map(layout[X].proj[a],
                                                    layout[Y].proj[b]));
                        f = f + piece;
                    }
                }
                if (!f.is_zero()) o.set_comp(X, i, Y, f);
            }
        }
    }
    for (std::size_t c = 0; c < p.colors.size(); ++c) {
        auto it = p.units.find(static_cast<int>(c));
        if (it == p.units.end()) continue;
        CompKey uk{{static_cast<int>(c)}, static_cast<int>(c)};
        if (!keys.count(uk)) continue;
        Matrix col = layout[uk].incl[0].block(0) * it->second;
        if (!col.is_zero()) o.units[static_cast<int>(c)] = col;
    }
    return o;
}

OperadMap pi_projection(const ColoredDgOperad& o) {
    PlanarColoredOperad p = forget_symmetry(o);
    OperadMap f;
    f.source = planar_to_symmetric(p);
    f.target = o;
    f.color_map.resize(o.colors.size());
    std::iota(f.color_map.begin(), f.color_map.end(), 0);
    for (const auto& [key, c] : f.source.components) {
        MultiSum layout = sigma_summand_layout(p, key);
        auto perms = permutations_lex(key.arity());
        ChainMap blk = ChainMap::zero(c, o.component(key));
        for (std::size_t t = 0; t < perms.size(); ++t)
            blk = blk + o.act(theta_key(key, perms[t]), perms[t])
                            .compose(layout.proj[t]);
        if (!blk.is_zero()) f.blocks[key] = blk;
    }
    return f;
}

// --- the module operad MO ------------------------------------------------------

int mo_color(int c, bool module_tag) { return 2 * c + (module_tag ? 1 : 0); }

namespace {

int mo_base(int code) { return code / 2; }
bool mo_tag(int code) { return code % 2 != 0; }

CompKey mo_underlying(const CompKey& key) {
    CompKey out;
    out.out = mo_base(key.out);
    for (int c : key.in) out.in.push_back(mo_base(c));
    return out;
}

// nonzero pattern: output m needs exactly one input m, output a needs none
bool mo_admissible(const CompKey& key) {
    int m = 0;
    for (int c : key.in) m += mo_tag(c) ? 1 : 0;
    return mo_tag(key.out) ? m == 1 : m == 0;
}

}  // namespace

ColoredDgOperad module_operad(const ColoredDgOperad& o) {
    ColoredDgOperad mo;
    mo.ring = o.ring;
    mo.arity_bound = o.arity_bound;
    for (const auto& name : o.colors) {
        mo.colors.push_back(name + ".a");
        mo.colors.push_back(name + ".m");
    }
    // tagged keys over each underlying component
    std::map<CompKey, std::vector<CompKey>> tagged;  // underlying -> MO keys
    for (const auto& [ukey, c] : o.components) {
        std::vector<CompKey>& lst = tagged[ukey];
        CompKey alla;
        alla.out = mo_color(ukey.out, false);
        for (int col : ukey.in) alla.in.push_back(mo_color(col, false));
        lst.push_back(alla);
        for (int s = 0; s < ukey.arity(); ++s) {
            CompKey km = alla;
            km.out = mo_color(ukey.out, true);
            km.in[s] = mo_color(ukey.in[s], true);
            lst.push_back(km);
        }
        for (const auto& k : lst) mo.set_component(k, c);
    }
    for (const auto& [ukey, lst] : tagged) {
        for (const auto& key : lst)
            for (int i = 0; i + 1 < key.arity(); ++i) {
                CompKey tgt = key;
                std::swap(tgt.in[i], tgt.in[i + 1]);
                mo.set_sym(key, i, o.act_gen(ukey, i));
            }
    }
    for (const auto& [uX, lx] : tagged) {
        for (const auto& [uY, ly] : tagged) {
            if (uX.arity() + uY.arity() - 1 > o.arity_bound) continue;
            for (const auto& X : lx)
                for (const auto& Y : ly)
                    for (int i = 0; i < X.arity(); ++i) {
                        if (X.in[i] != Y.out) continue;
                        ChainMap u = o.comp(uX, i, uY);
                        if (!u.is_zero()) mo.set_comp(X, i, Y, u);
                    }
        }
    }
    for (const auto& [c, col] : o.units) {
        mo.units[mo_color(c, false)] = col;
        mo.units[mo_color(c, true)] = col;
    }
    return mo;
}

// --- finite categories ----------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[b] = a;
        return true;
    }
};

}  // namespace

void FiniteCategory::tabulate(int word_cap, int morphism_cap) {
    for (const auto& g : gens)
        if (g.src < 0 || g.src >= n_objects || g.dst < 0 || g.dst >= n_objects)
            throw std::invalid_argument("generator endpoints out of range");
    auto word_dst = [&](int src, const std::vector<int>& w) {
        int o = src;
        for (int g : w) {
            if (gens[g].src != o) return -1;
            o = gens[g].dst;
        }
        return o;
    };
    for (const auto& [u, v] : relations) {
        bool matched = false;
        for (int s = 0; s < n_objects; ++s) {
            int du = word_dst(s, u), dv = word_dst(s, v);
            if (du >= 0 && du == dv) matched = true;
        }
        if (!matched) throw std::invalid_argument("relation words not parallel");
    }
    // all composable words up to the cap
    using W = std::pair<int, std::vector<int>>;  // (source object, gens)
    std::map<W, int> id_of;
    std::vector<W> words;
    std::vector<int> dst;
    std::queue<int> bfs;
    for (int s = 0; s < n_objects; ++s) {
        id_of[{s, {}}] = static_cast<int>(words.size());
        words.push_back({s, {}});
        dst.push_back(s);
        bfs.push(static_cast<int>(words.size()) - 1);
    }
    while (!bfs.empty()) {
        int w = bfs.front();
        bfs.pop();
        if (static_cast<int>(words[w].second.size()) >= word_cap) continue;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (gens[g].src != dst[w]) continue;
            W nw = words[w];
            nw.second.push_back(static_cast<int>(g));
            if (id_of.count(nw)) continue;
            if (words.size() >= 20000)
                throw InfiniteHom("word enumeration exceeded cap");
            id_of[nw] = static_cast<int>(words.size());
            words.push_back(nw);
            dst.push_back(gens[g].dst);
            bfs.push(static_cast<int>(words.size()) - 1);
        }
    }
    // congruence closure over relation rewrites inside the word set
    UnionFind uf(static_cast<int>(words.size()));
    bool changed = true;
    auto try_rewrite = [&](int w, const std::vector<int>& u, const std::vector<int>& v) {
        const auto& [s, g] = words[w];
        // boundary objects of w
        std::vector<int> obj{s};
        for (int t : g) obj.push_back(gens[t].dst);
        for (std::size_t at = 0; at + u.size() <= g.size(); ++at) {
            if (!std::equal(u.begin(), u.end(), g.begin() + at)) continue;
            // the replacement must compose along the same endpoints
            if (word_dst(obj[at], v) != obj[at + u.size()]) continue;
            std::vector<int> ng(g.begin(), g.begin() + at);
            ng.insert(ng.end(), v.begin(), v.end());
            ng.insert(ng.end(), g.begin() + at + u.size(), g.end());
            auto it = id_of.find({s, ng});
            if (it != id_of.end() && uf.unite(w, it->second)) changed = true;
        }
    };
    while (changed) {
        changed = false;
        for (int w = 0; w < static_cast<int>(words.size()); ++w)
            for (const auto& [u, v] : relations) {
                try_rewrite(w, u, v);
                try_rewrite(w, v, u);
            }
    }
    // classes -> morphisms, sorted canonically by shortest representative
    std::map<int, W> rep;
    for (int w = 0; w < static_cast<int>(words.size()); ++w) {
        int r = uf.find(w);
        auto it = rep.find(r);
        if (it == rep.end() ||
            words[w].second.size() < it->second.second.size() ||
            (words[w].second.size() == it->second.second.size() &&
             words[w] < it->second))
            rep[r] = words[w];
    }
    std::vector<std::pair<W, int>> classes;  // (representative, root)
    for (const auto& [r, w] : rep) classes.push_back({w, r});
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
        if (a.first.second.size() != b.first.second.size())
            return a.first.second.size() < b.first.second.size();
        return a.first < b.first;
    });
    if (static_cast<int>(classes.size()) > morphism_cap)
        throw InfiniteHom("morphism count exceeded cap");
    mor_src.clear();
    mor_dst.clear();
    mor_word.clear();
    ids.assign(n_objects, -1);
    std::map<int, int> mor_of_root;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& [w, root] = classes[k];
        mor_src.push_back(w.first);
        mor_dst.push_back(word_dst(w.first, w.second));
        mor_word.push_back(w.second);
        mor_of_root[root] = static_cast<int>(k);
        if (w.second.empty()) ids[w.first] = static_cast<int>(k);
    }
    // closure under composition of representatives
    mor_of_word_.clear();
    for (int w = 0; w < static_cast<int>(words.size()); ++w)
        mor_of_word_[words[w]] = mor_of_root.at(uf.find(w));
    for (int a = 0; a < n_morphisms(); ++a)
        for (int b = 0; b < n_morphisms(); ++b) {
            if (mor_dst[a] != mor_src[b]) continue;
            std::vector<int> w = mor_word[a];
            w.insert(w.end(), mor_word[b].begin(), mor_word[b].end());
            if (!mor_of_word_.count({mor_src[a], w}))
                throw InfiniteHom("composition escapes the tabulated word set");
        }
}

std::vector<int> FiniteCategory::hom(int a, int b) const {
    std::vector<int> out;
    for (int m = 0; m < n_morphisms(); ++m)
        if (mor_src[m] == a && mor_dst[m] == b) out.push_back(m);
    return out;
}

int FiniteCategory::compose(int first, int then) const {
    if (mor_dst[first] != mor_src[then])
        throw std::invalid_argument("morphisms not composable");
    std::vector<int> w = mor_word[first];
    w.insert(w.end(), mor_word[then].begin(), mor_word[then].end());
    return mor_of_word_.at({mor_src[first], w});
}

FiniteCategory FiniteCategory::terminal() {
    FiniteCategory c;
    c.n_objects = 1;
    c.tabulate();
    return c;
}

FiniteCategory FiniteCategory::arrow() {
    FiniteCategory c;
    c.n_objects = 2;
    c.gens.push_back({0, 1});
    c.tabulate();
    return c;
}

FiniteCategory FiniteCategory::commutative_square() {
    FiniteCategory c;
    c.n_objects = 4;  // 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3, top-right = bottom-left
    c.gens.push_back({0, 1});
    c.gens.push_back({0, 2});
    c.gens.push_back({1, 3});
    c.gens.push_back({2, 3});
    c.relations.push_back({{0, 2}, {1, 3}});
    c.tabulate();
    return c;
}

// --- operad powers by a category --------------------------------------------------

int power_color(const FiniteCategory& cat, int c, int m) {
    return c * cat.n_objects + m;
}

namespace {

struct PowerKey {
    CompKey rkey;           // underlying R key
    std::vector<int> objs;  // input objects
    int out_obj = 0;
};

PowerKey decode_power(const FiniteCategory& cat, const CompKey& key) {
    PowerKey out;
    out.rkey.out = key.out / cat.n_objects;
    out.out_obj = key.out % cat.n_objects;
    for (int c : key.in) {
        out.rkey.in.push_back(c / cat.n_objects);
        out.objs.push_back(c % cat.n_objects);
    }
    return out;
}

// arrow tuples (phi_i in hom(m_i, n)) in lexicographic order of hom positions
std::vector<std::vector<int>> arrow_tuples(const FiniteCategory& cat,
                                           const std::vector<int>& objs, int n) {
    std::vector<std::vector<int>> homs;
    for (int m : objs) homs.push_back(cat.hom(m, n));
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
        if (t == homs.size()) {
            out.push_back(cur);
            return;
        }
        for (int phi : homs[t]) {
            cur.push_back(phi);
            rec(t + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

int tuple_index(const std::vector<std::vector<int>>& tuples,
                const std::vector<int>& t) {
    return static_cast<int>(
        std::lower_bound(tuples.begin(), tuples.end(), t) - tuples.begin());
}

}  // namespace

MultiSum power_summand_layout(const ColoredDgOperad& r, const FiniteCategory& cat,
                              const CompKey& key) {
    PowerKey pk = decode_power(cat, key);
    DgComplex base = r.component(pk.rkey);
    auto tuples = arrow_tuples(cat, pk.objs, pk.out_obj);
    return direct_sum_many(std::vector<DgComplex>(tuples.size(), base));
}

ColoredDgOperad operad_power_by_category(const ColoredDgOperad& r,
                                         const FiniteCategory& cat) {
    ColoredDgOperad o;
    o.ring = r.ring;
    o.arity_bound = r.arity_bound;
    for (const auto& name : r.colors)
        for (int m = 0; m < cat.n_objects; ++m)
            o.colors.push_back(name + "@" + std::to_string(m));
    // enumerate keys: every object decoration of every R component
    std::vector<CompKey> keys;
    std::map<CompKey, MultiSum> layout;
    std::map<CompKey, std::vector<std::vector<int>>> tuples_of;
    for (const auto& [rkey, c] : r.components) {
        int k = rkey.arity();
        std::vector<int> objs(k, 0);
        bool more = true;
        while (more) {
            for (int n = 0; n < cat.n_objects; ++n) {
                auto tuples = arrow_tuples(cat, objs, n);
                if (tuples.empty()) continue;
                CompKey key;
                key.out = power_color(cat, rkey.out, n);
                for (int t = 0; t < k; ++t)
                    key.in.push_back(power_color(cat, rkey.in[t], objs[t]));
                keys.push_back(key);
                tuples_of[key] = tuples;
                layout[key] = direct_sum_many(
                    std::vector<DgComplex>(tuples.size(), c));
                o.set_component(key, layout[key].sum);
            }
            more = false;
            for (int t = k - 1; t >= 0; --t) {
                if (++objs[t] < cat.n_objects) {
                    more = true;
                    break;
                }
                objs[t] = 0;
            }
        }
    }
    for (const auto& key : keys) {
        PowerKey pk = decode_power(cat, key);
        const auto& tuples = tuples_of[key];
        for (int i = 0; i + 1 < key.arity(); ++i) {
            CompKey tgt = key;
            std::swap(tgt.in[i], tgt.in[i + 1]);
            ChainMap gen = r.act_gen(pk.rkey, i);
            ChainMap f = ChainMap::zero(layout[key].sum, layout.at(tgt).sum);
            for (std::size_t t = 0; t < tuples.size(); ++t) {
                std::vector<int> sw = tuples[t];
                std::swap(sw[i], sw[i + 1]);
                f = f + layout.at(tgt)
                            .incl[tuple_index(tuples_of.at(tgt), sw)]
                            .compose(gen)
                            .compose(layout[key].proj[t]);
            }
            o.set_sym(key, i, f);
        }
    }
    for (const auto& X : keys) {
        PowerKey px = decode_power(cat, X);
        for (const auto& Y : keys) {
            PowerKey py = decode_power(cat, Y);
            if (X.arity() + Y.arity() - 1 > r.arity_bound) continue;
            for (int i = 0; i < X.arity(); ++i) {
                if (X.in[i] != Y.out) continue;
                CompKey R = composed_key(X, i, Y);
                if (!layout.count(R)) continue;
                ChainMap base = r.comp(px.rkey, i, py.rkey);
                ChainMap f = ChainMap::zero(tensor(layout[X].sum, layout[Y].sum),
                                            layout[R].sum);
                for (std::size_t a = 0; a < tuples_of[X].size(); ++a)
                    for (std::size_t b = 0; b < tuples_of[Y].size(); ++b) {
                        std::vector<int> res(tuples_of[X][a].begin(),
                                             tuples_of[X][a].begin() + i);
                        for (int psi : tuples_of[Y][b])
                            res.push_back(cat.compose(psi, tuples_of[X][a][i]));
                        res.insert(res.end(), tuples_of[X][a].begin() + i + 1,
                                   tuples_of[X][a].end());
                        f = f + layout[R]
                                    .incl[tuple_index(tuples_of[R], res)]
                                    .compose(base)
                                    .compose(tensor_map(layout[X].proj[a],
                                                        layout[Y].proj[b]));
                    }
                if (!f.is_zero()) o.set_comp(X, i, Y, f);
            }
        }
    }
    for (const auto& [c, col] : r.units)
        for (int m = 0; m < cat.n_objects; ++m) {
            CompKey uk{{power_color(cat, c, m)}, power_color(cat, c, m)};
            if (!layout.count(uk)) continue;
            int t = tuple_index(tuples_of[uk], {cat.ids[m]});
            Matrix u = layout[uk].incl[t].block(0) * col;
            if (!u.is_zero()) o.units[power_color(cat, c, m)] = u;
        }
    return o;
}

// --- chains of a simplicial operad --------------------------------------------------

ColoredDgOperad chains_of_simplicial_operad(const SimplicialOperad& so,
                                            const CoeffRing& ring) {
    ColoredDgOperad o;
    o.ring = ring;
    o.colors = so.colors;
    o.arity_bound = so.arity_bound;
    std::map<CompKey, SimplicialModule> mods;
    std::map<CompKey, NormalizedChains> ncs;
    std::map<CompKey, std::vector<std::vector<FormalSimplex>>> elems;
    for (const auto& [key, fs] : so.components) {
        fs.validate(ring);
        mods[key] = free_module(fs, ring);
        ncs[key] = normalized_chains(mods[key]);
        for (int m = 0; m <= so.n_max; ++m) elems[key].push_back(fs.level_elements(m));
        o.set_component(key, ncs[key].complex);
    }
    auto index_of = [&](const CompKey& key, int m, const FormalSimplex& s) {
        const auto& lst = elems.at(key)[m];
        return static_cast<int>(std::lower_bound(lst.begin(), lst.end(), s) -
                                lst.begin());
    };
    for (const auto& [key, fs] : so.components) {
        for (int i = 0; i + 1 < key.arity(); ++i) {
            CompKey tgt = key;
            std::swap(tgt.in[i], tgt.in[i + 1]);
            if (!so.components.count(tgt)) continue;
            ChainMap f = ChainMap::zero(ncs[key].complex, ncs[tgt].complex);
            for (int m = 0; m <= so.n_max; ++m) {
                const auto& src_elems = elems[key][m];
                Matrix lvl(ring, static_cast<int>(elems[tgt][m].size()),
                           static_cast<int>(src_elems.size()));
                for (std::size_t s = 0; s < src_elems.size(); ++s)
                    lvl.set(index_of(tgt, m, so.sym(key, i, src_elems[s])),
                            static_cast<int>(s), 1);
                Matrix blk = ncs[tgt].projection[m] * lvl * ncs[key].section[m];
                if (!blk.is_zero()) f.blocks[-m] = blk;
            }
            o.set_sym(key, i, f);
        }
    }
    for (const auto& [X, fx] : so.components) {
        for (const auto& [Y, fy] : so.components) {
            if (X.arity() + Y.arity() - 1 > so.arity_bound) continue;
            for (int i = 0; i < X.arity(); ++i) {
                if (X.in[i] != Y.out) continue;
                CompKey R = composed_key(X, i, Y);
                if (!so.components.count(R)) continue;
                SimplicialModule prod = levelwise_tensor(mods[X], mods[Y]);
                NormalizedChains ncp = normalized_chains(prod);
                ChainMap cmap = ChainMap::zero(ncp.complex, ncs[R].complex);
                for (int m = 0; m <= so.n_max; ++m) {
                    const auto& ex = elems[X][m];
                    const auto& ey = elems[Y][m];
                    Matrix lvl(ring, static_cast<int>(elems[R][m].size()),
                               static_cast<int>(ex.size() * ey.size()));
                    for (std::size_t a = 0; a < ex.size(); ++a)
                        for (std::size_t b = 0; b < ey.size(); ++b)
                            lvl.set(index_of(R, m, so.comp(X, i, Y, ex[a], ey[b])),
                                    static_cast<int>(a * ey.size() + b), 1);
                    Matrix blk = ncs[R].projection[m] * lvl * ncp.section[m];
                    if (!blk.is_zero()) cmap.blocks[-m] = blk;
                }
                ChainMap f = cmap.compose(eilenberg_maclane(mods[X], mods[Y]));
                if (!f.is_zero()) o.set_comp(X, i, Y, f);
            }
        }
    }
    for (std::size_t c = 0; c < so.colors.size(); ++c) {
        CompKey uk{{static_cast<int>(c)}, static_cast<int>(c)};
        if (!so.components.count(uk)) continue;
        FormalSimplex v{0, so.units[c], {0}};
        Matrix e(ring, static_cast<int>(elems[uk][0].size()), 1);
        e.set(index_of(uk, 0, v), 0, 1);
        Matrix col = ncs[uk].projection[0] * e;
        if (!col.is_zero()) o.units[static_cast<int>(c)] = col;
    }
    return o;
}

// --- builtins -------------------------------------------------------------------------

PlanarColoredOperad planar_com_operad(const CoeffRing& ring, int arity_bound,
                                      bool unital) {
    PlanarColoredOperad p;
    p.ring = ring;
    p.colors = {"c"};
    p.arity_bound = arity_bound;
    DgComplex k = DgComplex::point(ring, 0);
    for (int n = unital ? 0 : 1; n <= arity_bound; ++n)
        p.components[CompKey{std::vector<int>(n, 0), 0}] = k;
    for (int n = unital ? 0 : 1; n <= arity_bound; ++n)
        for (int m = unital ? 0 : 1; m + n - 1 <= arity_bound; ++m) {
            if (n == 0) break;  // nothing to plug into
            CompKey X{std::vector<int>(n, 0), 0}, Y{std::vector<int>(m, 0), 0};
            for (int i = 0; i < n; ++i)
                p.comps[std::make_tuple(X, i, Y)] = ChainMap::identity(k);
        }
    Matrix u(ring, 1, 1);
    u.set(0, 0, 1);
    p.units[0] = u;
    return p;
}

ColoredDgOperad com_operad(const CoeffRing& ring, int arity_bound, bool unital) {
    PlanarColoredOperad p = planar_com_operad(ring, arity_bound, unital);
    ColoredDgOperad o;
    o.ring = p.ring;
    o.colors = p.colors;
    o.arity_bound = p.arity_bound;
    o.components = p.components;
    o.comps = p.comps;
    o.units = p.units;
    for (const auto& [key, c] : o.components)
        for (int i = 0; i + 1 < key.arity(); ++i)
            o.sym[{key, i}] = ChainMap::identity(c);
    return o;
}

ColoredDgOperad ass_operad(const CoeffRing& ring, int arity_bound) {
    return planar_to_symmetric(planar_com_operad(ring, arity_bound, false));
}

}  // namespace opforge
