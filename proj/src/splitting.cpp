#include "opforge/splitting.hpp"

#include <algorithm>
#include <sstream>

namespace opforge {

namespace {

int factorial(int n) {
    int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

int perm_index(const std::vector<std::vector<int>>& perms, const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) -
                            perms.begin());
}

// first K-slot in the ordering: scan positions, k = theta(u) - n_front
int min_k(const std::vector<int>& theta, int n_front) {
    for (int v : theta)
        if (v >= n_front) return v - n_front;
    return -1;
}

// all tuples of nonnegative fiber sizes summing to total
void fiber_sizes(int parts, int total, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int s = 0; s <= total; ++s) {
        cur.push_back(s);
        fiber_sizes(parts - 1, total - s, cur, out);
        cur.pop_back();
    }
}

}  // namespace

ChainMap SigmaSplitting::t_theta(const CompKey& key, int theta_index) const {
    DgComplex c = operad.component(key);
    auto it = t.find(key);
    if (it == t.end() || theta_index < 0 ||
        theta_index >= static_cast<int>(it->second.size()))
        return GradedMap::zero(c, c);
    return it->second[theta_index];
}

static SplittingReport com_check(const SigmaSplitting& s);

SplittingReport check_splitting(const SigmaSplitting& s) {
    const ColoredDgOperad& o = s.operad;
    for (const auto& [key, comp] : o.components) {
        if (comp.is_zero()) continue;
        int n = key.arity();
        auto perms = permutations_lex(n);
        auto it = s.t.find(key);
        if (it == s.t.end() ||
            it->second.size() != perms.size())
            return {false, "missing splitting data at " + key_to_string(key)};
        GradedMap sum = GradedMap::zero(comp, comp);
        for (std::size_t a = 0; a < perms.size(); ++a) {
            const ChainMap& f = it->second[a];
            if (f.source != comp || f.target != comp || f.degree != 0)
                return {false, "t component of wrong shape at " +
                                   key_to_string(key)};
            if (!f.is_chain_map())
                return {false, "t component is not a chain map at " +
                                   key_to_string(key)};
            sum = sum + f;
        }
        if (sum != GradedMap::identity(comp))
            return {false, "(SPL) fails at " + key_to_string(key)};
        for (int i = 0; i + 1 < n; ++i) {
            CompKey tgt = key;
            std::swap(tgt.in[i], tgt.in[i + 1]);
            ChainMap g = o.act_gen(key, i);
            for (std::size_t a = 0; a < perms.size(); ++a) {
                std::vector<int> st = perms[a];
                for (int& v : st) {
                    if (v == i)
                        v = i + 1;
                    else if (v == i + 1)
                        v = i;
                }
                int b = perm_index(perms, st);
                if (g.compose(it->second[a]) != s.t_theta(tgt, b).compose(g)) {
                    std::ostringstream msg;
                    msg << "(INV) fails at " << key_to_string(key)
                        << " generator " << i << " ordering " << a;
                    return {false, msg.str()};
                }
            }
        }
    }
    return com_check(s);
}

// (COM): for every gluing datum (f : I -> J monotone, phi = id) within the
// arity bound, the min-projection square commutes.
static SplittingReport com_check(const SigmaSplitting& s) {
    const ColoredDgOperad& o = s.operad;
    for (const auto& [dd, outer] : o.components) {
        if (outer.is_zero()) continue;
        int nd = dd.arity();
        int e = dd.out;
        for (int nk = 2; nk <= nd; ++nk) {
            int nj = nd - nk;
            std::vector<int> dcols(dd.in.begin(), dd.in.begin() + nj);
            std::vector<int> acols(dd.in.begin() + nj, dd.in.end());
            for (int ni = 0; ni + nk <= o.arity_bound; ++ni) {
                std::vector<std::vector<int>> sizes;
                std::vector<int> cur;
                fiber_sizes(nj, ni, cur, sizes);
                for (const auto& sz : sizes) {
                    // choose an inner component per fiber
                    std::vector<std::vector<CompKey>> choices(nj);
                    bool feasible = true;
                    for (int j = 0; j < nj && feasible; ++j) {
                        for (const auto& [yk, yc] : o.components)
                            if (!yc.is_zero() && yk.out == dcols[j] &&
                                yk.arity() == sz[j])
                                choices[j].push_back(yk);
                        if (choices[j].empty()) feasible = false;
                    }
                    if (!feasible) continue;
                    std::vector<int> pick(nj, 0);
                    bool more = true;
                    while (more) {
                        SplittingReport r = [&]() -> SplittingReport {
                            std::vector<int> ccols, F;
                            std::vector<DgComplex> inners;
                            for (int j = 0; j < nj; ++j) {
                                const CompKey& yk = choices[j][pick[j]];
                                ccols.insert(ccols.end(), yk.in.begin(),
                                             yk.in.end());
                                for (int u = 0; u < sz[j]; ++u) F.push_back(j);
                                inners.push_back(o.component(yk));
                            }
                            for (int k = 0; k < nk; ++k) {
                                ccols.push_back(acols[k]);
                                F.push_back(nj + k);
                            }
                            CompKey tkey{ccols, e};
                            if (o.component(tkey).is_zero()) return {true, ""};
                            ChainMap t0 =
                                full_composition(o, F, ccols, dd.in, e);
                            std::vector<GradedMap> plugs{
                                GradedMap::identity(outer)};
                            for (const auto& yc : inners)
                                plugs.push_back(GradedMap::identity(yc));
                            for (int k = 0; k < nk; ++k)
                                plugs.push_back(o.unit_map(acols[k]));
                            ChainMap top = t0.compose(tensor_map_many(plugs));
                            auto perms_c = permutations_lex(ni + nk);
                            auto perms_d = permutations_lex(nd);
                            for (int k = 0; k < nk; ++k) {
                                GradedMap lt = GradedMap::zero(
                                    o.component(tkey), o.component(tkey));
                                for (std::size_t a = 0; a < perms_c.size(); ++a)
                                    if (min_k(perms_c[a], ni) == k)
                                        lt = lt + s.t_theta(tkey,
                                                            static_cast<int>(a));
                                GradedMap rt = GradedMap::zero(outer, outer);
                                for (std::size_t a = 0; a < perms_d.size(); ++a)
                                    if (min_k(perms_d[a], nj) == k)
                                        rt = rt + s.t_theta(dd,
                                                            static_cast<int>(a));
                                std::vector<GradedMap> wrap{rt};
                                for (const auto& yc : inners)
                                    wrap.push_back(GradedMap::identity(yc));
                                if (lt.compose(top) !=
                                    top.compose(tensor_map_many(wrap))) {
                                    std::ostringstream msg;
                                    msg << "(COM) fails: outer "
                                        << key_to_string(dd) << " target "
                                        << key_to_string(tkey) << " k = " << k;
                                    return {false, msg.str()};
                                }
                            }
                            return {true, ""};
                        }();
                        if (!r.ok) return r;
                        more = false;
                        for (int j = nj - 1; j >= 0; --j) {
                            if (++pick[j] <
                                static_cast<int>(choices[j].size())) {
                                more = true;
                                break;
                            }
                            pick[j] = 0;
                        }
                    }
                }
            }
        }
    }
    return {true, ""};
}

SigmaSplitting rational_splitting(const ColoredDgOperad& o) {
    if (!o.ring.is_field() || !o.ring.char_zero())
        throw CharNotZero("rational splitting needs a field of characteristic 0");
    SigmaSplitting s;
    s.operad = o;
    for (const auto& [key, comp] : o.components) {
        if (comp.is_zero()) continue;
        int nf = factorial(key.arity());
        s.t[key].assign(nf, GradedMap::identity(comp).scaled(mpq_class(1, nf)));
    }
    return s;
}

SigmaSplitting planar_splitting(const PlanarColoredOperad& p) {
    SigmaSplitting s;
    s.operad = planar_to_symmetric(p);
    for (const auto& [key, comp] : s.operad.components) {
        if (comp.is_zero()) continue;
        MultiSum lay = sigma_summand_layout(p, key);
        for (std::size_t a = 0; a < lay.incl.size(); ++a)
            s.t[key].push_back(lay.incl[a].compose(lay.proj[a]));
    }
    return s;
}

namespace {

void validate_homotopy(const HomotopyData& data) {
    for (const auto& [c, V] : data.V) {
        if (V.is_zero()) continue;
        auto ai = data.alpha.find(c), hi = data.h.find(c);
        if (ai == data.alpha.end() || hi == data.h.end())
            throw BadHomotopy("missing alpha or h for color " +
                              std::to_string(c));
        const GradedMap& al = ai->second;
        const GradedMap& h = hi->second;
        if (al.source != V || al.target != V || al.degree != 0 ||
            h.source != V || h.target != V || h.degree != -1)
            throw BadHomotopy("contraction data of wrong shape for color " +
                              std::to_string(c));
        GradedMap d = differential_map(V);
        if (d.compose(h) + h.compose(d) != GradedMap::identity(V) - al)
            throw BadHomotopy("d h + h d != id - alpha at color " +
                              std::to_string(c));
    }
}

bool key_supported(const CompKey& key, const std::map<int, DgComplex>& V) {
    for (int c : key.in) {
        auto it = V.find(c);
        if (it == V.end() || it->second.is_zero()) return false;
    }
    return true;
}

}  // namespace

std::map<CompKey, GradedMap> free_algebra_homotopy(const SigmaSplitting& s,
                                                   const HomotopyData& data,
                                                   int arity_bound) {
    validate_homotopy(data);
    const ColoredDgOperad& o = s.operad;
    std::map<CompKey, GradedMap> out;
    for (const auto& [key, comp] : o.components) {
        int n = key.arity();
        if (comp.is_zero() || n > arity_bound || !key_supported(key, data.V))
            continue;
        std::vector<DgComplex> factors{comp};
        for (int c : key.in) factors.push_back(data.V.at(c));
        DgComplex total = tensor_many(factors);
        GradedMap H = GradedMap::zero(total, total, -1);
        auto perms = permutations_lex(n);
        for (std::size_t a = 0; a < perms.size(); ++a) {
            ChainMap tt = s.t_theta(key, static_cast<int>(a));
            if (tt.is_zero()) continue;
            std::vector<int> pos(n);
            for (int u = 0; u < n; ++u) pos[perms[a][u]] = u;
            std::vector<GradedMap> wrap{tt};
            for (int t = 0; t < n; ++t)
                wrap.push_back(GradedMap::identity(factors[t + 1]));
            GradedMap base = tensor_map_many(wrap);
            for (int i = 0; i < n; ++i) {
                std::vector<GradedMap> fs{GradedMap::identity(comp)};
                for (int t = 0; t < n; ++t) {
                    int c = key.in[t];
                    if (pos[t] < i)
                        fs.push_back(data.alpha.at(c));
                    else if (pos[t] == i)
                        fs.push_back(data.h.at(c));
                    else
                        fs.push_back(GradedMap::identity(factors[t + 1]));
                }
                H = H + tensor_map_many(fs).compose(base);
            }
        }
        out[key] = H;
    }
    return out;
}

std::map<CompKey, GradedMap> free_algebra_endomorphism(const ColoredDgOperad& o,
                                                       const HomotopyData& data,
                                                       int arity_bound) {
    std::map<CompKey, GradedMap> out;
    for (const auto& [key, comp] : o.components) {
        if (comp.is_zero() || key.arity() > arity_bound ||
            !key_supported(key, data.V))
            continue;
        std::vector<GradedMap> fs{GradedMap::identity(comp)};
        for (int c : key.in) fs.push_back(data.alpha.at(c));
        out[key] = tensor_map_many(fs);
    }
    return out;
}

}  // namespace opforge
