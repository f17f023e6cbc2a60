#include "opforge/algebra.hpp"
#include "opforge/splitting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace opforge {

namespace {

std::vector<int> stable_sort_perm(const std::vector<int>& c) {
    int n = static_cast<int>(c.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return c[a] < c[b]; });
    std::vector<int> sigma(n);
    for (int p = 0; p < n; ++p) sigma[idx[p]] = p;
    return sigma;
}

// diagonal action of sigma on O(key) (x) V_0 (x) ... (x) V_{n-1}
GradedMap diag_action(const ColoredDgOperad& o, const CompKey& key,
                      const std::vector<DgComplex>& vfactors,
                      const std::vector<int>& sigma) {
    int n = key.arity();
    std::vector<DgComplex> flat{o.component(key)};
    flat.insert(flat.end(), vfactors.begin(), vfactors.end());
    std::vector<int> sp(n + 1);
    sp[0] = 0;
    for (int t = 0; t < n; ++t) sp[1 + t] = 1 + sigma[t];
    GradedMap p = permute_factors(flat, sp);
    std::vector<GradedMap> fs{o.act(key, sigma)};
    std::vector<int> inv(n);
    for (int t = 0; t < n; ++t) inv[sigma[t]] = t;
    for (int t = 0; t < n; ++t)
        fs.push_back(GradedMap::identity(vfactors[inv[t]]));
    return tensor_map_many(fs).compose(p);
}

void sorted_tuples(const std::vector<int>& colors, int len, int from,
                   std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (len == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t a = from; a < colors.size(); ++a) {
        cur.push_back(colors[a]);
        sorted_tuples(colors, len - 1, static_cast<int>(a), cur, out);
        cur.pop_back();
    }
}

DgComplex zero_complex(const CoeffRing& ring) {
    DgComplex z;
    z.ring = ring;
    return z;
}

}  // namespace

DgComplex TruncatedFreeAlgebra::component(int color) const {
    auto it = layout.find(color);
    return it == layout.end() ? zero_complex(operad.ring) : it->second.sum;
}

int TruncatedFreeAlgebra::piece_index(const CompKey& rep) const {
    auto it = pieces.find(rep.out);
    if (it == pieces.end()) return -1;
    for (std::size_t a = 0; a < it->second.size(); ++a)
        if (it->second[a].key == rep) return static_cast<int>(a);
    return -1;
}

TruncatedFreeAlgebra free_algebra(const ColoredDgOperad& o,
                                  const ColorIndexedComplexes& v,
                                  int truncation) {
    if (truncation > o.arity_bound)
        throw ArityOverflow("free algebra truncation exceeds the arity bound");
    TruncatedFreeAlgebra f;
    f.operad = o;
    f.generators = v;
    f.truncation = truncation;
    std::vector<int> vc;
    for (const auto& [c, x] : v)
        if (!x.is_zero()) vc.push_back(c);
    for (std::size_t d = 0; d < o.colors.size(); ++d) {
        int dc = static_cast<int>(d);
        for (int n = 0; n <= truncation; ++n) {
            std::vector<std::vector<int>> tuples;
            std::vector<int> cur;
            sorted_tuples(vc, n, 0, cur, tuples);
            for (const auto& c : tuples) {
                CompKey key{c, dc};
                DgComplex oc = o.component(key);
                if (oc.is_zero()) continue;
                std::vector<DgComplex> vf;
                for (int col : c) vf.push_back(v.at(col));
                std::vector<DgComplex> flat{oc};
                flat.insert(flat.end(), vf.begin(), vf.end());
                DgComplex big = tensor_many(flat);
                std::map<int, Matrix> spans;
                for (int i = 0; i + 1 < n; ++i) {
                    if (c[i] != c[i + 1]) continue;
                    std::vector<int> si(n);
                    std::iota(si.begin(), si.end(), 0);
                    std::swap(si[i], si[i + 1]);
                    GradedMap sub =
                        diag_action(o, key, vf, si) - GradedMap::identity(big);
                    for (const auto& [deg, rk] : big.ranks) {
                        Matrix blk = sub.block(deg);
                        auto it = spans.find(deg);
                        if (it == spans.end())
                            spans[deg] = blk;
                        else
                            it->second = it->second.hstack(blk);
                    }
                }
                FreePiece piece{key, big, quotient_by_subspace(big, spans)};
                f.pieces[dc].push_back(std::move(piece));
            }
        }
        std::vector<DgComplex> qs;
        for (const auto& p : f.pieces[dc]) qs.push_back(p.coinv.quotient);
        if (qs.empty()) {
            MultiSum ms;
            ms.sum = zero_complex(o.ring);
            f.layout[dc] = ms;
        } else {
            f.layout[dc] = direct_sum_many(qs);
        }
    }
    return f;
}

GradedMap free_structure_map(const TruncatedFreeAlgebra& f, const CompKey& key) {
    const ColoredDgOperad& o = f.operad;
    DgComplex oc = o.component(key);
    int n = key.arity();
    std::vector<DgComplex> srcf{oc};
    for (int col : key.in) srcf.push_back(f.component(col));
    DgComplex source = tensor_many(srcf);
    DgComplex target = f.component(key.out);
    GradedMap m = GradedMap::zero(source, target);
    if (source.is_zero() || target.is_zero()) return m;
    std::vector<const std::vector<FreePiece>*> lists;
    for (int col : key.in) {
        auto it = f.pieces.find(col);
        if (it == f.pieces.end() || it->second.empty()) return m;
        lists.push_back(&it->second);
    }
    std::vector<int> pick(n, 0);
    bool more = true;
    while (more) {
        int total = 0;
        for (int t = 0; t < n; ++t) total += (*lists[t])[pick[t]].key.arity();
        if (total <= f.truncation) {
            std::vector<int> cc, fmap;
            std::vector<DgComplex> vflat, flat{oc};
            std::vector<int> gsizes{1};
            for (int t = 0; t < n; ++t) {
                const FreePiece& p = (*lists[t])[pick[t]];
                cc.insert(cc.end(), p.key.in.begin(), p.key.in.end());
                for (int u = 0; u < p.key.arity(); ++u) fmap.push_back(t);
                flat.push_back(o.component(p.key));
                for (int col : p.key.in) {
                    flat.push_back(f.generators.at(col));
                    vflat.push_back(f.generators.at(col));
                }
                gsizes.push_back(1 + p.key.arity());
            }
            CompKey cckey{cc, key.out};
            std::vector<int> tau = stable_sort_perm(cc);
            CompKey rkey{apply_perm(tau, cc), key.out};
            int pi = f.piece_index(rkey);
            if (pi >= 0) {
                // lift the picked pieces back to the big complexes
                std::vector<GradedMap> sel{GradedMap::identity(oc)};
                for (int t = 0; t < n; ++t) {
                    const FreePiece& p = (*lists[t])[pick[t]];
                    sel.push_back(p.coinv.section.compose(
                        f.layout.at(key.in[t]).proj[pick[t]]));
                }
                GradedMap lift = tensor_map_many(sel);
                GradedMap ungroup =
                    signed_permutation_inverse(group_factors(flat, gsizes));
                // bring all operad factors to the front
                std::vector<int> sp(flat.size());
                sp[0] = 0;
                {
                    int fi = 1, vcur = 1 + n;
                    for (int t = 0; t < n; ++t) {
                        sp[fi++] = 1 + t;
                        for (int u = 0; u < (*lists[t])[pick[t]].key.arity();
                             ++u)
                            sp[fi++] = vcur++;
                    }
                }
                GradedMap perm = permute_factors(flat, sp);
                ChainMap gamma =
                    full_composition(o, fmap, cc, key.in, key.out);
                GradedMap glued;
                if (total == 0) {
                    glued = gamma;
                } else {
                    std::vector<DgComplex> rf(flat.size());
                    for (std::size_t a = 0; a < flat.size(); ++a)
                        rf[sp[a]] = flat[a];
                    GradedMap g2 = group_factors(rf, {1 + n, total});
                    std::vector<DgComplex> vs(rf.begin() + 1 + n, rf.end());
                    glued = tensor_map(gamma,
                                       GradedMap::identity(tensor_many(vs)))
                                .compose(g2);
                    std::vector<DgComplex> flat2{o.component(cckey)};
                    flat2.insert(flat2.end(), vs.begin(), vs.end());
                    glued = signed_permutation_inverse(
                                group_factors(flat2, {1, total}))
                                .compose(glued);
                }
                GradedMap norm = diag_action(o, cckey, vflat, tau);
                const FreePiece& rp = f.pieces.at(key.out)[pi];
                GradedMap contrib = f.layout.at(key.out)
                                        .incl[pi]
                                        .compose(rp.coinv.projection)
                                        .compose(norm)
                                        .compose(glued)
                                        .compose(perm)
                                        .compose(ungroup)
                                        .compose(lift);
                m = m + contrib;
            }
        }
        more = false;
        for (int t = n - 1; t >= 0; --t) {
            if (++pick[t] < static_cast<int>(lists[t]->size())) {
                more = true;
                break;
            }
            pick[t] = 0;
        }
    }
    return m;
}

namespace {

// formal complex whose basis is the given span columns; u maps it into x
struct SpanCarrier {
    DgComplex shape;
    GradedMap u;
};

SpanCarrier span_carrier(const DgComplex& x, const std::map<int, Matrix>& spans) {
    SpanCarrier sc;
    sc.shape.ring = x.ring;
    for (const auto& [deg, m] : spans)
        if (m.cols() > 0) sc.shape.ranks[deg] = m.cols();
    sc.u = GradedMap::zero(sc.shape, x);
    for (const auto& [deg, m] : spans)
        if (m.cols() > 0) sc.u.blocks[deg] = m;
    return sc;
}

void add_columns(std::map<int, Matrix>& spans, const CoeffRing& ring, int rows,
                 int deg, const Matrix& cols, bool& changed) {
    if (cols.is_zero()) return;
    auto it = spans.find(deg);
    if (it == spans.end()) {
        Matrix empty(ring, rows, 0);
        spans[deg] = empty.hstack(cols);
        changed = true;
        return;
    }
    if (in_span(it->second, cols)) return;
    it->second = span_basis(it->second.hstack(cols));
    changed = true;
}

Matrix kron_pair(const Matrix& x, const Matrix& y) {
    Matrix m(x.ring(), x.rows() * y.rows(), x.cols() * y.cols());
    for (const auto& [rc1, v1] : x.entries())
        for (const auto& [rc2, v2] : y.entries())
            m.set(rc1.first * y.rows() + rc2.first,
                  rc1.second * y.cols() + rc2.second, v1 * v2);
    return m;
}

// blocks of m ∘ (f_0 (x) ... (x) f_n) for degree-0 factor maps, without
// materializing the tensor complexes (m.source is the tensor of the targets)
std::map<int, Matrix> mul_image_blocks(const GradedMap& m,
                                       const std::vector<GradedMap>& fs) {
    std::vector<DgComplex> src_f, tgt_f;
    for (const auto& f : fs) {
        src_f.push_back(f.source);
        tgt_f.push_back(f.target);
    }
    TensorLayout ls(src_f), lt(tgt_f);
    const CoeffRing& ring = m.source.ring;
    std::map<int, Matrix> out;
    for (const auto& [n, tuples] : ls.tuples) {
        auto mb = m.blocks.find(n);
        if (mb == m.blocks.end() || !ls.total.count(n)) continue;
        Matrix phi(ring, m.source.rank(n), ls.total.at(n));
        for (const auto& degs : tuples) {
            Matrix blk = fs[0].block(degs[0]);
            for (std::size_t t = 1; t < fs.size(); ++t)
                blk = kron_pair(blk, fs[t].block(degs[t]));
            int r0 = lt.offset(n, degs), c0 = ls.offset(n, degs);
            for (const auto& [rc, v] : blk.entries())
                phi.set(r0 + rc.first, c0 + rc.second, v);
        }
        Matrix img = mb->second * phi;
        if (!img.is_zero()) out[n + m.degree] = img;
    }
    return out;
}

}  // namespace

IdealSpans ideal_closure(const TruncatedFreeAlgebra& f, const IdealSpans& gens) {
    const ColoredDgOperad& o = f.operad;
    IdealSpans s;
    for (const auto& [c, per_deg] : gens)
        for (const auto& [deg, m] : per_deg)
            if (!m.is_zero() || m.cols() > 0) s[c][deg] = span_basis(m);
    std::map<CompKey, GradedMap> mul;
    for (const auto& [key, comp] : o.components) {
        if (comp.is_zero() || key.arity() < 1) continue;
        GradedMap m = free_structure_map(f, key);
        if (!m.is_zero()) mul[key] = m;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        // differential closure
        for (auto& [c, per_deg] : s) {
            DgComplex comp = f.component(c);
            std::vector<std::pair<int, Matrix>> adds;
            for (const auto& [deg, m] : per_deg)
                adds.emplace_back(deg + 1, comp.diff(deg) * m);
            for (const auto& [deg, m] : adds)
                add_columns(per_deg, o.ring, comp.rank(deg), deg, m, changed);
        }
        // multiplicative closure
        for (const auto& [key, m] : mul) {
            int n = key.arity();
            for (int slot = 0; slot < n; ++slot) {
                auto it = s.find(key.in[slot]);
                if (it == s.end() || it->second.empty()) continue;
                SpanCarrier sc =
                    span_carrier(f.component(key.in[slot]), it->second);
                if (sc.shape.is_zero()) continue;
                std::vector<GradedMap> fs{
                    GradedMap::identity(o.component(key))};
                for (int t = 0; t < n; ++t)
                    fs.push_back(t == slot
                                     ? sc.u
                                     : GradedMap::identity(
                                           f.component(key.in[t])));
                std::map<int, Matrix> img = mul_image_blocks(m, fs);
                DgComplex tgt = f.component(key.out);
                for (const auto& [deg, blk] : img)
                    add_columns(s[key.out], o.ring, tgt.rank(deg), deg, blk,
                                changed);
            }
        }
    }
    return s;
}

DgComplex AlgebraPresentation::component(int color) const {
    auto it = quotients.find(color);
    return it == quotients.end() ? free_part.component(color)
                                 : it->second.quotient;
}

AlgebraPresentation quotient_algebra(const TruncatedFreeAlgebra& f,
                                     const IdealSpans& ideal) {
    AlgebraPresentation a;
    a.free_part = f;
    a.ideal = ideal;
    for (std::size_t c = 0; c < f.operad.colors.size(); ++c) {
        int cc = static_cast<int>(c);
        DgComplex comp = f.component(cc);
        std::map<int, Matrix> spans;
        auto it = ideal.find(cc);
        if (it != ideal.end()) spans = it->second;
        a.quotients[cc] = quotient_by_subspace(comp, spans);
    }
    // descent audit: multiplying an ideal element lands in the ideal
    for (const auto& [key, comp] : f.operad.components) {
        if (comp.is_zero() || key.arity() < 1) continue;
        GradedMap m = free_structure_map(f, key);
        if (m.is_zero()) continue;
        for (int slot = 0; slot < key.arity(); ++slot) {
            auto it = ideal.find(key.in[slot]);
            if (it == ideal.end() || it->second.empty()) continue;
            SpanCarrier sc = span_carrier(f.component(key.in[slot]), it->second);
            if (sc.shape.is_zero()) continue;
            std::vector<GradedMap> fs{GradedMap::identity(comp)};
            for (int t = 0; t < key.arity(); ++t)
                fs.push_back(t == slot ? sc.u
                                       : GradedMap::identity(
                                             f.component(key.in[t])));
            std::map<int, Matrix> img = mul_image_blocks(m, fs);
            auto out = ideal.find(key.out);
            for (const auto& [deg, blk] : img) {
                if (blk.is_zero()) continue;
                if (out == ideal.end() || !out->second.count(deg) ||
                    !in_span(out->second.at(deg), blk))
                    throw std::invalid_argument(
                        "ideal is not multiplicatively closed at " +
                        key_to_string(key));
            }
        }
    }
    return a;
}

GradedMap presented_structure_map(const AlgebraPresentation& a,
                                  const CompKey& key) {
    const ColoredDgOperad& o = a.free_part.operad;
    GradedMap m = free_structure_map(a.free_part, key);
    std::vector<GradedMap> fs{GradedMap::identity(o.component(key))};
    for (int col : key.in) {
        auto it = a.quotients.find(col);
        if (it == a.quotients.end())
            fs.push_back(GradedMap::identity(a.free_part.component(col)));
        else
            fs.push_back(it->second.section);
    }
    GradedMap lifted = m.compose(tensor_map_many(fs));
    auto out = a.quotients.find(key.out);
    return out == a.quotients.end() ? lifted
                                    : out->second.projection.compose(lifted);
}

GradedMap OperadAlgebra::structure_map(const CompKey& key) const {
    auto it = structure.find(key);
    if (it != structure.end()) return it->second;
    std::vector<DgComplex> srcf{operad.component(key)};
    for (int col : key.in) {
        auto c = carrier.find(col);
        srcf.push_back(c == carrier.end() ? zero_complex(operad.ring)
                                          : c->second);
    }
    auto tgt = carrier.find(key.out);
    return GradedMap::zero(tensor_many(srcf),
                           tgt == carrier.end() ? zero_complex(operad.ring)
                                                : tgt->second);
}

OperadAlgebra algebra_of(const AlgebraPresentation& a) {
    OperadAlgebra alg;
    alg.operad = a.free_part.operad;
    alg.window = a.free_part.truncation;
    for (std::size_t c = 0; c < alg.operad.colors.size(); ++c)
        alg.carrier[static_cast<int>(c)] = a.component(static_cast<int>(c));
    for (const auto& [key, comp] : alg.operad.components) {
        if (comp.is_zero() || key.arity() > alg.window) continue;
        GradedMap m = presented_structure_map(a, key);
        if (!m.is_zero()) alg.structure[key] = m;
    }
    return alg;
}

AxiomReport check_algebra_axioms(const OperadAlgebra& a) {
    const ColoredDgOperad& o = a.operad;
    auto carrier = [&](int c) {
        auto it = a.carrier.find(c);
        return it == a.carrier.end() ? zero_complex(o.ring) : it->second;
    };
    // shapes and chain maps
    for (const auto& [key, m] : a.structure) {
        std::vector<DgComplex> srcf{o.component(key)};
        for (int col : key.in) srcf.push_back(carrier(col));
        if (m.source != tensor_many(srcf) || m.target != carrier(key.out) ||
            m.degree != 0)
            return {false,
                    "structure map of wrong shape at " + key_to_string(key)};
        if (!m.is_chain_map())
            return {false,
                    "structure map not a chain map at " + key_to_string(key)};
    }
    // units
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        int cc = static_cast<int>(c);
        DgComplex ac = carrier(cc);
        if (ac.is_zero()) continue;
        CompKey uk{{cc}, cc};
        GradedMap m = a.structure_map(uk).compose(
            tensor_map(o.unit_map(cc), GradedMap::identity(ac)));
        if (m != GradedMap::identity(ac))
            return {false, "unit law fails at color " + o.colors[c]};
    }
    // equivariance against generators
    for (const auto& [key, comp] : o.components) {
        int n = key.arity();
        if (comp.is_zero() || n > a.window) continue;
        std::vector<DgComplex> flat{comp};
        for (int col : key.in) flat.push_back(carrier(col));
        for (int i = 0; i + 1 < n; ++i) {
            CompKey tgt = key;
            std::swap(tgt.in[i], tgt.in[i + 1]);
            std::vector<int> sp(n + 1);
            sp[0] = 0;
            for (int t = 0; t < n; ++t) sp[1 + t] = 1 + t;
            std::swap(sp[1 + i], sp[2 + i]);
            std::vector<GradedMap> fs{o.act_gen(key, i)};
            for (int t = 0; t < n; ++t) {
                int col = t == i ? key.in[i + 1] : (t == i + 1 ? key.in[i]
                                                              : key.in[t]);
                fs.push_back(GradedMap::identity(carrier(col)));
            }
            GradedMap g =
                tensor_map_many(fs).compose(permute_factors(flat, sp));
            if (a.structure_map(tgt).compose(g) != a.structure_map(key))
                return {false, "equivariance fails at " + key_to_string(key) +
                                   " generator " + std::to_string(i)};
        }
    }
    // associativity within the window
    for (const auto& [xk, xc] : o.components) {
        if (xc.is_zero()) continue;
        int n = xk.arity();
        for (const auto& [yk, yc] : o.components) {
            if (yc.is_zero()) continue;
            int mm = yk.arity();
            if (n + mm - 1 > a.window || n + mm - 1 > o.arity_bound) continue;
            for (int i = 0; i < n; ++i) {
                if (xk.in[i] != yk.out) continue;
                CompKey xy = composed_key(xk, i, yk);
                int ncc = xy.arity();
                std::vector<DgComplex> flat{xc, yc};
                std::vector<DgComplex> avec;
                for (int col : xy.in) {
                    flat.push_back(carrier(col));
                    avec.push_back(carrier(col));
                }
                GradedMap r1 = a.structure_map(xy);
                if (ncc > 0) {
                    std::vector<DgComplex> flat2{o.component(xy)};
                    flat2.insert(flat2.end(), avec.begin(), avec.end());
                    r1 = r1.compose(signed_permutation_inverse(
                                        group_factors(flat2, {1, ncc})))
                             .compose(tensor_map(
                                 o.comp(xk, i, yk),
                                 GradedMap::identity(tensor_many(avec))))
                             .compose(group_factors(flat, {2, ncc}));
                } else {
                    r1 = r1.compose(o.comp(xk, i, yk));
                }
                std::vector<int> sp(flat.size());
                sp[0] = 0;
                sp[1] = 1 + i;
                for (int j = 0; j < ncc; ++j) {
                    if (j < i)
                        sp[2 + j] = 1 + j;
                    else if (j < i + mm)
                        sp[2 + j] = 2 + j;
                    else
                        sp[2 + j] = 2 + j;
                }
                // careful: slots j in [i, i+mm) land after O(Y)
                for (int j = i; j < i + mm; ++j) sp[2 + j] = 2 + i + (j - i);
                for (int j = i + mm; j < ncc; ++j) sp[2 + j] = 2 + j;
                GradedMap perm = permute_factors(flat, sp);
                std::vector<DgComplex> tf(flat.size());
                for (std::size_t u = 0; u < flat.size(); ++u)
                    tf[sp[u]] = flat[u];
                std::vector<int> gs{1};
                for (int j = 0; j < i; ++j) gs.push_back(1);
                gs.push_back(1 + mm);
                for (int j = i + mm; j < ncc; ++j) gs.push_back(1);
                std::vector<GradedMap> mid{GradedMap::identity(xc)};
                for (int j = 0; j < i; ++j)
                    mid.push_back(GradedMap::identity(carrier(xk.in[j])));
                mid.push_back(a.structure_map(yk));
                for (int j = i + 1; j < n; ++j)
                    mid.push_back(GradedMap::identity(carrier(xk.in[j])));
                GradedMap r2 = a.structure_map(xk)
                                   .compose(tensor_map_many(mid))
                                   .compose(group_factors(tf, gs))
                                   .compose(perm);
                if (r1 != r2)
                    return {false, "associativity fails at " +
                                       key_to_string(xk) + " slot " +
                                       std::to_string(i) + " with " +
                                       key_to_string(yk)};
            }
        }
    }
    return {true, ""};
}

OperadAlgebra restrict_along(const OperadMap& f, const OperadAlgebra& b) {
    OperadAlgebra a;
    a.operad = f.source;
    a.window = b.window;
    for (std::size_t c = 0; c < f.source.colors.size(); ++c)
        a.carrier[static_cast<int>(c)] =
            b.structure.empty() && b.carrier.empty()
                ? zero_complex(f.source.ring)
                : [&] {
                      auto it = b.carrier.find(f.color_map[c]);
                      return it == b.carrier.end()
                                 ? zero_complex(f.source.ring)
                                 : it->second;
                  }();
    for (const auto& [key, comp] : f.source.components) {
        if (comp.is_zero() || key.arity() > a.window) continue;
        std::vector<GradedMap> fs{f.block(key)};
        for (int col : key.in)
            fs.push_back(GradedMap::identity(a.carrier.at(col)));
        GradedMap m =
            b.structure_map(f.mapped(key)).compose(tensor_map_many(fs));
        if (!m.is_zero()) a.structure[key] = m;
    }
    return a;
}

OperadMap identity_operad_map(const ColoredDgOperad& o) {
    OperadMap f;
    f.source = o;
    f.target = o;
    f.color_map.resize(o.colors.size());
    std::iota(f.color_map.begin(), f.color_map.end(), 0);
    for (const auto& [key, comp] : o.components)
        f.blocks[key] = GradedMap::identity(comp);
    return f;
}

std::map<int, GradedMap> free_algebra_functor(
    const OperadMap& f, const TruncatedFreeAlgebra& src,
    const TruncatedFreeAlgebra& dst, const std::map<int, GradedMap>& gen) {
    std::map<int, GradedMap> out;
    for (std::size_t d = 0; d < f.source.colors.size(); ++d) {
        int dc = static_cast<int>(d);
        int fd = f.color_map[dc];
        GradedMap total =
            GradedMap::zero(src.component(dc), dst.component(fd));
        auto it = src.pieces.find(dc);
        if (it != src.pieces.end()) {
            for (std::size_t pi = 0; pi < it->second.size(); ++pi) {
                const FreePiece& p = it->second[pi];
                std::vector<int> fc;
                for (int col : p.key.in) fc.push_back(f.color_map[col]);
                std::vector<int> tau = stable_sort_perm(fc);
                CompKey rkey{apply_perm(tau, fc), fd};
                int qi = dst.piece_index(rkey);
                if (qi < 0) continue;
                std::vector<GradedMap> fs{f.block(p.key)};
                std::vector<DgComplex> wflat;
                for (int col : p.key.in) {
                    fs.push_back(gen.at(col));
                    wflat.push_back(gen.at(col).target);
                }
                GradedMap norm =
                    diag_action(f.target, CompKey{fc, fd}, wflat, tau);
                const FreePiece& q = dst.pieces.at(fd)[qi];
                total = total + dst.layout.at(fd)
                                    .incl[qi]
                                    .compose(q.coinv.projection)
                                    .compose(norm)
                                    .compose(tensor_map_many(fs))
                                    .compose(p.coinv.section)
                                    .compose(src.layout.at(dc).proj[pi]);
            }
        }
        out[dc] = total;
    }
    return out;
}

namespace {

// merged generators and the per-color inclusions V_c -> V_c (+) M_c
std::pair<ColorIndexedComplexes, std::map<int, GradedMap>> merge_generators(
    const CoeffRing& ring, const ColorIndexedComplexes& v,
    const ColorIndexedComplexes& m) {
    ColorIndexedComplexes merged;
    std::map<int, GradedMap> incl;
    for (const auto& [c, x] : v) {
        if (x.is_zero()) continue;
        auto it = m.find(c);
        if (it == m.end() || it->second.is_zero()) {
            merged[c] = x;
            incl[c] = GradedMap::identity(x);
        } else {
            DirectSum ds = direct_sum(x, it->second);
            merged[c] = ds.sum;
            incl[c] = ds.incl_a;
        }
    }
    for (const auto& [c, x] : m) {
        if (x.is_zero() || merged.count(c)) continue;
        merged[c] = x;
    }
    return {merged, incl};
}

IdealSpans push_ideal(const std::map<int, GradedMap>& phi, const IdealSpans& ideal) {
    IdealSpans pushed;
    for (const auto& [c, per_deg] : ideal) {
        auto it = phi.find(c);
        if (it == phi.end()) continue;
        for (const auto& [deg, mat] : per_deg) {
            Matrix img = it->second.block(deg) * mat;
            if (!img.is_zero()) pushed[c][deg] = img;
        }
    }
    return pushed;
}

}  // namespace

AlgebraPresentation coproduct_with_free(const AlgebraPresentation& a,
                                        const ColorIndexedComplexes& m,
                                        int truncation) {
    const ColoredDgOperad& o = a.free_part.operad;
    auto [merged, incl] = merge_generators(o.ring, a.free_part.generators, m);
    TruncatedFreeAlgebra big = free_algebra(o, merged, truncation);
    std::map<int, GradedMap> phi = free_algebra_functor(
        identity_operad_map(o), a.free_part, big, incl);
    return quotient_algebra(big, ideal_closure(big, push_ideal(phi, a.ideal)));
}

std::map<int, GradedMap> coproduct_unit(const AlgebraPresentation& a,
                                        const AlgebraPresentation& b,
                                        const ColorIndexedComplexes& m) {
    const ColoredDgOperad& o = a.free_part.operad;
    auto [merged, incl] = merge_generators(o.ring, a.free_part.generators, m);
    std::map<int, GradedMap> phi = free_algebra_functor(
        identity_operad_map(o), a.free_part, b.free_part, incl);
    std::map<int, GradedMap> out;
    for (const auto& [c, f] : phi) {
        GradedMap lifted = f;
        auto qa = a.quotients.find(c);
        if (qa != a.quotients.end()) lifted = lifted.compose(qa->second.section);
        auto qb = b.quotients.find(c);
        if (qb != b.quotients.end())
            lifted = qb->second.projection.compose(lifted);
        out[c] = lifted;
    }
    return out;
}

AlgebraPresentation induce_along(const OperadMap& f,
                                 const AlgebraPresentation& a, int truncation) {
    const ColoredDgOperad& q = f.target;
    // pushed-forward generators: direct sum over the fiber of each color
    ColorIndexedComplexes w;
    std::map<int, MultiSum> sums;
    for (std::size_t d = 0; d < q.colors.size(); ++d) {
        std::vector<DgComplex> parts;
        std::vector<int> srcs;
        for (std::size_t c = 0; c < f.source.colors.size(); ++c) {
            if (f.color_map[c] != static_cast<int>(d)) continue;
            auto it = a.free_part.generators.find(static_cast<int>(c));
            if (it == a.free_part.generators.end() || it->second.is_zero())
                continue;
            parts.push_back(it->second);
            srcs.push_back(static_cast<int>(c));
        }
        if (parts.empty()) continue;
        MultiSum ms = direct_sum_many(parts);
        w[static_cast<int>(d)] = ms.sum;
        sums[static_cast<int>(d)] = ms;
        for (std::size_t u = 0; u < srcs.size(); ++u)
            sums[static_cast<int>(d)].incl[u] = ms.incl[u];
        (void)srcs;
    }
    std::map<int, GradedMap> gen;
    for (std::size_t d = 0; d < q.colors.size(); ++d) {
        std::size_t u = 0;
        for (std::size_t c = 0; c < f.source.colors.size(); ++c) {
            if (f.color_map[c] != static_cast<int>(d)) continue;
            auto it = a.free_part.generators.find(static_cast<int>(c));
            if (it == a.free_part.generators.end() || it->second.is_zero())
                continue;
            gen[static_cast<int>(c)] = sums.at(static_cast<int>(d)).incl[u];
            ++u;
        }
    }
    TruncatedFreeAlgebra big = free_algebra(q, w, truncation);
    std::map<int, GradedMap> phi =
        free_algebra_functor(f, a.free_part, big, gen);
    return quotient_algebra(big, ideal_closure(big, push_ideal(phi, a.ideal)));
}

ProbeVerdict admissibility_probe(const ColoredDgOperad& o,
                                 const AlgebraPresentation& a, int color,
                                 int degree, int truncation) {
    ColorIndexedComplexes m;
    m[color] = cone_of_identity(o.ring, degree);
    AlgebraPresentation b = coproduct_with_free(a, m, truncation);
    std::map<int, GradedMap> unit = coproduct_unit(a, b, m);
    for (const auto& [c, f] : unit) {
        QuasiIsoResult r = is_quasi_iso(f);
        if (!r.ok) {
            std::ostringstream msg;
            msg << "homology defect at color " << o.colors[c];
            if (r.witness_degree) msg << " degree " << *r.witness_degree;
            return {false, msg.str()};
        }
    }
    return {true, ""};
}

SplittingReport ideal_stability_check(const SigmaSplitting& s,
                                      const AlgebraPresentation& a, int color_a,
                                      int degree_d, int truncation) {
    const ColoredDgOperad& o = a.free_part.operad;
    SplittingReport pre = check_splitting(s);
    if (!pre.ok) return {false, "splitting precondition: " + pre.message};

    // A' = A (+) H_a with alpha = projection onto A, h the cone contraction
    DgComplex ha = cone_of_identity(o.ring, degree_d);
    GradedMap hh = GradedMap::zero(ha, ha, -1);
    hh.set_block(degree_d + 1, Matrix::identity(o.ring, 1));
    HomotopyData data;
    std::map<int, GradedMap> inclA;
    GradedMap inclH;
    ColorIndexedComplexes acarr;
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        int cc = static_cast<int>(c);
        DgComplex ac = a.component(cc);
        if (!ac.is_zero()) acarr[cc] = ac;
        if (cc == color_a) {
            DirectSum ds = direct_sum(ac, ha);
            data.V[cc] = ds.sum;
            inclA[cc] = ds.incl_a;
            inclH = ds.incl_b;
            data.alpha[cc] = ds.incl_a.compose(ds.proj_a);
            data.h[cc] = ds.incl_b.compose(hh).compose(ds.proj_b);
        } else if (!ac.is_zero()) {
            data.V[cc] = ac;
            inclA[cc] = GradedMap::identity(ac);
            data.alpha[cc] = GradedMap::identity(ac);
            data.h[cc] = GradedMap::zero(ac, ac, -1);
        }
    }
    std::map<CompKey, GradedMap> bigh =
        free_algebra_homotopy(s, data, truncation);
    TruncatedFreeAlgebra fp = free_algebra(o, data.V, truncation);

    // the ideal I = ker(F(A) -> A) through the counit
    TruncatedFreeAlgebra fa = free_algebra(o, acarr, truncation);
    IdealSpans kernels;
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        int cc = static_cast<int>(c);
        DgComplex fac = fa.component(cc);
        if (fac.is_zero()) continue;
        GradedMap eps = GradedMap::zero(fac, a.component(cc));
        auto it = fa.pieces.find(cc);
        if (it != fa.pieces.end())
            for (std::size_t i = 0; i < it->second.size(); ++i) {
                const FreePiece& p = it->second[i];
                eps = eps + presented_structure_map(a, p.key)
                                .compose(p.coinv.section)
                                .compose(fa.layout.at(cc).proj[i]);
            }
        for (const auto& [deg, rk] : fac.ranks) {
            Matrix ker = kernel_basis(eps.block(deg));
            if (ker.cols() > 0) kernels[cc][deg] = ker;
        }
    }
    std::map<int, GradedMap> phi = free_algebra_functor(
        identity_operad_map(o), fa, fp, inclA);
    IdealSpans seeds = push_ideal(phi, kernels);
    IdealSpans big_ideal = ideal_closure(fp, seeds);

    // H on the truncated free-algebra components
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        int cc = static_cast<int>(c);
        DgComplex comp = fp.component(cc);
        if (comp.is_zero()) continue;
        GradedMap hc = GradedMap::zero(comp, comp, -1);
        auto it = fp.pieces.find(cc);
        if (it != fp.pieces.end())
            for (std::size_t i = 0; i < it->second.size(); ++i) {
                const FreePiece& p = it->second[i];
                auto hk = bigh.find(p.key);
                if (hk == bigh.end()) continue;
                hc = hc + fp.layout.at(cc)
                              .incl[i]
                              .compose(p.coinv.projection)
                              .compose(hk->second)
                              .compose(p.coinv.section)
                              .compose(fp.layout.at(cc).proj[i]);
            }
        auto js = big_ideal.find(cc);
        if (js == big_ideal.end()) continue;
        for (const auto& [deg, span] : js->second) {
            Matrix img = hc.block(deg) * span;
            if (img.is_zero()) continue;
            auto lower = js->second.find(deg - 1);
            if (lower == js->second.end() || !in_span(lower->second, img))
                return {false, "homotopy escapes the ideal at color " +
                                   o.colors[c] + " degree " +
                                   std::to_string(deg)};
        }
    }

    // closed form on monomial generators: F(h)(u.m (x) a (x) x) =
    // sum_theta t_theta(u).m (x) a (x) x with h at the min slot
    for (const auto& [ukey, ucomp] : o.components) {
        if (ucomp.is_zero() || ukey.arity() < 2) continue;
        int n = ukey.arity() - 1;
        bool tail = true;
        for (int t = 1; t <= n; ++t)
            if (ukey.in[t] != color_a) tail = false;
        if (!tail) continue;
        int c0 = ukey.in[0];
        for (const auto& [mkey, mcomp] : o.components) {
            if (mcomp.is_zero() || mkey.out != c0) continue;
            int nj = mkey.arity();
            if (nj + n > truncation) continue;
            CompKey zkey = composed_key(ukey, 0, mkey);
            auto hz = bigh.find(zkey);
            if (hz == bigh.end()) continue;
            bool ok = true;
            std::vector<DgComplex> rest, restp;
            for (int j = 0; j < nj && ok; ++j) {
                DgComplex adj = a.component(mkey.in[j]);
                if (adj.is_zero()) ok = false;
                rest.push_back(adj);
                restp.push_back(data.V.at(mkey.in[j]));
            }
            if (!ok) continue;
            for (int k = 0; k < n; ++k) {
                rest.push_back(ha);
                restp.push_back(data.V.at(color_a));
            }
            int tot = nj + n;
            GradedMap cmap = o.comp(ukey, 0, mkey);
            std::vector<DgComplex> flat{ucomp, mcomp};
            flat.insert(flat.end(), restp.begin(), restp.end());
            std::vector<DgComplex> flat2{o.component(zkey)};
            flat2.insert(flat2.end(), restp.begin(), restp.end());
            GradedMap glue =
                signed_permutation_inverse(group_factors(flat2, {1, tot}))
                    .compose(tensor_map(
                        cmap, GradedMap::identity(tensor_many(restp))))
                    .compose(group_factors(flat, {2, tot}));
            std::vector<GradedMap> rs{GradedMap::identity(ucomp),
                                      GradedMap::identity(mcomp)};
            for (int j = 0; j < nj; ++j) rs.push_back(inclA.at(mkey.in[j]));
            for (int k = 0; k < n; ++k) rs.push_back(inclH);
            GradedMap lhs = hz->second.compose(glue).compose(
                tensor_map_many(rs));
            GradedMap rhs = GradedMap::zero(lhs.source, lhs.target, -1);
            std::vector<std::vector<int>> perms = permutations_lex(1 + n);
            for (std::size_t pi = 0; pi < perms.size(); ++pi) {
                ChainMap tth = s.t_theta(ukey, static_cast<int>(pi));
                if (tth.is_zero()) continue;
                int kmin = -1;
                for (int u = 0; u <= n && kmin < 0; ++u)
                    if (perms[pi][u] >= 1) kmin = perms[pi][u] - 1;
                std::vector<GradedMap> fs{tth, GradedMap::identity(mcomp)};
                for (int j = 0; j < nj; ++j) fs.push_back(inclA.at(mkey.in[j]));
                for (int k = 0; k < n; ++k)
                    fs.push_back(k == kmin ? inclH.compose(hh) : inclH);
                rhs = rhs + glue.compose(tensor_map_many(fs));
            }
            if (lhs != rhs)
                return {false, "(FJ) closed form fails at " +
                                   key_to_string(ukey) + " with inner " +
                                   key_to_string(mkey)};
        }
    }
    return {true, ""};
}

AxiomReport homotopy_prop_algebra_check(const ColoredDgOperad& o,
                                        const LaxMonoidalData& a) {
    auto object = [&](const std::vector<int>& x) {
        auto it = a.objects.find(x);
        return it == a.objects.end() ? zero_complex(o.ring) : it->second;
    };
    for (const auto& [pr, f] : a.comparison) {
        const auto& [x, y] = pr;
        std::vector<int> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        std::string name = "(" + std::to_string(x.size()) + "," +
                           std::to_string(y.size()) + ")";
        if (f.source != tensor(object(x), object(y)) ||
            f.target != object(xy) || f.degree != 0)
            return {false, "comparison map of wrong shape at " + name};
        if (!f.is_chain_map())
            return {false, "comparison map not a chain map at " + name};
        QuasiIsoResult r = is_quasi_iso(f);
        if (!r.ok)
            return {false, "comparison map not a quasi-isomorphism at " + name};
    }
    return {true, ""};
}

}  // namespace opforge
