#include "opforge/envelope.hpp"

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

void ordered_tuples(int ncolors, int len, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (len == 0) {
        out.push_back(cur);
        return;
    }
    for (int c = 0; c < ncolors; ++c) {
        cur.push_back(c);
        ordered_tuples(ncolors, len - 1, cur, out);
        cur.pop_back();
    }
}

DgComplex zero_complex(const CoeffRing& ring) {
    DgComplex z;
    z.ring = ring;
    return z;
}

// diagonal action fixing the first `offset` inputs of O(key); tau permutes
// the trailing inputs together with the matching tensor factors vf.
GradedMap offset_diag(const ColoredDgOperad& o, const CompKey& key, int offset,
                      const std::vector<DgComplex>& vf,
                      const std::vector<int>& tau) {
    int nt = static_cast<int>(vf.size());
    std::vector<int> sigma(offset + nt);
    std::iota(sigma.begin(), sigma.begin() + offset, 0);
    for (int t = 0; t < nt; ++t) sigma[offset + t] = offset + tau[t];
    std::vector<DgComplex> flat{o.component(key)};
    flat.insert(flat.end(), vf.begin(), vf.end());
    std::vector<int> sp(1 + nt);
    sp[0] = 0;
    for (int t = 0; t < nt; ++t) sp[1 + t] = 1 + tau[t];
    GradedMap p = permute_factors(flat, sp);
    std::vector<GradedMap> fs{o.act(key, sigma)};
    std::vector<int> inv(nt);
    for (int t = 0; t < nt; ++t) inv[tau[t]] = t;
    for (int t = 0; t < nt; ++t) fs.push_back(GradedMap::identity(vf[inv[t]]));
    return tensor_map_many(fs).compose(p);
}

GradedMap ungroup(const std::vector<DgComplex>& flat,
                  const std::vector<int>& sizes) {
    return signed_permutation_inverse(group_factors(flat, sizes));
}

void append_map_blocks(std::map<int, Matrix>& spans, const GradedMap& m) {
    std::vector<std::pair<int, Matrix>> blocks(m.blocks.begin(),
                                               m.blocks.end());
    for (const auto& [deg, blk] : blocks) {
        if (blk.rows() == 0 || blk.cols() == 0 || blk.is_zero()) continue;
        auto it = spans.find(deg);
        if (it == spans.end())
            spans[deg] = blk;
        else
            it->second = it->second.hstack(blk);
    }
}

// Rebuild the section of a quotient of a direct sum so that representatives
// are supported on the earliest summands possible; keeps compositions and
// actions of low absorbed arity away from the truncation boundary.
void minimize_section(QuotientComplex& q) {
    const CoeffRing& ring = q.quotient.ring;
    for (const auto& [deg, rk] : q.quotient.ranks) {
        if (rk == 0) continue;
        Matrix p = q.projection.block(deg);
        std::vector<int> chosen;
        Matrix acc(ring, rk, 0);
        for (int j = 0; j < p.cols() && static_cast<int>(chosen.size()) < rk;
             ++j) {
            Matrix cand = acc.hstack(p.columns({j}));
            if (rank(cand) > static_cast<int>(chosen.size())) {
                chosen.push_back(j);
                acc = cand;
            }
        }
        if (static_cast<int>(chosen.size()) < rk) continue;
        auto x = solve(acc, Matrix::identity(ring, rk));
        if (!x) continue;  // keep the default section, e.g. over Z
        Matrix padded(ring, p.cols(), rk);
        for (int r = 0; r < rk; ++r)
            for (int c = 0; c < rk; ++c) padded.set(chosen[r], c, x->get(r, c));
        q.section.set_block(deg, padded);
    }
}

int find_piece(const EnvComponent& part, const std::vector<int>& absorbed) {
    for (std::size_t p = 0; p < part.pieces.size(); ++p)
        if (part.pieces[p].absorbed == absorbed) return static_cast<int>(p);
    return -1;
}

std::vector<int> ones(int n) { return std::vector<int>(n, 1); }

}  // namespace

GradedMap EnvelopingOperad::piece_projection(const CompKey& key,
                                             int piece) const {
    const EnvComponent& p = parts.at(key);
    return p.rel.projection.compose(p.layout.incl[piece])
        .compose(p.pieces[piece].coinv.projection);
}

GradedMap EnvelopingOperad::piece_section(const CompKey& key, int piece) const {
    const EnvComponent& p = parts.at(key);
    return p.pieces[piece].coinv.section.compose(p.layout.proj[piece])
        .compose(p.rel.section);
}

namespace {

void build_env_component(EnvelopingOperad& e, const ColoredDgOperad& o,
                         const AlgebraPresentation& a, const CompKey& key,
                         const std::vector<int>& acolors) {
    int nf = key.arity();
    EnvComponent part;
    for (int np = 0; np + nf <= o.arity_bound; ++np) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        sorted_tuples(acolors, np, 0, cur, tuples);
        for (const auto& cp : tuples) {
            std::vector<int> fullin = key.in;
            fullin.insert(fullin.end(), cp.begin(), cp.end());
            CompKey fullkey{fullin, key.out};
            DgComplex oc = o.component(fullkey);
            if (oc.is_zero()) continue;
            std::vector<DgComplex> vf;
            for (int col : cp) vf.push_back(a.component(col));
            std::vector<DgComplex> flat{oc};
            flat.insert(flat.end(), vf.begin(), vf.end());
            DgComplex big = tensor_many(flat);
            if (big.is_zero()) continue;
            std::map<int, Matrix> spans;
            for (int i = 0; i + 1 < np; ++i) {
                if (cp[i] != cp[i + 1]) continue;
                std::vector<int> si(np);
                std::iota(si.begin(), si.end(), 0);
                std::swap(si[i], si[i + 1]);
                GradedMap sub = offset_diag(o, fullkey, nf, vf, si) -
                                GradedMap::identity(big);
                append_map_blocks(spans, sub);
            }
            part.pieces.push_back(
                EnvPiece{cp, big, quotient_by_subspace(big, spans)});
        }
    }
    if (part.pieces.empty()) return;
    std::vector<DgComplex> qs;
    for (const auto& p : part.pieces) qs.push_back(p.coinv.quotient);
    part.layout = direct_sum_many(qs);

    // single-slot absorption relations: composing an operation into an
    // absorbed slot agrees with multiplying inside A
    std::map<int, Matrix> rel;
    for (std::size_t pidx = 0; pidx < part.pieces.size(); ++pidx) {
        const EnvPiece& piece = part.pieces[pidx];
        int np = static_cast<int>(piece.absorbed.size());
        std::vector<int> fullin = key.in;
        fullin.insert(fullin.end(), piece.absorbed.begin(),
                      piece.absorbed.end());
        CompKey fullkey{fullin, key.out};
        DgComplex oc = o.component(fullkey);
        for (int s = 0; s < np; ++s) {
            for (const auto& [mkey, mcomp] : o.components) {
                if (mcomp.is_zero() || mkey.out != piece.absorbed[s]) continue;
                int r = mkey.arity();
                std::vector<DgComplex> afpre, afm, afpost;
                bool zero = false;
                for (int j = 0; j < s; ++j)
                    afpre.push_back(a.component(piece.absorbed[j]));
                for (int col : mkey.in) {
                    afm.push_back(a.component(col));
                    if (afm.back().is_zero()) zero = true;
                }
                for (int j = s + 1; j < np; ++j)
                    afpost.push_back(a.component(piece.absorbed[j]));
                if (zero) continue;
                std::vector<DgComplex> flat{oc, mcomp};
                flat.insert(flat.end(), afpre.begin(), afpre.end());
                flat.insert(flat.end(), afm.begin(), afm.end());
                flat.insert(flat.end(), afpost.begin(), afpost.end());
                DgComplex src = tensor_many(flat);
                if (src.is_zero()) continue;

                // route 2: multiply inside the absorbed slot
                int post = np - 1 - s;
                std::vector<int> sp(2 + s + r + post);
                sp[0] = 0;
                sp[1] = 1 + s;
                for (int j = 0; j < s; ++j) sp[2 + j] = 1 + j;
                for (int j = 0; j < r; ++j) sp[2 + s + j] = 2 + s + j;
                for (int j = 0; j < post; ++j)
                    sp[2 + s + r + j] = 2 + s + r + j;
                std::vector<DgComplex> pf{oc};
                pf.insert(pf.end(), afpre.begin(), afpre.end());
                pf.push_back(mcomp);
                pf.insert(pf.end(), afm.begin(), afm.end());
                pf.insert(pf.end(), afpost.begin(), afpost.end());
                std::vector<int> sizes{1};
                for (int j = 0; j < s; ++j) sizes.push_back(1);
                sizes.push_back(1 + r);
                for (int j = 0; j < post; ++j) sizes.push_back(1);
                GradedMap mu = presented_structure_map(a, mkey);
                std::vector<GradedMap> fs2{GradedMap::identity(oc)};
                for (const auto& x : afpre)
                    fs2.push_back(GradedMap::identity(x));
                fs2.push_back(mu);
                for (const auto& x : afpost)
                    fs2.push_back(GradedMap::identity(x));
                GradedMap route2 =
                    part.layout.incl[pidx]
                        .compose(piece.coinv.projection)
                        .compose(tensor_map_many(fs2))
                        .compose(group_factors(pf, sizes))
                        .compose(permute_factors(flat, sp));

                // route 1: compose into the operad factor. Relations whose
                // composed side overflows the arity bound are not imposed:
                // they live beyond the representable window.
                GradedMap route1 = GradedMap::zero(src, part.layout.sum);
                std::vector<int> c2raw;
                for (int j = 0; j < s; ++j) c2raw.push_back(piece.absorbed[j]);
                c2raw.insert(c2raw.end(), mkey.in.begin(), mkey.in.end());
                for (int j = s + 1; j < np; ++j)
                    c2raw.push_back(piece.absorbed[j]);
                int ta = static_cast<int>(c2raw.size());
                if (nf + ta > o.arity_bound) continue;
                {
                    ChainMap cm = o.comp(fullkey, nf + s, mkey);
                    std::vector<int> tau = stable_sort_perm(c2raw);
                    std::vector<int> rep = apply_perm(tau, c2raw);
                    int pj = find_piece(part, rep);
                    if (pj >= 0 && !cm.target.is_zero()) {
                        std::vector<GradedMap> fs1{cm};
                        std::vector<DgComplex> vf2;
                        for (int col : c2raw) {
                            vf2.push_back(a.component(col));
                            fs1.push_back(GradedMap::identity(vf2.back()));
                        }
                        std::vector<int> gsz{2};
                        for (int j = 0; j < ta; ++j) gsz.push_back(1);
                        std::vector<int> c2full = key.in;
                        c2full.insert(c2full.end(), c2raw.begin(), c2raw.end());
                        GradedMap norm = offset_diag(
                            o, CompKey{c2full, key.out}, nf, vf2, tau);
                        route1 = part.layout.incl[pj]
                                     .compose(part.pieces[pj].coinv.projection)
                                     .compose(norm)
                                     .compose(tensor_map_many(fs1))
                                     .compose(group_factors(flat, gsz));
                    }
                }
                append_map_blocks(rel, route1 - route2);
            }
        }
    }
    part.rel = quotient_by_subspace(part.layout.sum, rel);
    minimize_section(part.rel);
    if (!part.rel.quotient.is_zero())
        e.env.set_component(key, part.rel.quotient);
    e.parts[key] = std::move(part);
}

}  // namespace

EnvelopingOperad enveloping_operad(const ColoredDgOperad& o,
                                   const AlgebraPresentation& a,
                                   int truncation) {
    if (truncation > o.arity_bound)
        throw ArityOverflow("enveloping truncation exceeds the arity bound");
    EnvelopingOperad e;
    e.base = o;
    e.algebra = a;
    e.truncation = truncation;
    e.env.ring = o.ring;
    e.env.colors = o.colors;
    e.env.arity_bound = truncation;
    int ncol = static_cast<int>(o.colors.size());
    std::vector<int> acolors;
    for (int c = 0; c < ncol; ++c)
        if (!a.component(c).is_zero()) acolors.push_back(c);
    for (int len = 0; len <= truncation; ++len) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        ordered_tuples(ncol, len, cur, tuples);
        for (const auto& c : tuples)
            for (int d = 0; d < ncol; ++d)
                build_env_component(e, o, a, CompKey{c, d}, acolors);
    }

    // units
    for (const auto& [c, col] : o.units) {
        CompKey k1{{c}, c};
        auto it = e.parts.find(k1);
        if (it == e.parts.end() || e.env.component(k1).is_zero()) continue;
        int pi = find_piece(it->second, {});
        if (pi < 0) continue;
        Matrix u = e.piece_projection(k1, pi).block(0) * col;
        e.env.units[c] = u;
    }

    // symmetric action, generated by adjacent transpositions on free slots
    for (const auto& [key, part] : e.parts) {
        if (key.arity() < 2 || e.env.component(key).is_zero()) continue;
        for (int i = 0; i + 1 < key.arity(); ++i) {
            CompKey kt = key;
            std::swap(kt.in[i], kt.in[i + 1]);
            if (e.env.component(kt).is_zero()) continue;
            GradedMap m = GradedMap::zero(e.env.component(key),
                                          e.env.component(kt));
            for (std::size_t pi = 0; pi < part.pieces.size(); ++pi) {
                const EnvPiece& piece = part.pieces[pi];
                int pj = find_piece(e.parts.at(kt), piece.absorbed);
                if (pj < 0) continue;
                std::vector<int> fullin = key.in;
                fullin.insert(fullin.end(), piece.absorbed.begin(),
                              piece.absorbed.end());
                std::vector<GradedMap> fs{
                    o.act_gen(CompKey{fullin, key.out}, i)};
                for (int col : piece.absorbed)
                    fs.push_back(GradedMap::identity(a.component(col)));
                m = m + e.piece_projection(kt, pj)
                            .compose(tensor_map_many(fs))
                            .compose(e.piece_section(key, pi));
            }
            e.env.set_sym(key, i, m);
        }
    }

    // partial compositions, including nullary absorption
    for (const auto& [okey, opart] : e.parts) {
        if (e.env.component(okey).is_zero()) continue;
        int no = okey.arity();
        for (int i = 0; i < no; ++i) {
            for (const auto& [ikey, ipart] : e.parts) {
                if (ikey.out != okey.in[i]) continue;
                if (e.env.component(ikey).is_zero()) continue;
                CompKey ck = composed_key(okey, i, ikey);
                if (ck.arity() > truncation) continue;
                auto ckit = e.parts.find(ck);
                if (ckit == e.parts.end() ||
                    e.env.component(ck).is_zero())
                    continue;
                int ni = ikey.arity();
                int nfree_t = no - 1 + ni;
                GradedMap sum = GradedMap::zero(
                    tensor(e.env.component(okey), e.env.component(ikey)),
                    e.env.component(ck));
                for (std::size_t pi = 0; pi < opart.pieces.size(); ++pi) {
                    const EnvPiece& po = opart.pieces[pi];
                    int np = static_cast<int>(po.absorbed.size());
                    std::vector<int> fullo = okey.in;
                    fullo.insert(fullo.end(), po.absorbed.begin(),
                                 po.absorbed.end());
                    CompKey fullouter{fullo, okey.out};
                    for (std::size_t qi = 0; qi < ipart.pieces.size(); ++qi) {
                        const EnvPiece& pn = ipart.pieces[qi];
                        int mp = static_cast<int>(pn.absorbed.size());
                        if (nfree_t + mp + np > o.arity_bound) continue;
                        std::vector<int> fulli = ikey.in;
                        fulli.insert(fulli.end(), pn.absorbed.begin(),
                                     pn.absorbed.end());
                        CompKey fullinner{fulli, ikey.out};
                        ChainMap cm = o.comp(fullouter, i, fullinner);
                        if (cm.target.is_zero()) continue;
                        std::vector<int> epcp = pn.absorbed;
                        epcp.insert(epcp.end(), po.absorbed.begin(),
                                    po.absorbed.end());
                        std::vector<int> tau = stable_sort_perm(epcp);
                        std::vector<int> rep = apply_perm(tau, epcp);
                        int pj = find_piece(ckit->second, rep);
                        if (pj < 0) continue;
                        // lift both factors and interleave
                        std::vector<DgComplex> aep, acp;
                        for (int col : pn.absorbed)
                            aep.push_back(a.component(col));
                        for (int col : po.absorbed)
                            acp.push_back(a.component(col));
                        std::vector<DgComplex> flatsrc{o.component(fullouter)};
                        flatsrc.insert(flatsrc.end(), acp.begin(), acp.end());
                        flatsrc.push_back(o.component(fullinner));
                        flatsrc.insert(flatsrc.end(), aep.begin(), aep.end());
                        GradedMap lift =
                            ungroup(flatsrc, {1 + np, 1 + mp})
                                .compose(tensor_map(
                                    e.piece_section(okey,
                                                    static_cast<int>(pi)),
                                    e.piece_section(ikey,
                                                    static_cast<int>(qi))));
                        std::vector<int> sp(2 + np + mp);
                        sp[0] = 0;
                        for (int j = 0; j < np; ++j) sp[1 + j] = 2 + mp + j;
                        sp[1 + np] = 1;
                        for (int j = 0; j < mp; ++j) sp[2 + np + j] = 2 + j;
                        GradedMap perm = permute_factors(flatsrc, sp);
                        // glue the operad factors
                        std::vector<GradedMap> fsg{cm};
                        std::vector<DgComplex> flat2{o.component(fullouter),
                                                     o.component(fullinner)};
                        for (const auto& x : aep) {
                            flat2.push_back(x);
                            fsg.push_back(GradedMap::identity(x));
                        }
                        for (const auto& x : acp) {
                            flat2.push_back(x);
                            fsg.push_back(GradedMap::identity(x));
                        }
                        std::vector<int> gsz{2};
                        for (int j = 0; j < mp + np; ++j) gsz.push_back(1);
                        GradedMap core = tensor_map_many(fsg).compose(
                            group_factors(flat2, gsz));
                        // move absorbed slots to the tail, then sort them
                        CompKey composedfull =
                            composed_key(fullouter, i, fullinner);
                        int total = nfree_t + mp + np;
                        std::vector<int> sigma0(total);
                        for (int j = 0; j < i + ni; ++j) sigma0[j] = j;
                        for (int j = 0; j < mp; ++j)
                            sigma0[i + ni + j] = nfree_t + j;
                        for (int j = 0; j < no - 1 - i; ++j)
                            sigma0[i + ni + mp + j] = i + ni + j;
                        for (int j = 0; j < np; ++j)
                            sigma0[i + ni + mp + (no - 1 - i) + j] =
                                nfree_t + mp + j;
                        GradedMap reorder = o.act(composedfull, sigma0);
                        std::vector<GradedMap> fsr{reorder};
                        std::vector<DgComplex> vfraw;
                        for (const auto& x : aep) {
                            vfraw.push_back(x);
                            fsr.push_back(GradedMap::identity(x));
                        }
                        for (const auto& x : acp) {
                            vfraw.push_back(x);
                            fsr.push_back(GradedMap::identity(x));
                        }
                        std::vector<int> tailin = ck.in;
                        tailin.insert(tailin.end(), epcp.begin(), epcp.end());
                        GradedMap norm = offset_diag(
                            o, CompKey{tailin, ck.out}, nfree_t, vfraw, tau);
                        sum = sum + e.piece_projection(ck, pj)
                                        .compose(norm)
                                        .compose(tensor_map_many(fsr))
                                        .compose(core)
                                        .compose(perm)
                                        .compose(lift);
                    }
                }
                if (!sum.is_zero()) e.env.set_comp(okey, i, ikey, sum);
            }
        }
    }
    return e;
}

// --- the enveloping category -------------------------------------------------

DgComplex EnvelopingCategory::hom(int x, int y) const {
    return data.env.component(CompKey{{x}, y});
}

GradedMap EnvelopingCategory::compose_map(int x, int y, int z) const {
    return data.env.comp(CompKey{{y}, z}, 0, CompKey{{x}, y});
}

Matrix EnvelopingCategory::unit(int x) const {
    auto it = data.env.units.find(x);
    if (it != data.env.units.end()) return it->second;
    return Matrix(data.env.ring, hom(x, x).rank(0), 1);
}

EnvelopingCategory enveloping_category(const ColoredDgOperad& o,
                                       const AlgebraPresentation& a,
                                       int truncation) {
    return EnvelopingCategory{enveloping_operad(o, a, truncation)};
}

// --- modules -------------------------------------------------------------------

GradedMap ModuleOverAlgebra::action_map(const CompKey& key) const {
    auto it = action.find(key);
    if (it != action.end()) return it->second;
    std::vector<DgComplex> srcf{operad.component(key)};
    int n = key.arity();
    for (int t = 0; t + 1 < n; ++t) srcf.push_back(algebra.component(key.in[t]));
    auto mx = carriers.find(key.in[n - 1]);
    srcf.push_back(mx == carriers.end() ? zero_complex(operad.ring)
                                        : mx->second);
    auto my = carriers.find(key.out);
    return GradedMap::zero(tensor_many(srcf),
                           my == carriers.end() ? zero_complex(operad.ring)
                                                : my->second);
}

ModuleOverAlgebra regular_module(const AlgebraPresentation& a, int window) {
    ModuleOverAlgebra m;
    m.operad = a.free_part.operad;
    m.algebra = a;
    m.window = window;
    for (std::size_t c = 0; c < m.operad.colors.size(); ++c) {
        DgComplex ac = a.component(static_cast<int>(c));
        if (!ac.is_zero()) m.carriers[static_cast<int>(c)] = ac;
    }
    for (const auto& [key, comp] : m.operad.components) {
        if (comp.is_zero() || key.arity() < 1 || key.arity() > window) continue;
        GradedMap g = presented_structure_map(a, key);
        if (!g.is_zero()) m.action[key] = g;
    }
    return m;
}

AxiomReport check_module_axioms(const ModuleOverAlgebra& m) {
    const ColoredDgOperad& o = m.operad;
    ColoredDgOperad mo = module_operad(o);
    OperadAlgebra alg;
    alg.operad = mo;
    alg.window = m.window;
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        int cc = static_cast<int>(c);
        alg.carrier[mo_color(cc, false)] = m.algebra.component(cc);
        auto it = m.carriers.find(cc);
        alg.carrier[mo_color(cc, true)] =
            it == m.carriers.end() ? zero_complex(o.ring) : it->second;
    }
    for (const auto& [mokey, comp] : mo.components) {
        int n = mokey.arity();
        if (comp.is_zero() || n > m.window) continue;
        std::vector<int> si;
        int p = -1;
        for (int t = 0; t < n; ++t) {
            si.push_back(mokey.in[t] / 2);
            if (mokey.in[t] % 2 != 0) p = t;
        }
        int so = mokey.out / 2;
        CompKey base{si, so};
        GradedMap g;
        if (mokey.out % 2 == 0) {
            g = presented_structure_map(m.algebra, base);
        } else if (p == n - 1) {
            g = m.action_map(base);
        } else {
            // derive the action at slot p from the last-slot table
            std::vector<int> sigma(n);
            for (int t = 0; t < n; ++t)
                sigma[t] = t < p ? t : (t == p ? n - 1 : t - 1);
            std::vector<DgComplex> vf;
            for (int t = 0; t < n; ++t)
                vf.push_back(t == p ? (m.carriers.count(si[t])
                                           ? m.carriers.at(si[t])
                                           : zero_complex(o.ring))
                                    : m.algebra.component(si[t]));
            GradedMap base2 =
                m.action_map(CompKey{apply_perm(sigma, si), so});
            g = base2.compose(offset_diag(o, base, 0, vf, sigma));
        }
        if (!g.is_zero()) alg.structure[mokey] = g;
    }
    return check_algebra_axioms(alg);
}

CategoryRepresentation module_to_representation(const EnvelopingOperad& e,
                                                const ModuleOverAlgebra& m) {
    const ColoredDgOperad& o = e.base;
    CategoryRepresentation r;
    r.carriers = m.carriers;
    int ncol = static_cast<int>(o.colors.size());
    for (int x = 0; x < ncol; ++x) {
        for (int y = 0; y < ncol; ++y) {
            CompKey hk{{x}, y};
            DgComplex hom = e.env.component(hk);
            DgComplex mx = m.carriers.count(x) ? m.carriers.at(x)
                                               : zero_complex(o.ring);
            DgComplex my = m.carriers.count(y) ? m.carriers.at(y)
                                               : zero_complex(o.ring);
            GradedMap rho = GradedMap::zero(tensor(hom, mx), my);
            auto it = e.parts.find(hk);
            if (!hom.is_zero() && !mx.is_zero() && it != e.parts.end()) {
                for (std::size_t pi = 0; pi < it->second.pieces.size(); ++pi) {
                    const EnvPiece& piece = it->second.pieces[pi];
                    int np = static_cast<int>(piece.absorbed.size());
                    std::vector<int> fullin{x};
                    fullin.insert(fullin.end(), piece.absorbed.begin(),
                                  piece.absorbed.end());
                    CompKey fullkey{fullin, y};
                    // module slot to the back
                    std::vector<int> sigma(1 + np);
                    sigma[0] = np;
                    for (int j = 0; j < np; ++j) sigma[1 + j] = j;
                    std::vector<GradedMap> fs{o.act(fullkey, sigma)};
                    std::vector<DgComplex> flat{o.component(fullkey)};
                    for (int col : piece.absorbed) {
                        flat.push_back(e.algebra.component(col));
                        fs.push_back(GradedMap::identity(flat.back()));
                    }
                    flat.push_back(mx);
                    fs.push_back(GradedMap::identity(mx));
                    std::vector<int> key2 = piece.absorbed;
                    key2.push_back(x);
                    GradedMap lift =
                        ungroup(flat, {1 + np, 1})
                            .compose(tensor_map(
                                e.piece_section(hk, static_cast<int>(pi)),
                                GradedMap::identity(mx)));
                    rho = rho + m.action_map(CompKey{key2, y})
                                    .compose(tensor_map_many(fs))
                                    .compose(lift);
                }
            }
            r.rho[{x, y}] = rho;
        }
    }
    return r;
}

ModuleOverAlgebra representation_to_module(const EnvelopingOperad& e,
                                           const CategoryRepresentation& r,
                                           int window) {
    const ColoredDgOperad& o = e.base;
    ModuleOverAlgebra m;
    m.operad = o;
    m.algebra = e.algebra;
    m.carriers = r.carriers;
    m.window = window;
    for (const auto& [kk, comp] : o.components) {
        int n = kk.arity();
        if (comp.is_zero() || n < 1 || n > window) continue;
        int x = kk.in[n - 1];
        int y = kk.out;
        if (!r.carriers.count(x) || r.carriers.at(x).is_zero()) continue;
        auto rit = r.rho.find({x, y});
        if (rit == r.rho.end() || rit->second.is_zero()) continue;
        CompKey hk{{x}, y};
        auto pit = e.parts.find(hk);
        if (pit == e.parts.end() || e.env.component(hk).is_zero()) continue;
        std::vector<int> cc(kk.in.begin(), kk.in.end() - 1);
        std::vector<int> tau = stable_sort_perm(cc);
        int pj = find_piece(pit->second, apply_perm(tau, cc));
        if (pj < 0) continue;
        // module slot to the front
        std::vector<int> sigma2(n);
        for (int t = 0; t + 1 < n; ++t) sigma2[t] = t + 1;
        sigma2[n - 1] = 0;
        std::vector<DgComplex> vfa;
        for (int col : cc) vfa.push_back(e.algebra.component(col));
        std::vector<GradedMap> fs{o.act(kk, sigma2)};
        for (const auto& v : vfa) fs.push_back(GradedMap::identity(v));
        std::vector<int> key2{x};
        key2.insert(key2.end(), cc.begin(), cc.end());
        GradedMap norm = offset_diag(o, CompKey{key2, y}, 1, vfa, tau);
        GradedMap p = e.piece_projection(hk, pj)
                          .compose(norm)
                          .compose(tensor_map_many(fs));
        std::vector<DgComplex> flat{o.component(kk)};
        for (const auto& v : vfa) flat.push_back(v);
        flat.push_back(r.carriers.at(x));
        GradedMap act =
            rit->second
                .compose(tensor_map(p, GradedMap::identity(r.carriers.at(x))))
                .compose(group_factors(flat, {n, 1}));
        if (!act.is_zero()) m.action[kk] = act;
    }
    return m;
}

SigmaSplitting induced_splitting_on_MO(const SigmaSplitting& s) {
    SigmaSplitting out;
    out.operad = module_operad(s.operad);
    for (const auto& [key, vec] : s.t) {
        CompKey alla;
        alla.out = mo_color(key.out, false);
        for (int col : key.in) alla.in.push_back(mo_color(col, false));
        out.t[alla] = vec;
        for (int p = 0; p < key.arity(); ++p) {
            CompKey km = alla;
            km.out = mo_color(key.out, true);
            km.in[p] = mo_color(key.in[p], true);
            out.t[km] = vec;
        }
    }
    return out;
}

// --- cube wedges -----------------------------------------------------------------

namespace {

void check_split_mono(const GradedMap& f, const char* what) {
    if (f.degree != 0 || !f.is_chain_map())
        throw std::invalid_argument(std::string(what) +
                                    " must be a degree-0 chain map");
    for (const auto& [deg, rk] : f.source.ranks) {
        Matrix blk = f.block(deg);
        if (rank(blk) < rk) {
            std::ostringstream msg;
            msg << what << " is not injective in degree " << deg;
            throw NotSplit(msg.str());
        }
        if (f.source.ring.kind == CoeffRing::Kind::Integers) {
            CokernelPresentation ck = cokernel_presentation(blk);
            if (!ck.torsion.empty()) {
                std::ostringstream msg;
                msg << what << " is not split in degree " << deg;
                throw NotSplit(msg.str());
            }
        }
    }
}

struct SubComplex {
    DgComplex sub;
    GradedMap incl;
};

// the subcomplex spanned by d-closed column spans of an ambient complex
SubComplex sub_complex(const DgComplex& y, const std::map<int, Matrix>& spans) {
    std::map<int, Matrix> basis;
    for (const auto& [deg, m] : spans) {
        Matrix b = span_basis(m);
        if (b.cols() > 0) basis[deg] = b;
    }
    SubComplex out;
    out.sub.ring = y.ring;
    for (const auto& [deg, b] : basis) out.sub.ranks[deg] = b.cols();
    for (const auto& [deg, b] : basis) {
        Matrix img = y.diff(deg) * b;
        auto up = basis.find(deg + 1);
        if (up == basis.end()) {
            if (!img.is_zero())
                throw std::invalid_argument(
                    "span is not closed under the differential");
            continue;
        }
        auto d = solve(up->second, img);
        if (!d)
            throw std::invalid_argument(
                "span is not closed under the differential");
        if (!d->is_zero()) out.sub.diffs[deg] = *d;
    }
    out.incl = GradedMap::zero(out.sub, y);
    for (const auto& [deg, b] : basis) out.incl.set_block(deg, b);
    return out;
}

}  // namespace

CubeWedge cube_wedge(const std::vector<GradedMap>& maps) {
    if (maps.empty())
        throw std::invalid_argument("cube_wedge needs at least one map");
    int k = static_cast<int>(maps.size());
    for (const auto& f : maps) check_split_mono(f, "cube map");
    std::vector<DgComplex> ys;
    for (const auto& f : maps) ys.push_back(f.target);
    std::map<int, Matrix> spans;
    for (int i = 0; i < k; ++i) {
        std::vector<GradedMap> fs;
        for (int j = 0; j < k; ++j)
            fs.push_back(j == i ? maps[i] : GradedMap::identity(ys[j]));
        append_map_blocks(spans, tensor_map_many(fs));
    }
    SubComplex sc = sub_complex(tensor_many(ys), spans);
    return CubeWedge{sc.sub, sc.incl};
}

// --- pushout filtrations -----------------------------------------------------------

FiltrationReport pushout_filtration(const ColoredDgOperad& o,
                                    const AlgebraPresentation& a,
                                    const std::map<int, GradedMap>& f,
                                    const std::map<int, GradedMap>& g,
                                    int truncation) {
    const CoeffRing& ring = o.ring;
    int ncol = static_cast<int>(o.colors.size());
    auto wof = [&](int c) {
        auto it = f.find(c);
        return it == f.end() ? zero_complex(ring) : it->second.target;
    };
    for (const auto& [c, fc] : f) {
        try {
            check_split_mono(fc, "attaching cofibration");
        } catch (const std::invalid_argument& ex) {
            throw NotACofibration(ex.what());
        } catch (const NotSplit& ex) {
            throw NotACofibration(ex.what());
        }
        if (fc.source.is_zero()) continue;
        auto it = g.find(c);
        if (it == g.end())
            throw std::invalid_argument("missing attaching map g at color " +
                                        o.colors[c]);
        const GradedMap& gc = it->second;
        if (gc.degree != 0 || !gc.is_chain_map() || gc.source != fc.source ||
            gc.target != a.component(c))
            throw std::invalid_argument("bad attaching map g at color " +
                                        o.colors[c]);
    }

    EnvelopingOperad e = enveloping_operad(o, a, truncation);
    FiltrationReport rep;

    // the direct presentation of the pushout
    ColorIndexedComplexes merged;
    std::map<int, GradedMap> inclU, inclW;
    for (int c = 0; c < ncol; ++c) {
        DgComplex u = a.free_part.generators.count(c)
                          ? a.free_part.generators.at(c)
                          : zero_complex(ring);
        DgComplex wc = wof(c);
        if (u.is_zero() && wc.is_zero()) continue;
        if (wc.is_zero()) {
            merged[c] = u;
            inclU[c] = GradedMap::identity(u);
        } else if (u.is_zero()) {
            merged[c] = wc;
            inclW[c] = GradedMap::identity(wc);
        } else {
            DirectSum ds = direct_sum(u, wc);
            merged[c] = ds.sum;
            inclU[c] = ds.incl_a;
            inclW[c] = ds.incl_b;
        }
    }
    TruncatedFreeAlgebra big = free_algebra(o, merged, truncation);
    std::map<int, GradedMap> phi =
        free_algebra_functor(identity_operad_map(o), a.free_part, big, inclU);
    IdealSpans seeds;
    for (const auto& [c, per] : a.ideal) {
        auto it = phi.find(c);
        if (it == phi.end()) continue;
        for (const auto& [deg, mat] : per) {
            Matrix img = it->second.block(deg) * mat;
            if (!img.is_zero()) seeds[c][deg] = img;
        }
    }
    // generator embedding eta_c: merged_c -> big component
    auto eta = [&](int c) {
        GradedMap z = GradedMap::zero(
            merged.count(c) ? merged.at(c) : zero_complex(ring),
            big.component(c));
        int idx = big.piece_index(CompKey{{c}, c});
        if (idx < 0 || !merged.count(c)) return z;
        const FreePiece& p = big.pieces.at(c)[idx];
        return big.layout.at(c)
            .incl[idx]
            .compose(p.coinv.projection)
            .compose(tensor_map(o.unit_map(c),
                                GradedMap::identity(merged.at(c))));
    };
    for (const auto& [c, fc] : f) {
        if (fc.source.is_zero()) continue;
        GradedMap lift = g.at(c);
        auto qa = a.quotients.find(c);
        if (qa != a.quotients.end())
            lift = qa->second.section.compose(lift);
        GradedMap rel = eta(c).compose(inclW.at(c)).compose(fc) -
                        phi.at(c).compose(lift);
        auto blocks = rel.blocks;
        for (const auto& [deg, blk] : blocks) {
            if (blk.is_zero()) continue;
            auto it = seeds[c].find(deg);
            if (it == seeds[c].end())
                seeds[c][deg] = blk;
            else
                it->second = it->second.hstack(blk);
        }
    }
    AlgebraPresentation direct =
        quotient_algebra(big, ideal_closure(big, seeds));
    rep.direct = direct;
    OperadAlgebra balg = algebra_of(direct);

    std::map<int, GradedMap> unitAB, wgenB;
    for (int c = 0; c < ncol; ++c) {
        GradedMap lift = phi.count(c)
                             ? phi.at(c)
                             : GradedMap::zero(a.free_part.component(c),
                                               big.component(c));
        auto qa = a.quotients.find(c);
        if (qa != a.quotients.end()) lift = lift.compose(qa->second.section);
        unitAB[c] = direct.quotients.at(c).projection.compose(lift);
        if (inclW.count(c))
            wgenB[c] = direct.quotients.at(c).projection.compose(eta(c))
                           .compose(inclW.at(c));
    }

    // stage 0 and the counit identifications w0: env((), d) -> A_d
    FiltrationStage st0;
    for (int c = 0; c < ncol; ++c) st0.components[c] = a.component(c);
    rep.stages.push_back(st0);
    std::map<std::pair<std::vector<int>, int>, GradedMap> w;
    std::map<std::pair<std::vector<int>, int>, QuotientComplex> coinvs;
    std::map<int, GradedMap> w0inv;
    for (int c = 0; c < ncol; ++c) {
        CompKey k0{{}, c};
        DgComplex h0 = e.env.component(k0);
        DgComplex ac = a.component(c);
        GradedMap eps = GradedMap::zero(h0, ac);
        auto it = e.parts.find(k0);
        if (it != e.parts.end() && !h0.is_zero()) {
            for (std::size_t pi = 0; pi < it->second.pieces.size(); ++pi) {
                const EnvPiece& piece = it->second.pieces[pi];
                eps = eps + presented_structure_map(
                                a, CompKey{piece.absorbed, c})
                                .compose(e.piece_section(
                                    k0, static_cast<int>(pi)));
            }
        }
        GradedMap inv = GradedMap::zero(ac, h0);
        bool iso = true;
        for (int deg = std::min(h0.is_zero() ? 0 : h0.min_degree(),
                                ac.is_zero() ? 0 : ac.min_degree());
             deg <= std::max(h0.is_zero() ? 0 : h0.max_degree(),
                             ac.is_zero() ? 0 : ac.max_degree());
             ++deg) {
            if (h0.rank(deg) != ac.rank(deg)) {
                iso = false;
                break;
            }
            if (ac.rank(deg) == 0) continue;
            auto x = solve(eps.block(deg),
                           Matrix::identity(ring, ac.rank(deg)));
            if (!x) {
                iso = false;
                break;
            }
            inv.set_block(deg, *x);
        }
        if (!iso) {
            rep.ok = false;
            rep.message =
                "enveloping nullary component does not match the algebra "
                "at color " +
                o.colors[c];
            return rep;
        }
        w[{{}, c}] = eps;
        coinvs[{{}, c}] = quotient_by_subspace(h0, {});
        w0inv[c] = inv;
    }
    std::map<int, GradedMap> theta = unitAB;

    std::vector<int> wcolors;
    for (int c = 0; c < ncol; ++c)
        if (!wof(c).is_zero()) wcolors.push_back(c);

    for (int k = 1; k <= truncation; ++k) {
        FiltrationStage st;
        for (int d = 0; d < ncol; ++d) {
            const DgComplex& bprev = rep.stages.back().components.at(d);
            struct Summand {
                std::vector<int> cpp;
                QuotientComplex coinv;
                GradedMap vmap;  // coinv quotient -> direct component
                std::vector<std::pair<GradedMap, GradedMap>> cube;
            };
            std::vector<Summand> sums;
            std::vector<std::vector<int>> tuples;
            std::vector<int> cur;
            sorted_tuples(wcolors, k, 0, cur, tuples);
            for (const auto& cpp : tuples) {
                CompKey kk{cpp, d};
                DgComplex hk = e.env.component(kk);
                if (hk.is_zero()) continue;
                std::vector<DgComplex> flat{hk};
                std::vector<DgComplex> wf;
                for (int col : cpp) {
                    wf.push_back(wof(col));
                    flat.push_back(wf.back());
                }
                DgComplex bigw = tensor_many(flat);
                if (bigw.is_zero()) continue;
                std::map<int, Matrix> spans;
                for (int i = 0; i + 1 < k; ++i) {
                    if (cpp[i] != cpp[i + 1]) continue;
                    std::vector<int> si(k);
                    std::iota(si.begin(), si.end(), 0);
                    std::swap(si[i], si[i + 1]);
                    append_map_blocks(spans,
                                      offset_diag(e.env, kk, 0, wf, si) -
                                          GradedMap::identity(bigw));
                }
                Summand sm;
                sm.cpp = cpp;
                sm.coinv = quotient_by_subspace(bigw, spans);
                // the punctured-cube relations
                for (int i = 0; i < k; ++i) {
                    int ci = cpp[i];
                    auto fit = f.find(ci);
                    if (fit == f.end() || fit->second.source.is_zero())
                        continue;
                    std::vector<GradedMap> fsp{GradedMap::identity(hk)};
                    std::vector<DgComplex> flatv{hk};
                    for (int j = 0; j < k; ++j) {
                        fsp.push_back(j == i
                                          ? fit->second
                                          : GradedMap::identity(wf[j]));
                        flatv.push_back(j == i ? fit->second.source : wf[j]);
                    }
                    GradedMap pi_map = tensor_map_many(fsp);
                    std::vector<int> crest;
                    for (int j = 0; j < k; ++j)
                        if (j != i) crest.push_back(cpp[j]);
                    GradedMap att = GradedMap::zero(tensor_many(flatv), bprev);
                    auto wit = w.find({crest, d});
                    if (wit != w.end()) {
                        // absorb g(v) into the hom factor
                        std::vector<GradedMap> fse{GradedMap::identity(hk)};
                        for (int j = 0; j < k; ++j)
                            fse.push_back(
                                j == i ? w0inv.at(ci).compose(g.at(ci))
                                       : GradedMap::identity(wf[j]));
                        GradedMap embed = tensor_map_many(fse);
                        std::vector<DgComplex> flat3{hk};
                        for (int j = 0; j < k; ++j)
                            flat3.push_back(
                                j == i ? e.env.component(CompKey{{}, ci})
                                       : wf[j]);
                        std::vector<int> sp(1 + k);
                        sp[0] = 0;
                        sp[1 + i] = 1;
                        for (int j = 0; j < k; ++j) {
                            if (j == i) continue;
                            sp[1 + j] = j < i ? 2 + j : 1 + j;
                        }
                        GradedMap perm = permute_factors(flat3, sp);
                        std::vector<DgComplex> flat4{
                            hk, e.env.component(CompKey{{}, ci})};
                        std::vector<GradedMap> fsg{
                            e.env.comp(kk, i, CompKey{{}, ci})};
                        for (int j = 0; j < k; ++j) {
                            if (j == i) continue;
                            flat4.push_back(wf[j]);
                            fsg.push_back(GradedMap::identity(wf[j]));
                        }
                        std::vector<int> gsz{2};
                        for (int j = 0; j + 1 < k; ++j) gsz.push_back(1);
                        GradedMap glue = tensor_map_many(fsg).compose(
                            group_factors(flat4, gsz));
                        att = wit->second
                                  .compose(coinvs.at({crest, d}).projection)
                                  .compose(glue)
                                  .compose(perm)
                                  .compose(embed);
                    }
                    sm.cube.emplace_back(sm.coinv.projection.compose(pi_map),
                                         att);
                }
                // comparison into the direct pushout
                GradedMap vm = GradedMap::zero(bigw, direct.component(d));
                const EnvComponent& part = e.parts.at(kk);
                for (std::size_t pi = 0; pi < part.pieces.size(); ++pi) {
                    const EnvPiece& piece = part.pieces[pi];
                    int np = static_cast<int>(piece.absorbed.size());
                    std::vector<int> fullin = cpp;
                    fullin.insert(fullin.end(), piece.absorbed.begin(),
                                  piece.absorbed.end());
                    CompKey fullkey{fullin, d};
                    GradedMap str = balg.structure_map(fullkey);
                    if (str.is_zero()) continue;
                    std::vector<DgComplex> flatpb{o.component(fullkey)};
                    std::vector<GradedMap> fslift{
                        e.piece_section(kk, static_cast<int>(pi))};
                    std::vector<int> gsz{1 + np};
                    for (int col : piece.absorbed)
                        flatpb.push_back(a.component(col));
                    for (int j = 0; j < k; ++j) {
                        flatpb.push_back(wf[j]);
                        fslift.push_back(GradedMap::identity(wf[j]));
                        gsz.push_back(1);
                    }
                    GradedMap lift = ungroup(flatpb, gsz).compose(
                        tensor_map_many(fslift));
                    std::vector<int> sp(1 + np + k);
                    sp[0] = 0;
                    for (int j = 0; j < np; ++j) sp[1 + j] = 1 + k + j;
                    for (int j = 0; j < k; ++j) sp[1 + np + j] = 1 + j;
                    GradedMap perm = permute_factors(flatpb, sp);
                    std::vector<GradedMap> fsb{
                        GradedMap::identity(o.component(fullkey))};
                    for (int j = 0; j < k; ++j) fsb.push_back(wgenB.at(cpp[j]));
                    for (int col : piece.absorbed)
                        fsb.push_back(unitAB.at(col));
                    vm = vm + str.compose(tensor_map_many(fsb))
                                  .compose(perm)
                                  .compose(lift);
                }
                sm.vmap = vm.compose(sm.coinv.section);
                sums.push_back(std::move(sm));
            }
            std::vector<DgComplex> parts{bprev};
            for (const auto& sm : sums) parts.push_back(sm.coinv.quotient);
            MultiSum ds = direct_sum_many(parts);
            std::map<int, Matrix> qspans;
            for (std::size_t s = 0; s < sums.size(); ++s)
                for (const auto& [cp, att] : sums[s].cube)
                    append_map_blocks(qspans, ds.incl[1 + s].compose(cp) -
                                                  ds.incl[0].compose(att));
            QuotientComplex q = quotient_by_subspace(ds.sum, qspans);
            st.components[d] = q.quotient;
            st.from_previous[d] = q.projection.compose(ds.incl[0]);
            for (auto& [kk, mp] : w)
                if (kk.second == d) mp = st.from_previous[d].compose(mp);
            for (std::size_t s = 0; s < sums.size(); ++s) {
                w[{sums[s].cpp, d}] = q.projection.compose(ds.incl[1 + s]);
                coinvs[{sums[s].cpp, d}] = sums[s].coinv;
            }
            GradedMap comb = theta.at(d).compose(ds.proj[0]);
            for (std::size_t s = 0; s < sums.size(); ++s)
                comb = comb + sums[s].vmap.compose(ds.proj[1 + s]);
            theta[d] = comb.compose(q.section);
        }
        rep.stages.push_back(st);
    }

    // compare the colimit of the filtration against the direct pushout
    for (int c = 0; c < ncol && rep.ok; ++c) {
        const DgComplex& colim = rep.stages.back().components.at(c);
        DgComplex bd = direct.component(c);
        int lo = std::min(colim.is_zero() ? 0 : colim.min_degree(),
                          bd.is_zero() ? 0 : bd.min_degree());
        int hi = std::max(colim.is_zero() ? 0 : colim.max_degree(),
                          bd.is_zero() ? 0 : bd.max_degree());
        for (int deg = lo; deg <= hi; ++deg) {
            if (colim.rank(deg) != bd.rank(deg)) {
                rep.ok = false;
                std::ostringstream msg;
                msg << "filtration colimit has rank " << colim.rank(deg)
                    << " but the pushout has rank " << bd.rank(deg)
                    << " at color " << o.colors[c] << " degree " << deg;
                rep.message = msg.str();
                break;
            }
            if (colim.rank(deg) > 0 &&
                rank(theta.at(c).block(deg)) != colim.rank(deg)) {
                rep.ok = false;
                std::ostringstream msg;
                msg << "comparison map is not an isomorphism at color "
                    << o.colors[c] << " degree " << deg;
                rep.message = msg.str();
                break;
            }
        }
    }
    rep.comparison = theta;
    return rep;
}

}  // namespace opforge
