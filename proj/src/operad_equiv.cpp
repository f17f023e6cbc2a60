#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "opforge/operad.hpp"

namespace opforge {

namespace {

// inverse of a degreewise signed-permutation isomorphism
GradedMap transpose_iso(const GradedMap& f) {
    GradedMap out = GradedMap::zero(f.target, f.source, 0);
    for (const auto& [n, b] : f.blocks) out.blocks[n] = b.transpose();
    return out;
}

// candidate component keys: tabulated in the source, plus preimages of
// tabulated target components (zero source components must hit acyclic ones)
std::set<CompKey> candidate_keys(const OperadMap& f) {
    std::set<CompKey> keys;
    for (const auto& [key, c] : f.source.components) keys.insert(key);
    std::vector<std::vector<int>> preim(f.target.colors.size());
    for (std::size_t c = 0; c < f.color_map.size(); ++c)
        preim[f.color_map[c]].push_back(static_cast<int>(c));
    for (const auto& [tkey, c] : f.target.components) {
        std::vector<std::vector<int>> choices;
        bool possible = true;
        for (int col : tkey.in) {
            if (preim[col].empty()) possible = false;
            choices.push_back(preim[col]);
        }
        if (!possible || preim[tkey.out].empty()) continue;
        for (int out : preim[tkey.out]) {
            std::vector<int> cur;
            std::function<void(std::size_t)> rec = [&](std::size_t t) {
                if (t == choices.size()) {
                    keys.insert(CompKey{cur, out});
                    return;
                }
                for (int v : choices[t]) {
                    cur.push_back(v);
                    rec(t + 1);
                    cur.pop_back();
                }
            };
            rec(0);
        }
    }
    return keys;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (auto& blk : cur) {
            blk.push_back(i);
            rec(i + 1);
            blk.pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

std::string partition_to_string(const std::vector<std::vector<int>>& p) {
    std::string s = "{";
    for (std::size_t b = 0; b < p.size(); ++b) {
        s += b ? "|" : "";
        for (std::size_t t = 0; t < p[b].size(); ++t)
            s += (t ? "," : "") + std::to_string(p[b][t]);
    }
    return s + "}";
}

}  // namespace

EquivReport check_weak_equivalence(const OperadMap& f) {
    EquivReport rep;
    for (const CompKey& key : candidate_keys(f)) {
        QuasiIsoResult r = is_quasi_iso(f.block(key));
        if (!r.ok) {
            rep.ok = false;
            rep.message = "not a quasi-isomorphism at " + key_to_string(key) +
                          (r.witness_degree
                               ? " in degree " + std::to_string(*r.witness_degree)
                               : "");
            return rep;
        }
    }
    // condition (b): automatic when the colors biject, undecidable here otherwise
    std::set<int> image(f.color_map.begin(), f.color_map.end());
    if (f.color_map.size() == f.target.colors.size() &&
        image.size() == f.target.colors.size()) {
        rep.functor_checked = true;
    } else {
        rep.functor_checked = false;
        rep.message = "condition (b) unchecked: colors do not biject";
    }
    return rep;
}

EquivReport check_strong_equivalence(const OperadMap& f) {
    EquivReport rep;
    for (const CompKey& key : candidate_keys(f)) {
        int n = key.arity();
        CompKey tkey;
        tkey.out = f.color_map[key.out];
        for (int c : key.in) tkey.in.push_back(f.color_map[c]);
        DgComplex P = f.source.component(key), Q = f.target.component(tkey);
        for (const auto& part : set_partitions(n)) {
            bool mono = true;
            for (const auto& blk : part)
                for (int t : blk)
                    if (key.in[t] != key.in[blk[0]]) mono = false;
            if (!mono) continue;
            // generators of the product of block symmetric groups
            std::vector<std::vector<int>> gens;
            for (const auto& blk : part)
                for (std::size_t t = 0; t + 1 < blk.size(); ++t) {
                    std::vector<int> sig(n);
                    std::iota(sig.begin(), sig.end(), 0);
                    std::swap(sig[blk[t]], sig[blk[t + 1]]);
                    gens.push_back(sig);
                }
            std::map<int, Matrix> spansP, spansQ;
            for (const auto& sig : gens) {
                GradedMap aP = f.source.act(key, sig) - GradedMap::identity(P);
                GradedMap aQ = f.target.act(tkey, sig) - GradedMap::identity(Q);
                for (const auto& [deg, r] : P.ranks) {
                    Matrix piece = aP.block(deg);
                    auto it = spansP.find(deg);
                    spansP.insert_or_assign(
                        deg, it == spansP.end() ? piece : it->second.hstack(piece));
                }
                for (const auto& [deg, r] : Q.ranks) {
                    Matrix piece = aQ.block(deg);
                    auto it = spansQ.find(deg);
                    spansQ.insert_or_assign(
                        deg, it == spansQ.end() ? piece : it->second.hstack(piece));
                }
            }
            QuotientComplex qP = quotient_by_subspace(P, spansP);
            QuotientComplex qQ = quotient_by_subspace(Q, spansQ);
            GradedMap induced =
                qQ.projection.compose(f.block(key)).compose(qP.section);
            if (!induced.is_chain_map()) {
                rep.ok = false;
                rep.message = "map not equivariant at " + key_to_string(key) +
                              " partition " + partition_to_string(part);
                return rep;
            }
            QuasiIsoResult r = is_quasi_iso(induced);
            if (!r.ok) {
                rep.ok = false;
                rep.message =
                    "coinvariant map not a quasi-isomorphism at " +
                    key_to_string(key) + " partition " + partition_to_string(part) +
                    (r.witness_degree
                         ? " degree " + std::to_string(*r.witness_degree)
                         : "");
                return rep;
            }
        }
    }
    return rep;
}

SigmaCertificate sigma_cofibrant_certificate(
    const ColoredDgOperad& o, const std::map<CompKey, std::map<int, Matrix>>& bases) {
    if (o.ring.kind == CoeffRing::Kind::Rationals)
        return {SigmaState::certified,
                "characteristic-0 field: bounded complexes of k[G]-modules are "
                "projectively cofibrant"};
    if (bases.empty())
        return {SigmaState::unknown, "no freeness bases supplied"};
    for (const auto& [key, c] : o.components) {
        int n = key.arity();
        std::vector<std::vector<int>> aut;
        for (const auto& sig : permutations_lex(n))
            if (apply_perm(sig, key.in) == key.in) aut.push_back(sig);
        if (aut.size() <= 1) continue;  // trivial stabilizer: free over k
        auto itb = bases.find(key);
        if (itb == bases.end())
            throw BadBasis("no basis supplied for " + key_to_string(key));
        std::vector<GradedMap> acts;
        for (const auto& sig : aut) acts.push_back(o.act(key, sig));
        for (const auto& [deg, r] : c.ranks) {
            auto itd = itb->second.find(deg);
            if (itd == itb->second.end())
                throw BadBasis("no basis supplied for " + key_to_string(key) +
                               " degree " + std::to_string(deg));
            const Matrix& b = itd->second;
            if (b.rows() != r ||
                b.cols() * static_cast<int>(aut.size()) != r)
                throw BadBasis("basis has wrong size at " + key_to_string(key) +
                               " degree " + std::to_string(deg));
            Matrix translates(o.ring, r, 0);
            for (const auto& a : acts) translates = translates.hstack(a.block(deg) * b);
            bool invertible;
            if (o.ring.kind == CoeffRing::Kind::Integers) {
                SmithDecomposition s = smith_normal_form(translates);
                invertible = static_cast<int>(s.invariant_factors.size()) == r;
                for (const auto& d : s.invariant_factors)
                    if (d != 1 && d != -1) invertible = false;
            } else {
                invertible = rank(translates) == r;
            }
            if (!invertible)
                throw BadBasis("translates of the basis do not span freely at " +
                               key_to_string(key) + " degree " +
                               std::to_string(deg));
        }
    }
    return {SigmaState::certified, "supplied bases exhibit degreewise freeness"};
}

// --- the PROP P_O -----------------------------------------------------------------

PropHom prop_hom(const ColoredDgOperad& o, const std::vector<int>& c,
                 const std::vector<int>& d) {
    int nI = static_cast<int>(c.size());
    int nJ = static_cast<int>(d.size());
    PropHom out;
    std::vector<DgComplex> summands;
    std::vector<int> f(nI, 0);
    bool more = (nJ > 0 || nI == 0);
    while (more) {
        std::vector<std::vector<int>> fiber(nJ);
        for (int i = 0; i < nI; ++i) fiber[f[i]].push_back(i);
        std::vector<DgComplex> parts;
        for (int j = 0; j < nJ; ++j) {
            if (static_cast<int>(fiber[j].size()) > o.arity_bound)
                throw ArityOverflow("prop_hom: fiber exceeds arity bound");
            CompKey key;
            key.out = d[j];
            for (int i : fiber[j]) key.in.push_back(c[i]);
            parts.push_back(o.component(key));
        }
        out.maps.push_back(f);
        summands.push_back(tensor_many(parts));
        more = false;
        for (int i = nI - 1; i >= 0; --i) {
            if (++f[i] < nJ) {
                more = true;
                break;
            }
            f[i] = 0;
        }
    }
    out.layout = direct_sum_many(summands);
    out.hom = out.layout.sum;
    return out;
}

GradedMap prop_compose(const ColoredDgOperad& o, const std::vector<int>& c,
                       const std::vector<int>& d, const std::vector<int>& e) {
    int nI = static_cast<int>(c.size());
    int nJ = static_cast<int>(d.size());
    int nK = static_cast<int>(e.size());
    PropHom de = prop_hom(o, d, e), cd = prop_hom(o, c, d), ce = prop_hom(o, c, e);
    auto summand_index = [&](const PropHom& p, const std::vector<int>& f) {
        return static_cast<int>(
            std::lower_bound(p.maps.begin(), p.maps.end(), f) - p.maps.begin());
    };
    GradedMap total = GradedMap::zero(tensor(de.hom, cd.hom), ce.hom);
    for (std::size_t gi = 0; gi < de.maps.size(); ++gi) {
        const std::vector<int>& g = de.maps[gi];
        if (de.layout.incl[gi].source.is_zero()) continue;
        for (std::size_t fi = 0; fi < cd.maps.size(); ++fi) {
            const std::vector<int>& f = cd.maps[fi];
            if (cd.layout.incl[fi].source.is_zero()) continue;
            std::vector<int> h(nI);
            for (int i = 0; i < nI; ++i) h[i] = g[f[i]];
            // factor lists
            std::vector<std::vector<int>> gfiber(nK), ffiber(nJ), hfiber(nK);
            for (int j = 0; j < nJ; ++j) gfiber[g[j]].push_back(j);
            for (int i = 0; i < nI; ++i) ffiber[f[i]].push_back(i);
            for (int i = 0; i < nI; ++i) hfiber[h[i]].push_back(i);
            std::vector<DgComplex> B(nK), A(nJ);
            for (int k = 0; k < nK; ++k) {
                CompKey key;
                key.out = e[k];
                for (int j : gfiber[k]) key.in.push_back(d[j]);
                B[k] = o.component(key);
            }
            for (int j = 0; j < nJ; ++j) {
                CompKey key;
                key.out = d[j];
                for (int i : ffiber[j]) key.in.push_back(c[i]);
                A[j] = o.component(key);
            }
            std::vector<DgComplex> all = B;
            all.insert(all.end(), A.begin(), A.end());
            // reorder to [B_0, A_{j in g^-1(0)}, B_1, ...]
            std::vector<int> sigma(nK + nJ);
            std::vector<DgComplex> reordered;
            std::vector<int> sizes;
            {
                int pos = 0;
                for (int k = 0; k < nK; ++k) {
                    sigma[k] = pos++;
                    reordered.push_back(B[k]);
                    for (int j : gfiber[k]) {
                        sigma[nK + j] = pos++;
                        reordered.push_back(A[j]);
                    }
                    sizes.push_back(1 + static_cast<int>(gfiber[k].size()));
                }
            }
            std::vector<GradedMap> pieces;
            for (int k = 0; k < nK; ++k) {
                std::vector<int> cloc, dloc, floc;
                for (int i : hfiber[k]) cloc.push_back(c[i]);
                for (int j : gfiber[k]) dloc.push_back(d[j]);
                for (int i : hfiber[k]) {
                    int j = f[i];
                    int jloc = static_cast<int>(
                        std::lower_bound(gfiber[k].begin(), gfiber[k].end(), j) -
                        gfiber[k].begin());
                    floc.push_back(jloc);
                }
                pieces.push_back(full_composition(o, floc, cloc, dloc, e[k]));
            }
            GradedMap core =
                tensor_map_many(pieces)
                    .compose(group_factors(reordered, sizes))
                    .compose(permute_factors(all, sigma))
                    .compose(transpose_iso(group_factors(all, {nK, nJ})));
            GradedMap piece =
                ce.layout.incl[summand_index(ce, h)]
                    .compose(core)
                    .compose(tensor_map(de.layout.proj[gi], cd.layout.proj[fi]));
            total = total + piece;
        }
    }
    return total;
}

}  // namespace opforge
