// Acceptance suite: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "opforge/verbs.hpp"

using namespace opforge;

namespace {

const CoeffRing Q = CoeffRing::rationals();
const CoeffRing Z = CoeffRing::integers();

CompKey mk(int n) { return CompKey{std::vector<int>(n, 0), 0}; }

DgComplex pt(const CoeffRing& ring, int rank = 1) {
    return DgComplex::point(ring, 0, rank);
}

Matrix unit_column(const CoeffRing& ring, int rows, int idx) {
    Matrix m(ring, rows, 1);
    m.set(idx, 0, 1);
    return m;
}

AlgebraPresentation initial_algebra(const ColoredDgOperad& o, int truncation) {
    return quotient_algebra(free_algebra(o, {}, truncation), {});
}

AlgebraPresentation square_zero(const ColoredDgOperad& o, int truncation) {
    TruncatedFreeAlgebra f = free_algebra(o, {{0, pt(o.ring)}}, truncation);
    IdealSpans gens;
    int p2 = f.piece_index(CompKey{{0, 0}, 0});
    if (p2 >= 0) gens[0][0] = f.layout.at(0).incl[p2].block(0);
    return quotient_algebra(f, ideal_closure(f, gens));
}

// --- seeded complexes ---------------------------------------------------------

DgComplex random_complex(const CoeffRing& ring, std::mt19937_64& rng, int depth,
                         int max_summands) {
    DgComplex x;
    x.ring = ring;
    std::map<int, int> ranks;
    std::vector<std::tuple<int, int, int>> ones;
    int summands = 1 + static_cast<int>(rng() % std::max(1, max_summands));
    for (int i = 0; i < summands; ++i) {
        int deg = -static_cast<int>(rng() % (depth + 1));
        if (deg < 0 && rng() % 2) {
            int col = ranks[deg]++, row = ranks[deg + 1]++;
            ones.emplace_back(deg, row, col);
        } else {
            ranks[deg]++;
        }
    }
    for (const auto& [n, r] : ranks)
        if (r > 0) x.ranks[n] = r;
    std::map<int, Matrix> diffs;
    for (const auto& [n, row, col] : ones) {
        auto it = diffs.find(n);
        if (it == diffs.end())
            it = diffs.emplace(n, Matrix(ring, x.rank(n + 1), x.rank(n))).first;
        it->second.set(row, col, 1);
    }
    std::map<int, Matrix> basis, basis_inv;
    for (const auto& [n, r] : x.ranks) {
        Matrix u = Matrix::identity(ring, r);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                u.set(i, j, ring.norm(mpq_class(static_cast<long>(rng() % 3))));
        basis[n] = u;
        basis_inv[n] = *solve(u, Matrix::identity(ring, r));
    }
    for (const auto& [n, d] : diffs) {
        Matrix nd = d;
        if (basis.count(n + 1)) nd = basis.at(n + 1) * nd;
        if (basis_inv.count(n)) nd = nd * basis_inv.at(n);
        if (!nd.is_zero()) x.diffs[n] = nd;
    }
    return x;
}

DgComplex random_complex_capped(const CoeffRing& ring, std::mt19937_64& rng,
                                int depth, int max_summands, long rank_cap) {
    for (int tries = 0; tries < 32; ++tries) {
        DgComplex x = random_complex(ring, rng, depth, max_summands);
        if (x.total_rank() <= rank_cap) return x;
    }
    return DgComplex::point(ring, 0);
}

// --- simplicial helpers (levelwise kron, normalized maps, flat relabelling) ----

Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix m(x.ring(), x.rows() * y.rows(), x.cols() * y.cols());
    for (const auto& [rc1, v1] : x.entries())
        for (const auto& [rc2, v2] : y.entries())
            m.set(rc1.first * y.rows() + rc2.first,
                  rc1.second * y.cols() + rc2.second, v1 * v2);
    return m;
}

GradedMap normalized_map(const SimplicialModule& m, const SimplicialModule& n,
                         const std::vector<Matrix>& levelwise) {
    NormalizedChains cm = normalized_chains(m), cn = normalized_chains(n);
    GradedMap f = GradedMap::zero(cm.complex, cn.complex, 0);
    for (int lv = 0; lv <= m.n_max; ++lv) {
        Matrix blk = cn.projection[lv] * levelwise[lv] * cm.section[lv];
        if (!blk.is_zero()) f.blocks[-lv] = blk;
    }
    return f;
}

GradedMap flatten3(const DgComplex& a, const DgComplex& b, const DgComplex& c,
                   bool left_nested) {
    DgComplex flat_cx = tensor_many({a, b, c});
    TensorLayout flat({a, b, c});
    GradedMap out = GradedMap::zero(
        left_nested ? tensor(tensor(a, b), c) : tensor(a, tensor(b, c)), flat_cx, 0);
    DgComplex ab = tensor(a, b), bc = tensor(b, c);
    TensorLayout lab({a, b}), lbc({b, c}), l_l({ab, c}), l_r({a, bc});
    std::map<int, Matrix> blk;
    for (const auto& [n, r] : flat_cx.ranks)
        blk.emplace(n, Matrix(a.ring, r, out.source.rank(n)));
    for (const auto& [n, tups] : flat.tuples)
        for (const auto& degs : tups) {
            int p = degs[0], q = degs[1], s = degs[2];
            int ra = a.rank(p), rb = b.rank(q), rc = c.rank(s);
            for (int i = 0; i < ra; ++i)
                for (int j = 0; j < rb; ++j)
                    for (int k = 0; k < rc; ++k) {
                        int row = flat.offset(n, degs) + (i * rb + j) * rc + k;
                        int col;
                        if (left_nested) {
                            int inner = lab.offset(p + q, {p, q}) + i * rb + j;
                            col = l_l.offset(n, {p + q, s}) + inner * rc + k;
                        } else {
                            int inner = lbc.offset(q + s, {q, s}) + j * rc + k;
                            col = l_r.offset(n, {p, q + s}) + i * bc.rank(q + s) + inner;
                        }
                        blk.at(n).set(row, col, 1);
                    }
        }
    for (auto& [n, m2] : blk)
        if (!m2.is_zero()) out.blocks[n] = m2;
    return out;
}

// --- homotopy data -------------------------------------------------------------

HomotopyData rank_r_cone_data(const CoeffRing& ring, int n_colors, int r) {
    HomotopyData data;
    DgComplex v;
    v.ring = ring;
    v.ranks = {{0, r}, {1, r}};
    v.diffs = {{0, Matrix::identity(ring, r)}};
    GradedMap h = GradedMap::zero(v, v, -1);
    h.set_block(1, Matrix::identity(ring, r));
    for (int c = 0; c < n_colors; ++c) {
        data.V[c] = v;
        data.alpha[c] = GradedMap::zero(v, v);
        data.h[c] = h;
    }
    return data;
}

bool telescope_holds(const SigmaSplitting& s, const HomotopyData& data, int bound,
                     std::string& why) {
    auto H = free_algebra_homotopy(s, data, bound);
    auto A = free_algebra_endomorphism(s.operad, data, bound);
    if (H.empty()) {
        why = "no free components";
        return false;
    }
    for (const auto& [key, h] : H) {
        GradedMap d = differential_map(h.source);
        if (d.compose(h) + h.compose(d) != GradedMap::identity(h.source) - A.at(key)) {
            why = "homotopy identity fails at " + key_to_string(key);
            return false;
        }
    }
    return true;
}

// --- seeded operad family -------------------------------------------------------

// max-semilattice operad on colors {0, 1}: O(c|d) = k iff max(c) = d
PlanarColoredOperad semilattice_planar(const CoeffRing& ring, int arity_bound) {
    PlanarColoredOperad p;
    p.ring = ring;
    p.colors = {"lo", "hi"};
    p.arity_bound = arity_bound;
    DgComplex k = pt(ring);
    std::vector<CompKey> keys;
    for (int n = 1; n <= arity_bound; ++n) {
        std::vector<int> c(n, 0);
        bool more = true;
        while (more) {
            int d = *std::max_element(c.begin(), c.end());
            keys.push_back(CompKey{c, d});
            p.components[keys.back()] = k;
            more = false;
            for (int t = n - 1; t >= 0; --t) {
                if (++c[t] < 2) {
                    more = true;
                    break;
                }
                c[t] = 0;
            }
        }
    }
    for (const auto& x : keys)
        for (const auto& y : keys) {
            if (x.arity() + y.arity() - 1 > arity_bound) continue;
            for (int i = 0; i < x.arity(); ++i)
                if (x.in[i] == y.out)
                    p.comps[std::make_tuple(x, i, y)] = ChainMap::identity(k);
        }
    Matrix u(ring, 1, 1);
    u.set(0, 0, 1);
    p.units[0] = u;
    p.units[1] = u;
    return p;
}

// Com up to arity 4, extended by an acyclic summand of seeded rank in arity 2
ColoredDgOperad com_plus_acyclic4(const CoeffRing& ring, int r) {
    ColoredDgOperad o;
    o.ring = ring;
    o.colors = {"c"};
    o.arity_bound = 4;
    DgComplex k = pt(ring);
    DgComplex e;
    e.ring = ring;
    e.ranks = {{0, 1 + r}, {1, r}};
    Matrix d0(ring, r, 1 + r);
    for (int i = 0; i < r; ++i) d0.set(i, 1 + i, 1);
    e.diffs = {{0, d0}};
    ChainMap ide = ChainMap::identity(e), idk = ChainMap::identity(k);
    ChainMap p = ChainMap::zero(e, k);
    Matrix pm(ring, 1, 1 + r);
    pm.set(0, 0, 1);
    p.set_block(0, pm);

    o.set_component(mk(1), k);
    o.set_component(mk(2), e);
    o.set_component(mk(3), k);
    o.set_component(mk(4), k);
    o.set_sym(mk(2), 0, ide);
    for (int i = 0; i + 1 < 3; ++i) o.set_sym(mk(3), i, idk);
    for (int i = 0; i + 1 < 4; ++i) o.set_sym(mk(4), i, idk);
    auto id_of = [&](int n) { return n == 2 ? ide : idk; };
    for (int n = 1; n <= 4; ++n) {
        // units: tensor with the arity-1 point is the identity relabelling
        for (int i = 0; i < n; ++i) o.set_comp(mk(n), i, mk(1), id_of(n));
        if (n > 1) o.set_comp(mk(1), 0, mk(n), id_of(n));
    }
    for (int i = 0; i < 2; ++i) o.set_comp(mk(2), i, mk(2), tensor_map(p, p));
    for (int i = 0; i < 2; ++i) o.set_comp(mk(2), i, mk(3), p);  // e (x) k = e
    for (int i = 0; i < 3; ++i) o.set_comp(mk(3), i, mk(2), p);  // k (x) e = e
    Matrix u(ring, 1, 1);
    u.set(0, 0, 1);
    o.units[0] = u;
    return o;
}

// --- pushout filtration instances ----------------------------------------------

bool filtration_instance(const ColoredDgOperad& o, const AlgebraPresentation& a,
                         const std::map<int, GradedMap>& f,
                         const std::map<int, GradedMap>& g, int truncation,
                         std::string& why) {
    FiltrationReport r = pushout_filtration(o, a, f, g, truncation);
    if (!r.ok) {
        why = r.message;
        return false;
    }
    if (static_cast<int>(r.stages.size()) != truncation + 1) {
        why = "wrong stage count";
        return false;
    }
    return true;
}

// --- criteria -------------------------------------------------------------------

bool criterion1(std::string& why) {
    for (const CoeffRing& ring : {Q, CoeffRing::prime_field(5)}) {
        std::mt19937_64 rng(ring.char_zero() ? 101 : 505);
        for (int i = 0; i < 10; ++i) {
            int dm = 1 + static_cast<int>(rng() % 2);
            int dn = 1 + static_cast<int>(rng() % 2);
            int n_max = dm + dn;
            SimplicialModule m, n;
            long total = 31;
            for (int tries = 0; tries < 40 && total > 30; ++tries) {
                DgComplex x = random_complex_capped(ring, rng, dm, 2, 3);
                DgComplex y = random_complex_capped(ring, rng, dn, 2, 3);
                m = dold_kan_inverse(x, n_max);
                n = dold_kan_inverse(y, n_max);
                total = 0;
                for (int lv = 0; lv <= n_max; ++lv)
                    total += m.level(lv) + n.level(lv);
            }
            if (total > 30) {
                why = "instance exceeds the rank cap";
                return false;
            }
            GradedMap em = eilenberg_maclane(m, n);
            GradedMap aw = alexander_whitney(m, n);
            if (aw.compose(em) != GradedMap::identity(em.source)) {
                why = "AW∘EM ≠ id on seeded pair " + std::to_string(i);
                return false;
            }
            // EM symmetry: C(swap) ∘ EM = EM ∘ (Koszul swap)
            SimplicialModule t_mn = levelwise_tensor(m, n);
            SimplicialModule t_nm = levelwise_tensor(n, m);
            std::vector<Matrix> swap_lv;
            for (int lv = 0; lv <= n_max; ++lv) {
                int rm = m.level(lv), rn = n.level(lv);
                Matrix s(ring, rn * rm, rm * rn);
                for (int a2 = 0; a2 < rm; ++a2)
                    for (int b2 = 0; b2 < rn; ++b2)
                        s.set(b2 * rm + a2, a2 * rn + b2, 1);
                swap_lv.push_back(s);
            }
            GradedMap cswap = normalized_map(t_mn, t_nm, swap_lv);
            NormalizedChains cm = normalized_chains(m), cn = normalized_chains(n);
            GradedMap koszul = permute_factors({cm.complex, cn.complex}, {1, 0});
            if (eilenberg_maclane(n, m).compose(koszul) != cswap.compose(em)) {
                why = "EM symmetry fails on seeded pair " + std::to_string(i);
                return false;
            }
        }
        // AW coassociativity on seeded triples
        for (int i = 0; i < 3; ++i) {
            DgComplex xs[3];
            SimplicialModule ms[3] = {SimplicialModule(), SimplicialModule(),
                                      SimplicialModule()};
            for (int t = 0; t < 3; ++t) {
                xs[t] = random_complex_capped(ring, rng, 1, 2, 4);
                ms[t] = dold_kan_inverse(xs[t], 3);
            }
            DgComplex cm = normalized_chains(ms[0]).complex,
                      cn = normalized_chains(ms[1]).complex,
                      cp = normalized_chains(ms[2]).complex;
            SimplicialModule mn = levelwise_tensor(ms[0], ms[1]);
            SimplicialModule np = levelwise_tensor(ms[1], ms[2]);
            GradedMap lhs =
                flatten3(cm, cn, cp, true)
                    .compose(tensor_map(alexander_whitney(ms[0], ms[1]),
                                        GradedMap::identity(cp)))
                    .compose(alexander_whitney(mn, ms[2]));
            GradedMap rhs =
                flatten3(cm, cn, cp, false)
                    .compose(tensor_map(GradedMap::identity(cm),
                                        alexander_whitney(ms[1], ms[2])))
                    .compose(alexander_whitney(ms[0], np));
            if (lhs != rhs) {
                why = "AW coassociativity fails on seeded triple " +
                      std::to_string(i);
                return false;
            }
        }
        // C∘N = id in degrees [-3, 0], ranks <= 4
        for (int i = 0; i < 10; ++i) {
            DgComplex x = random_complex_capped(ring, rng, 3, 3, 4);
            if (normalized_chains(dold_kan_inverse(x, 3)).complex != x) {
                why = "C∘N ≠ id on seeded complex " + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

bool criterion2(std::string& why) {
    auto check = [&](const SigmaSplitting& s, const std::string& label) {
        SplittingReport r = check_splitting(s);
        if (!r.ok) why = label + ": " + r.message;
        return r.ok;
    };
    if (!check(rational_splitting(com_operad(Q, 4, false)), "Com/Q")) return false;
    if (!check(rational_splitting(ass_operad(Q, 4)), "Ass/Q")) return false;
    if (!check(rational_splitting(module_operad(com_operad(Q, 4, false))), "MCom/Q"))
        return false;
    if (!check(rational_splitting(module_operad(ass_operad(Q, 3))), "MAss/Q"))
        return false;
    if (!check(planar_splitting(planar_com_operad(Q, 4, false)), "Ass planar"))
        return false;
    if (!check(induced_splitting_on_MO(planar_splitting(planar_com_operad(Q, 3, false))),
               "MAss planar"))
        return false;
    // five seeded colored operads at arity bound 4
    std::mt19937_64 rng(404);
    for (int s = 0; s < 5; ++s) {
        CoeffRing rings[5] = {Q, CoeffRing::prime_field(5), Q,
                              CoeffRing::prime_field(3), Q};
        CoeffRing ring = rings[s];
        SigmaSplitting sp;
        std::string label = "seeded operad " + std::to_string(s);
        if (s % 2 == 0 && ring.char_zero()) {
            ColoredDgOperad o = s == 4
                                    ? planar_to_symmetric(semilattice_planar(ring, 4))
                                    : com_plus_acyclic4(ring,
                                                        1 + static_cast<int>(rng() % 2));
            AxiomReport ax = check_operad_axioms(o);
            if (!ax.ok) {
                why = label + " axioms: " + ax.message;
                return false;
            }
            sp = rational_splitting(o);
        } else {
            sp = planar_splitting(semilattice_planar(ring, 4));
            (void)rng();
        }
        if (!check(sp, label)) return false;
    }
    return true;
}

bool criterion3(std::string& why) {
    CoeffRing f2 = CoeffRing::prime_field(2);
    if (!telescope_holds(rational_splitting(com_operad(Q, 4, false)),
                         rank_r_cone_data(Q, 1, 1), 4, why))
        return false;
    if (!telescope_holds(rational_splitting(com_operad(Q, 3, false)),
                         rank_r_cone_data(Q, 1, 3), 3, why))
        return false;
    if (!telescope_holds(planar_splitting(planar_com_operad(f2, 4, false)),
                         rank_r_cone_data(f2, 1, 1), 4, why))
        return false;
    // ideal stability on the presented square-zero setups
    {
        ColoredDgOperad o = com_operad(Q, 3, false);
        TruncatedFreeAlgebra f = free_algebra(o, {{0, pt(Q)}}, 3);
        IdealSpans gens;
        gens[0][0] = unit_column(Q, 3, 1);
        AlgebraPresentation a = quotient_algebra(f, ideal_closure(f, gens));
        SplittingReport r = ideal_stability_check(rational_splitting(o), a, 0, 0, 3);
        if (!r.ok) {
            why = "ideal stability (Com/Q): " + r.message;
            return false;
        }
    }
    {
        SigmaSplitting s = planar_splitting(planar_com_operad(f2, 3, false));
        TruncatedFreeAlgebra f = free_algebra(s.operad, {{0, pt(f2)}}, 3);
        IdealSpans gens;
        gens[0][0] = unit_column(f2, 3, 1);
        AlgebraPresentation a = quotient_algebra(f, ideal_closure(f, gens));
        SplittingReport r = ideal_stability_check(s, a, 0, 0, 3);
        if (!r.ok) {
            why = "ideal stability (Ass/F2): " + r.message;
            return false;
        }
    }
    return true;
}

bool criterion4(std::string& why) {
    CoeffRing f2 = CoeffRing::prime_field(2);
    // hand oracle: Sym^2 of the cone over F2 has H^0 = F2.[x^2]. Basis after
    // identifying x(x)y ~ y(x)x: degree 0 {x^2}, degree 1 {xy}, degree 2 {y^2};
    // d(x^2) = 2.xy = 0, d(xy) = y^2.
    Matrix d0(f2, 1, 1);
    d0.set(0, 0, f2.norm(2));  // = 0 over F2
    if (rank(d0) != 0) {
        why = "hand oracle: d(x^2) should vanish over F2";
        return false;
    }
    ColoredDgOperad com_q = com_operad(Q, 2, false);
    if (!admissibility_probe(com_q, initial_algebra(com_q, 2), 0, 0, 2).consistent) {
        why = "Com/Q should be consistent";
        return false;
    }
    ColoredDgOperad ass_f2 = ass_operad(f2, 2);
    if (!admissibility_probe(ass_f2, initial_algebra(ass_f2, 2), 0, 0, 2).consistent) {
        why = "Ass/F2 should be consistent";
        return false;
    }
    ColoredDgOperad com_f2 = com_operad(f2, 2, false);
    AlgebraPresentation initial = initial_algebra(com_f2, 2);
    // cross-check the defect against the coproduct construction
    AlgebraPresentation b =
        coproduct_with_free(initial, {{0, cone_of_identity(f2, 0)}}, 2);
    HomologyReport h = homology(b.component(0));
    if (h[0].free_rank != 1) {
        why = "coproduct H^0 rank is " + std::to_string(h[0].free_rank);
        return false;
    }
    if (admissibility_probe(com_f2, initial, 0, 0, 2).consistent) {
        why = "Com/F2 should fail";
        return false;
    }
    Workspace ws;
    VerbOptions opt;
    opt.operad = "Com";
    opt.ring = "Fp:2";
    opt.max_arity = 2;
    VerbReport r = run_verb("probe-admissibility", opt, ws);
    if (r.exit_code != 1 ||
        r.machine.at("witness") != "nonzero H⁰ class x² in the arity-2 component") {
        why = "reported witness '" + r.machine.at("witness").get<std::string>() + "'";
        return false;
    }
    return true;
}

bool criterion5(std::string& why) {
    for (const CoeffRing& ring : {Q, Z, CoeffRing::prime_field(5)}) {
        ColoredDgOperad o = com_operad(ring, 3, false);
        DgComplex zero;
        zero.ring = ring;
        DgComplex w = pt(ring);
        std::map<int, GradedMap> f_free{{0, GradedMap::zero(zero, w)}};
        std::string label = "ring " + ring_to_string(ring) + ": ";
        std::string sub;
        if (!filtration_instance(o, initial_algebra(o, 3), f_free, {}, 3, sub)) {
            why = label + "initial + free generator: " + sub;
            return false;
        }
        if (!filtration_instance(o, square_zero(o, 3), f_free, {}, 3, sub)) {
            why = label + "square-zero + free generator: " + sub;
            return false;
        }
        AlgebraPresentation a = square_zero(o, 3);
        std::map<int, GradedMap> f_id{{0, GradedMap::identity(w)}};
        GradedMap g0 = GradedMap::zero(w, a.component(0));
        g0.set_block(0, Matrix::identity(ring, 1));
        if (!filtration_instance(o, a, f_id, {{0, g0}}, 3, sub)) {
            why = label + "identity attachment: " + sub;
            return false;
        }
    }
    return true;
}

bool criterion6(std::string& why) {
    for (const CoeffRing& ring : {Q, Z, CoeffRing::prime_field(5)}) {
        std::string label = "ring " + ring_to_string(ring) + ": ";
        for (bool assoc : {false, true}) {
            ColoredDgOperad o =
                assoc ? ass_operad(ring, 3) : com_operad(ring, 3, false);
            TruncatedFreeAlgebra f = free_algebra(o, {{0, pt(ring)}}, 3);
            for (int n = 1; n <= 3; ++n) {
                long got = f.pieces.at(0)[n - 1].coinv.quotient.total_rank();
                if (got != 1) {
                    why = label + "arity " + std::to_string(n) + " rank " +
                          std::to_string(got);
                    return false;
                }
            }
        }
        TruncatedFreeAlgebra f2g =
            free_algebra(ass_operad(ring, 3), {{0, pt(ring, 2)}}, 2);
        if (f2g.component(0).total_rank() != 6) {
            why = label + "two-generator rank " +
                  std::to_string(f2g.component(0).total_rank());
            return false;
        }
    }
    return true;
}

bool criterion7(std::string& why) {
    ColoredDgOperad o = com_operad(Q, 3, false);
    EnvelopingOperad e = enveloping_operad(o, initial_algebra(o, 3), 3);
    for (int n = 1; n <= 3; ++n)
        if (e.env.component(mk(n)) != o.component(mk(n))) {
            why = "env of the initial algebra differs at arity " + std::to_string(n);
            return false;
        }
    if (e.env.comp(mk(2), 0, mk(2)) != o.comp(mk(2), 0, mk(2)) ||
        e.env.units.at(0) != o.units.at(0)) {
        why = "env of the initial algebra has different compositions";
        return false;
    }
    // rank oracles: k[a]/(a^2) over Com gives {phi, a.phi}; over Ass the
    // endomorphism side is {id, a.-, -.a, a.-.a}
    EnvelopingOperad e2 = enveloping_operad(o, square_zero(o, 3), 3);
    if (e2.env.component(CompKey{{0}, 0}).total_rank() != 2) {
        why = "Com U(A) rank is not 2";
        return false;
    }
    ColoredDgOperad ass = ass_operad(Q, 3);
    EnvelopingCategory cat = enveloping_category(ass, square_zero(ass, 3), 1);
    if (cat.hom(0, 0).total_rank() != 4) {
        why = "Ass U(A) rank is not 4";
        return false;
    }
    // module <-> representation round trip
    ColoredDgOperad cu = com_operad(Q, 3, true);
    AlgebraPresentation a = square_zero(cu, 2);
    EnvelopingOperad eu = enveloping_operad(cu, a, 2);
    ModuleOverAlgebra m = regular_module(a, 2);
    CategoryRepresentation rep = module_to_representation(eu, m);
    ModuleOverAlgebra m2 = representation_to_module(eu, rep, 2);
    for (const auto& [key, act] : m.action)
        if (m2.action_map(key) != act) {
            why = "round trip differs at " + key_to_string(key);
            return false;
        }
    for (const auto& [key, act] : m2.action)
        if (m.action_map(key) != act) {
            why = "round trip differs at " + key_to_string(key);
            return false;
        }
    return true;
}

bool criterion8(std::string& why) {
    ColoredDgOperad cu = com_operad(Q, 5, true);
    ColoredDgOperad ass = ass_operad(Q, 5);
    auto fact = [](int n) {
        long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; m + n <= 6; ++n) {
            std::vector<int> c(m, 0), d(n, 0);
            long com_got = prop_hom(cu, c, d).hom.total_rank();
            long com_want = 1;
            for (int i = 0; i < m; ++i) com_want *= n;
            if (com_got != com_want) {
                why = "unital Com hom(" + std::to_string(m) + "," +
                      std::to_string(n) + ") rank " + std::to_string(com_got) +
                      " != " + std::to_string(com_want);
                return false;
            }
            // oracle: sum over surjections f: [m] ->> [n] of prod |fiber|!
            long ass_want = 0;
            std::vector<int> f(m, 0);
            bool more = true;
            while (more) {
                std::vector<int> fiber(n, 0);
                for (int i = 0; i < m; ++i) fiber[f[i]]++;
                bool onto = true;
                long w = 1;
                for (int j = 0; j < n; ++j) {
                    if (fiber[j] == 0) onto = false;
                    w *= fact(fiber[j]);
                }
                if (onto) ass_want += w;
                more = false;
                for (int i = m - 1; i >= 0; --i) {
                    if (++f[i] < n) {
                        more = true;
                        break;
                    }
                    f[i] = 0;
                }
            }
            long ass_got = prop_hom(ass, c, d).hom.total_rank();
            if (ass_got != ass_want) {
                why = "Ass hom(" + std::to_string(m) + "," + std::to_string(n) +
                      ") rank " + std::to_string(ass_got) + " != " +
                      std::to_string(ass_want);
                return false;
            }
        }
    return true;
}

bool criterion9(std::string& why) {
    ColoredDgOperad com3 = com_operad(Q, 3, false);
    AxiomReport ax = check_operad_axioms(module_operad(com3));
    if (!ax.ok) {
        why = "MO axioms: " + ax.message;
        return false;
    }
    SplittingReport r =
        check_splitting(induced_splitting_on_MO(rational_splitting(com3)));
    if (!r.ok) {
        why = "induced rational splitting: " + r.message;
        return false;
    }
    CoeffRing f2 = CoeffRing::prime_field(2);
    SigmaSplitting planar = planar_splitting(planar_com_operad(f2, 2, false));
    AxiomReport ax2 = check_operad_axioms(module_operad(planar.operad));
    if (!ax2.ok) {
        why = "MO axioms over F2: " + ax2.message;
        return false;
    }
    SplittingReport r2 = check_splitting(induced_splitting_on_MO(planar));
    if (!r2.ok) {
        why = "induced planar splitting: " + r2.message;
        return false;
    }
    return true;
}

bool criterion10(std::string& why) {
    for (int n = 0; n <= 2; ++n)
        for (int d = 1; d <= 3; ++d) {
            std::string label =
                "Omega_" + std::to_string(n) + " at D=" + std::to_string(d) + ": ";
            PolyForms forms = omega_forms(n, d, Q);
            for (int i = 0; n >= 1 && i <= n; ++i)
                if (!omega_face(forms, i).is_chain_map()) {
                    why = label + "face " + std::to_string(i);
                    return false;
                }
            for (int j = 0; j <= n; ++j)
                if (!omega_degen(forms, j).is_chain_map()) {
                    why = label + "degeneracy " + std::to_string(j);
                    return false;
                }
            int cap = std::min<int>(8, static_cast<int>(forms.basis.size()));
            for (int i = 0; i < cap; ++i)
                for (int j = 0; j < cap; ++j) {
                    PolyForms::Vec u = forms.mono_vec(forms.basis[i]);
                    PolyForms::Vec v = forms.mono_vec(forms.basis[j]);
                    int du = static_cast<int>(forms.basis[i].S.size());
                    PolyForms::Vec lhs = forms.d(forms.mul(u, v));
                    PolyForms::Vec rhs = forms.mul(forms.d(u), v);
                    for (const auto& [k, val] : forms.mul(u, forms.d(v)))
                        rhs[k] += (du % 2 ? -val : val);
                    for (const auto& [k, val] : lhs)
                        if (val != (rhs.count(k) ? rhs.at(k) : 0)) {
                            why = label + "Leibniz fails";
                            return false;
                        }
                    for (const auto& [k, val] : rhs)
                        if (val != (lhs.count(k) ? lhs.at(k) : 0)) {
                            why = label + "Leibniz fails";
                            return false;
                        }
                }
            HomologyReport h = homology(forms.complex);
            for (const auto& [deg, g] : h) {
                bool want_k = deg == 0;
                if (g.free_rank != (want_k ? 1 : 0) || !g.torsion.empty()) {
                    why = label + "H at degree " + std::to_string(deg);
                    return false;
                }
            }
        }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        double limit_s;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> criteria = {
        {1, "Dold-Kan identities on a seeded corpus", 30, criterion1},
        {2, "Sigma-splitting axioms (SPL/INV/COM)", 60, criterion2},
        {3, "homotopy identity dH + Hd = id - F(alpha) and ideal stability", 60,
         criterion3},
        {4, "admissibility probe trichotomy with exact witness", 10, criterion4},
        {5, "pushout filtration equals the direct pushout", 120, criterion5},
        {6, "free-algebra closed-form ranks", 5, criterion6},
        {7, "enveloping operad, category, and module round trip", 30, criterion7},
        {8, "PROP hom ranks against counting oracles", 10, criterion8},
        {9, "module operad inherits both canonical splittings", 30, criterion9},
        {10, "polynomial forms: simplicial dga identities and homology", 10,
         criterion10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string why;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ok && secs >= c.limit_s) {
            ok = false;
            why = "runtime limit exceeded";
        }
        std::ostringstream line;
        line << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " - "
             << c.title << " (" << std::fixed << std::setprecision(1) << secs
             << "s)";
        if (!ok) line << " [" << why << "]";
        std::cout << line.str() << std::endl;
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
