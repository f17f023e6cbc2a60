#include "opforge/verbs.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace opforge {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) {
        s += l;
        s += '\n';
    }
    return s;
}

VerbReport finish(const std::string& verb, const VerbOptions& opt,
                  const CoeffRing& ring, const std::string& invariant, bool ok,
                  const std::string& witness, std::vector<std::string> lines,
                  json data = json::object()) {
    if (ok)
        lines.push_back(invariant.empty() ? "ok" : invariant + " verified");
    else
        lines.push_back("FAIL: " + witness);
    VerbReport r;
    r.exit_code = ok ? 0 : 1;
    r.text = join(lines);
    r.machine = {{"schema", "opforge/1"},
                 {"verb", verb},
                 {"ring", ring_to_string(ring)},
                 {"seed", opt.seed},
                 {"invariant", invariant},
                 {"verdict", ok ? "pass" : "fail"},
                 {"witness", witness},
                 {"data", data}};
    return r;
}

CoeffRing the_ring(const VerbOptions& opt, const Workspace& ws) {
    if (opt.ring.empty()) return ws.ring;
    try {
        return ring_from_string(opt.ring);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ColoredDgOperad the_operad(const VerbOptions& opt, const Workspace& ws,
                           const CoeffRing& ring) {
    auto it = ws.operads.find(opt.operad);
    if (it != ws.operads.end()) return it->second;
    std::string name = opt.operad.empty() ? "Com" : opt.operad;
    if (name == "Com") return com_operad(ring, opt.max_arity, false);
    if (name == "ComU") return com_operad(ring, opt.max_arity, true);
    if (name == "Ass") return ass_operad(ring, opt.max_arity);
    throw UsageError("unknown operad '" + name +
                     "' (workspace name or Com, ComU, Ass)");
}

AlgebraPresentation initial_algebra(const ColoredDgOperad& o, int truncation) {
    return quotient_algebra(free_algebra(o, {}, truncation), {});
}

// the free algebra on one degree-0 generator at color 0 mod all arity-2 words
AlgebraPresentation square_zero_algebra(const ColoredDgOperad& o, int truncation) {
    TruncatedFreeAlgebra f =
        free_algebra(o, {{0, DgComplex::point(o.ring, 0)}}, truncation);
    IdealSpans gens;
    int p2 = f.piece_index(CompKey{{0, 0}, 0});
    if (p2 >= 0) {
        Matrix cols = f.layout.at(0).incl[p2].block(0);
        if (cols.cols() > 0) gens[0][0] = cols;
    }
    return quotient_algebra(f, ideal_closure(f, gens));
}

AlgebraPresentation the_algebra(const VerbOptions& opt, const Workspace& ws,
                                const ColoredDgOperad& o, int truncation) {
    auto it = ws.algebras.find(opt.algebra);
    if (it != ws.algebras.end()) return it->second;
    if (opt.algebra.empty() || opt.algebra == "initial")
        return initial_algebra(o, truncation);
    if (opt.algebra == "square-zero") return square_zero_algebra(o, truncation);
    throw UsageError("unknown algebra '" + opt.algebra +
                     "' (workspace name or initial, square-zero)");
}

SigmaSplitting the_splitting(const VerbOptions& opt, const Workspace& ws,
                             const CoeffRing& ring, const ColoredDgOperad& o) {
    auto it = ws.splittings.find(opt.splitting);
    if (it != ws.splittings.end()) return it->second;
    std::string name = opt.splitting.empty() ? "rational" : opt.splitting;
    if (name == "rational") {
        try {
            return rational_splitting(o);
        } catch (const CharNotZero& e) {
            throw UsageError(e.what());
        }
    }
    if (name == "planar")
        return planar_splitting(
            planar_com_operad(ring, opt.max_arity, opt.operad == "ComU"));
    throw UsageError("unknown splitting '" + name +
                     "' (workspace name or rational, planar)");
}

int the_truncation(const VerbOptions& opt, const ColoredDgOperad& o) {
    if (opt.truncation > 0) return opt.truncation;
    return std::min(opt.max_arity, o.arity_bound);
}

std::vector<int> parse_tuple(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(std::stoi(tok));
    return v;
}

json ranks_json(const DgComplex& x) {
    json j = json::object();
    for (const auto& [n, r] : x.ranks) j[std::to_string(n)] = r;
    return j;
}

std::string ranks_line(const DgComplex& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [n, r] : x.ranks)
        s += (s.empty() ? "" : ", ") + std::to_string(r) + " in degree " +
             std::to_string(n);
    return s;
}

// a direct sum of points and cones in degrees [-depth, 0], conjugated by a
// seeded unitriangular change of basis in each degree
DgComplex random_complex(const CoeffRing& ring, std::mt19937_64& rng, int depth,
                         int max_summands) {
    DgComplex x;
    x.ring = ring;
    std::map<int, int> ranks;
    std::vector<std::tuple<int, int, int>> ones;  // (degree, row, col)
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

HomotopyData cone_homotopy_data(const CoeffRing& ring, int n_colors, int degree) {
    HomotopyData data;
    for (int c = 0; c < n_colors; ++c) {
        DgComplex v = cone_of_identity(ring, degree);
        data.V[c] = v;
        data.alpha[c] = GradedMap::zero(v, v);
        GradedMap h = GradedMap::zero(v, v, -1);
        Matrix m(ring, 1, 1);
        m.set(0, 0, 1);
        h.set_block(degree + 1, m);
        data.h[c] = h;
    }
    return data;
}

// --- verbs -------------------------------------------------------------------

VerbReport do_check_operad(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    AxiomReport rep = check_operad_axioms(o);
    json data{{"colors", o.colors.size()},
              {"arity_bound", o.arity_bound},
              {"components", o.components.size()}};
    return finish("check-operad", opt, ring, "operad axioms", rep.ok, rep.message,
                  {std::to_string(o.components.size()) + " components checked"},
                  data);
}

VerbReport do_check_splitting(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    SigmaSplitting s = the_splitting(opt, ws, ring, o);
    SplittingReport rep = check_splitting(s);
    json data{{"components", s.t.size()}};
    return finish("check-splitting", opt, ring, "SPL/INV/COM", rep.ok, rep.message,
                  {std::to_string(s.t.size()) + " split components checked"}, data);
}

VerbReport do_homology(const VerbOptions& opt, Workspace& ws) {
    auto it = ws.complexes.find(opt.complex);
    if (it == ws.complexes.end())
        throw UsageError("homology needs --complex naming a workspace complex");
    const DgComplex& x = it->second;
    HomologyReport h = homology(x);
    std::vector<std::string> lines;
    json data = json::object();
    for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
        HomologyGroup g = h.count(n) ? h.at(n) : HomologyGroup{};
        std::string line = "H" + superscript(n) + ": rank " +
                           std::to_string(g.free_rank);
        json tor = json::array();
        for (const auto& t : g.torsion) {
            line += " + Z/" + scalar_to_string(t);
            tor.push_back(scalar_to_string(t));
        }
        lines.push_back(line);
        data[std::to_string(n)] = {{"free_rank", g.free_rank}, {"torsion", tor}};
    }
    if (lines.empty()) lines.push_back("zero complex");
    return finish("homology", opt, x.ring, "", true, "", lines, data);
}

VerbReport do_quasi_iso(const VerbOptions& opt, Workspace& ws) {
    auto it = ws.maps.find(opt.map);
    if (it == ws.maps.end())
        throw UsageError("quasi-iso needs --map naming a workspace map");
    const GradedMap& f = it->second;
    if (f.degree != 0 || !f.is_chain_map())
        throw UsageError("'" + opt.map + "' is not a chain map");
    QuasiIsoResult r = is_quasi_iso(f);
    std::string witness =
        r.ok ? ""
             : "homology differs at degree " + std::to_string(*r.witness_degree);
    return finish("quasi-iso", opt, f.source.ring, "quasi-isomorphism", r.ok,
                  witness, {});
}

VerbReport do_free(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    ColorIndexedComplexes gens;
    if (!opt.generators.empty()) {
        auto it = ws.complexes.find(opt.generators);
        if (it == ws.complexes.end())
            throw UsageError("unknown generator complex '" + opt.generators + "'");
        gens[opt.color] = it->second;
    } else {
        gens[opt.color] = DgComplex::point(ring, opt.degree, opt.gen_rank);
    }
    TruncatedFreeAlgebra f = free_algebra(o, gens, truncation);
    std::vector<std::string> lines;
    json data = json::object();
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        DgComplex comp = f.component(static_cast<int>(c));
        lines.push_back("color " + std::to_string(c) + ": " + ranks_line(comp));
        json pieces = json::array();
        auto pit = f.pieces.find(static_cast<int>(c));
        if (pit != f.pieces.end())
            for (const auto& p : pit->second)
                pieces.push_back({{"key", key_to_string(p.key)},
                                  {"rank", p.coinv.quotient.total_rank()}});
        data[std::to_string(c)] = {{"ranks", ranks_json(comp)}, {"pieces", pieces}};
    }
    return finish("free", opt, ring, "", true, "", lines, data);
}

VerbReport do_probe(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
    ProbeVerdict v = admissibility_probe(o, a, opt.color, opt.degree, truncation);
    if (v.consistent)
        return finish("probe-admissibility", opt, ring, "admissible operad", true,
                      "", {"consistent at truncation " + std::to_string(truncation)});
    std::string witness = v.witness;
    std::vector<std::string> lines;
    bool is_initial = a.free_part.generators.empty() && a.ideal.empty();
    if (is_initial) {
        // locate the defect in the free algebra on the adjoined cone
        TruncatedFreeAlgebra f = free_algebra(
            o, {{opt.color, cone_of_identity(ring, opt.degree)}}, truncation);
        std::vector<std::tuple<int, int, int>> order;  // (arity, color, piece)
        for (const auto& [c, pieces] : f.pieces)
            for (std::size_t p = 0; p < pieces.size(); ++p)
                order.emplace_back(pieces[p].key.arity(), c, static_cast<int>(p));
        std::sort(order.begin(), order.end());
        for (const auto& [k, c, p] : order) {
            if (k < 1) continue;
            HomologyReport h = homology(f.pieces.at(c)[p].coinv.quotient);
            for (const auto& [dd, g] : h) {
                if (g.is_zero()) continue;
                witness = "nonzero H" + superscript(dd) + " class x" +
                          (k >= 2 ? superscript(k) : "") + " in the arity-" +
                          std::to_string(k) + " component";
                lines.push_back("witness: H" + superscript(dd) + " class x" +
                                (k >= 2 ? superscript(k) : "") + " in arity " +
                                std::to_string(k));
                goto found;
            }
        }
    found:;
    }
    return finish("probe-admissibility", opt, ring, "admissible operad", false,
                  witness, lines);
}

VerbReport do_homotopy_identity(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    SigmaSplitting s;
    if (opt.splitting == "planar") {
        s = the_splitting(opt, ws, ring, ColoredDgOperad{});
    } else {
        ColoredDgOperad o = the_operad(opt, ws, ring);
        s = the_splitting(opt, ws, ring, o);
    }
    HomotopyData data = cone_homotopy_data(
        ring, static_cast<int>(s.operad.colors.size()), opt.degree);
    auto H = free_algebra_homotopy(s, data, s.operad.arity_bound);
    auto A = free_algebra_endomorphism(s.operad, data, s.operad.arity_bound);
    for (const auto& [key, h] : H) {
        GradedMap d = differential_map(h.source);
        if (d.compose(h) + h.compose(d) !=
            GradedMap::identity(h.source) - A.at(key))
            return finish("homotopy-identity", opt, ring,
                          "d∘H + H∘d = id − 𝔽(α)", false,
                          "identity fails at " + key_to_string(key), {});
    }
    return finish("homotopy-identity", opt, ring, "d∘H + H∘d = id − 𝔽(α)", true,
                  "", {std::to_string(H.size()) + " free components checked"});
}

VerbReport do_pushout_filtration(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
    std::map<int, GradedMap> f, g;
    if (!opt.f.empty()) {
        auto it = ws.maps.find(opt.f);
        if (it == ws.maps.end()) throw UsageError("unknown map '" + opt.f + "'");
        f[opt.color] = it->second;
        if (!opt.g.empty()) {
            auto gt = ws.maps.find(opt.g);
            if (gt == ws.maps.end()) throw UsageError("unknown map '" + opt.g + "'");
            g[opt.color] = gt->second;
        }
    } else {
        DgComplex zero;
        zero.ring = ring;
        f[opt.color] = GradedMap::zero(
            zero, DgComplex::point(ring, opt.degree, opt.gen_rank));
    }
    FiltrationReport rep;
    try {
        rep = pushout_filtration(o, a, f, g, truncation);
    } catch (const NotACofibration& e) {
        return finish("pushout-filtration", opt, ring, "colim B_k = pushout",
                      false, e.what(), {});
    }
    std::vector<std::string> lines;
    json stages = json::array();
    for (std::size_t k = 0; k < rep.stages.size(); ++k) {
        json per_color = json::object();
        std::string line = "B_" + std::to_string(k) + ":";
        for (const auto& [c, comp] : rep.stages[k].components) {
            line += " color " + std::to_string(c) + " rank " +
                    std::to_string(comp.total_rank());
            per_color[std::to_string(c)] = ranks_json(comp);
        }
        lines.push_back(line);
        stages.push_back(per_color);
    }
    json direct = json::object();
    std::string dline = "direct pushout:";
    for (std::size_t c = 0; c < o.colors.size(); ++c) {
        DgComplex comp = rep.direct.component(static_cast<int>(c));
        dline += " color " + std::to_string(c) + " rank " +
                 std::to_string(comp.total_rank());
        direct[std::to_string(c)] = ranks_json(comp);
    }
    lines.push_back(dline);
    return finish("pushout-filtration", opt, ring, "colim B_k = pushout", rep.ok,
                  rep.message, lines, {{"stages", stages}, {"direct", direct}});
}

VerbReport do_envelope(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
    EnvelopingOperad e = enveloping_operad(o, a, truncation);
    AxiomReport rep = check_operad_axioms(e.env);
    std::vector<std::string> lines;
    json comps = json::object();
    for (const auto& [key, comp] : e.env.components) {
        lines.push_back("𝒪_A" + key_to_string(key) + ": rank " +
                        std::to_string(comp.total_rank()));
        comps[key_to_string(key)] = ranks_json(comp);
    }
    return finish("envelope", opt, ring, "enveloping operad axioms", rep.ok,
                  rep.message, lines, {{"components", comps}});
}

VerbReport do_check_module(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ModuleOverAlgebra m;
    if (!opt.module.empty()) {
        auto it = ws.modules.find(opt.module);
        if (it == ws.modules.end())
            throw UsageError("unknown module '" + opt.module + "'");
        m = it->second;
        ring = m.operad.ring;
    } else {
        ColoredDgOperad o = the_operad(opt, ws, ring);
        int truncation = the_truncation(opt, o);
        AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
        m = regular_module(a, opt.window > 0 ? opt.window : truncation);
    }
    AxiomReport rep = check_module_axioms(m);
    return finish("check-module", opt, ring, "module axioms", rep.ok, rep.message,
                  {std::to_string(m.action.size()) + " action maps checked"});
}

VerbReport do_dold_kan(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    int n_max = std::max(1, opt.level);
    std::mt19937_64 rng(static_cast<unsigned long long>(opt.seed));
    for (int i = 0; i < std::max(1, opt.count); ++i) {
        DgComplex x = random_complex(ring, rng, std::min(n_max, 3), 4);
        SimplicialModule m = dold_kan_inverse(x, n_max);
        m.validate();
        if (normalized_chains(m).complex != x)
            return finish("dold-kan", opt, ring, "C∘N = id", false,
                          "C∘N ≠ id on seeded instance " + std::to_string(i), {});
    }
    return finish("dold-kan", opt, ring, "C∘N = id", true, "",
                  {std::to_string(std::max(1, opt.count)) +
                   " seeded instances round-tripped"});
}

VerbReport do_em_aw(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    int level = std::max(1, opt.level);
    SimplicialModule m =
        free_module(FiniteSimplicialSet::simplex(1, level), ring);
    SimplicialModule n = free_module(
        FiniteSimplicialSet::simplex(std::max(level - 1, 0), level), ring);
    GradedMap em = eilenberg_maclane(m, n);
    GradedMap aw = alexander_whitney(m, n);
    bool ok = aw.compose(em) == GradedMap::identity(em.source);
    return finish("em-aw", opt, ring, "AW∘EM = id", ok,
                  ok ? "" : "AW∘EM ≠ id at level " + std::to_string(level), {});
}

VerbReport do_omega(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    int n = std::max(0, opt.n);
    int d = opt.truncation > 0 ? opt.truncation : 3;
    PolyForms forms;
    try {
        forms = omega_forms(n, d, ring);
    } catch (const CharNotZero& e) {
        throw UsageError(e.what());
    }
    for (int i = 0; i <= n; ++i)
        if (!omega_face(forms, i).is_chain_map())
            return finish("omega", opt, ring, "H(Ω_n^{≤D}) = k", false,
                          "face " + std::to_string(i) + " is not a chain map", {});
    for (int j = 0; j <= n; ++j)
        if (!omega_degen(forms, j).is_chain_map())
            return finish("omega", opt, ring, "H(Ω_n^{≤D}) = k", false,
                          "degeneracy " + std::to_string(j) + " is not a chain map",
                          {});
    // Leibniz on a sample of basis monomials (the product truncates at D)
    auto vec_eq = [&](const PolyForms::Vec& a, const PolyForms::Vec& b) {
        std::set<int> keys;
        for (const auto& [k, v] : a) keys.insert(k);
        for (const auto& [k, v] : b) keys.insert(k);
        for (int k : keys) {
            mpq_class x = a.count(k) ? a.at(k) : 0, y = b.count(k) ? b.at(k) : 0;
            if (ring.norm(x - y) != 0) return false;
        }
        return true;
    };
    int cap = std::min<int>(6, static_cast<int>(forms.basis.size()));
    for (int i = 0; i < cap; ++i)
        for (int j = 0; j < cap; ++j) {
            PolyForms::Vec u = forms.mono_vec(forms.basis[i]);
            PolyForms::Vec v = forms.mono_vec(forms.basis[j]);
            int du = static_cast<int>(forms.basis[i].S.size());
            PolyForms::Vec lhs = forms.d(forms.mul(u, v));
            PolyForms::Vec rhs = forms.mul(forms.d(u), v);
            for (const auto& [k, val] : forms.mul(u, forms.d(v)))
                rhs[k] += (du % 2 ? -val : val);
            if (!vec_eq(lhs, rhs))
                return finish("omega", opt, ring, "H(Ω_n^{≤D}) = k", false,
                              "Leibniz fails on basis pair (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")",
                              {});
        }
    HomologyReport h = homology(forms.complex);
    for (const auto& [deg, g] : h) {
        if (deg == 0) {
            if (g.free_rank != 1 || !g.torsion.empty())
                return finish("omega", opt, ring, "H(Ω_n^{≤D}) = k", false,
                              "H⁰ has rank " + std::to_string(g.free_rank), {});
        } else if (!g.is_zero()) {
            return finish("omega", opt, ring, "H(Ω_n^{≤D}) = k", false,
                          "nonzero H" + superscript(deg), {});
        }
    }
    return finish("omega", opt, ring, "H(Ω_n^{≤D}) = k", true, "",
                  {"Ω_" + std::to_string(n) + " truncated at " + std::to_string(d) +
                   ": total rank " + std::to_string(forms.complex.total_rank())});
}

VerbReport do_prop_hom(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    std::vector<int> c = parse_tuple(opt.source.empty() ? "0,0" : opt.source);
    std::vector<int> d = parse_tuple(opt.target.empty() ? "0" : opt.target);
    PropHom ph = prop_hom(o, c, d);
    std::vector<std::string> lines{
        "hom rank " + std::to_string(ph.hom.total_rank()) + " over " +
        std::to_string(ph.maps.size()) + " summands"};
    return finish("prop-hom", opt, ring, "", true, "", lines,
                  {{"ranks", ranks_json(ph.hom)}, {"summands", ph.maps.size()}});
}

VerbReport do_prop_check(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
    LaxMonoidalData data;
    int nc = static_cast<int>(o.colors.size());
    for (int c = 0; c < nc; ++c) data.objects[{c}] = a.component(c);
    for (int c = 0; c < nc; ++c)
        for (int d = 0; d < nc; ++d) {
            DgComplex t = tensor(a.component(c), a.component(d));
            data.objects[{c, d}] = t;
            data.comparison[{{c}, {d}}] = GradedMap::identity(t);
        }
    AxiomReport rep = homotopy_prop_algebra_check(o, data);
    return finish("prop-check", opt, ring, "homotopy PROP algebra", rep.ok,
                  rep.message,
                  {std::to_string(data.comparison.size()) + " comparison maps"});
}

VerbReport do_equivalence(const std::string& verb, const VerbOptions& opt,
                          Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    OperadMap f =
        opt.map == "pi" ? pi_projection(o) : identity_operad_map(o);
    bool strong = verb == "strong-eq";
    EquivReport rep =
        strong ? check_strong_equivalence(f) : check_weak_equivalence(f);
    return finish(verb, opt, ring,
                  strong ? "strong equivalence" : "weak equivalence", rep.ok,
                  rep.message,
                  {rep.functor_checked ? "functor condition checked"
                                       : "componentwise check only"});
}

VerbReport do_mo(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    ColoredDgOperad m = module_operad(o);
    AxiomReport rep = check_operad_axioms(m);
    return finish("mo", opt, ring, "M𝒪 operad axioms", rep.ok, rep.message,
                  {std::to_string(m.colors.size()) + " colors, " +
                   std::to_string(m.components.size()) + " components"});
}

VerbReport do_power_by_category(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    FiniteCategory cat;
    if (opt.category == "terminal")
        cat = FiniteCategory::terminal();
    else if (opt.category == "arrow")
        cat = FiniteCategory::arrow();
    else if (opt.category == "square")
        cat = FiniteCategory::commutative_square();
    else
        throw UsageError("unknown category '" + opt.category +
                         "' (terminal, arrow, square)");
    cat.tabulate();
    ColoredDgOperad p = operad_power_by_category(o, cat);
    AxiomReport rep = check_operad_axioms(p);
    return finish("power-by-category", opt, ring, "operad power axioms", rep.ok,
                  rep.message,
                  {std::to_string(p.colors.size()) + " colors, " +
                   std::to_string(p.components.size()) + " components"});
}

VerbReport do_induce(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
    AlgebraPresentation b =
        induce_along(identity_operad_map(o), a, truncation);
    AxiomReport rep = check_algebra_axioms(algebra_of(b));
    std::vector<std::string> lines;
    for (std::size_t c = 0; c < o.colors.size(); ++c)
        lines.push_back("color " + std::to_string(c) + ": " +
                        ranks_line(b.component(static_cast<int>(c))));
    return finish("induce", opt, ring, "algebra axioms", rep.ok, rep.message,
                  lines);
}

VerbReport do_restrict(const VerbOptions& opt, Workspace& ws) {
    CoeffRing ring = the_ring(opt, ws);
    ColoredDgOperad o = the_operad(opt, ws, ring);
    int truncation = the_truncation(opt, o);
    AlgebraPresentation a = the_algebra(opt, ws, o, truncation);
    OperadAlgebra conc = algebra_of(a);
    OperadMap f =
        opt.map == "pi" ? pi_projection(o) : identity_operad_map(o);
    OperadAlgebra b = restrict_along(f, conc);
    AxiomReport rep = check_algebra_axioms(b);
    return finish("restrict", opt, ring, "algebra axioms", rep.ok, rep.message,
                  {std::to_string(b.structure.size()) + " structure maps"});
}

}  // namespace

std::string superscript(int n) {
    static const char* digits[10] = {"⁰", "¹", "²", "³", "⁴",
                                     "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s;
    if (n < 0) {
        s += "⁻";
        n = -n;
    }
    for (char c : std::to_string(n)) s += digits[c - '0'];
    return s;
}

const std::vector<std::string>& verb_names() {
    static const std::vector<std::string> names = {
        "check-operad",      "check-splitting", "homology",
        "quasi-iso",         "free",            "probe-admissibility",
        "homotopy-identity", "pushout-filtration", "envelope",
        "check-module",      "dold-kan",        "em-aw",
        "omega",             "prop-hom",        "prop-check",
        "weq",               "strong-eq",       "mo",
        "power-by-category", "induce",          "restrict"};
    return names;
}

VerbReport run_verb(const std::string& verb, const VerbOptions& opt,
                    Workspace& ws) {
    if (verb == "check-operad") return do_check_operad(opt, ws);
    if (verb == "check-splitting") return do_check_splitting(opt, ws);
    if (verb == "homology") return do_homology(opt, ws);
    if (verb == "quasi-iso") return do_quasi_iso(opt, ws);
    if (verb == "free") return do_free(opt, ws);
    if (verb == "probe-admissibility") return do_probe(opt, ws);
    if (verb == "homotopy-identity") return do_homotopy_identity(opt, ws);
    if (verb == "pushout-filtration") return do_pushout_filtration(opt, ws);
    if (verb == "envelope") return do_envelope(opt, ws);
    if (verb == "check-module") return do_check_module(opt, ws);
    if (verb == "dold-kan") return do_dold_kan(opt, ws);
    if (verb == "em-aw") return do_em_aw(opt, ws);
    if (verb == "omega") return do_omega(opt, ws);
    if (verb == "prop-hom") return do_prop_hom(opt, ws);
    if (verb == "prop-check") return do_prop_check(opt, ws);
    if (verb == "weq" || verb == "strong-eq") return do_equivalence(verb, opt, ws);
    if (verb == "mo") return do_mo(opt, ws);
    if (verb == "power-by-category") return do_power_by_category(opt, ws);
    if (verb == "induce") return do_induce(opt, ws);
    if (verb == "restrict") return do_restrict(opt, ws);
    throw UsageError("unknown verb '" + verb + "'");
}

}  // namespace opforge
