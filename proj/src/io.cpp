#include "opforge/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace opforge {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

// best-effort: the line where the object's name literal occurs
int line_of_name(const std::string& text, const std::string& name) {
    std::size_t pos = text.find("\"" + name + "\"");
    return pos == std::string::npos ? 1 : line_of_offset(text, pos);
}

std::string where(const std::string& file, int line) {
    return file + ":" + std::to_string(line);
}

int int_key(const std::string& s) {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer key '" + s + "'");
    return v;
}

std::map<int, Matrix> blocks_from_json(const CoeffRing& ring, const DgComplex& src,
                                       const DgComplex& tgt, int degree,
                                       const json& j) {
    std::map<int, Matrix> blocks;
    for (const auto& [k, v] : j.items()) {
        int n = int_key(k);
        blocks[n] = matrix_from_triplets(ring, tgt.rank(n + degree), src.rank(n), v);
    }
    return blocks;
}

GradedMap map_from_json(const CoeffRing& ring, const DgComplex& src,
                        const DgComplex& tgt, const json& j) {
    GradedMap f = GradedMap::zero(src, tgt, j.value("degree", 0));
    if (j.contains("blocks"))
        for (auto& [n, m] : blocks_from_json(ring, src, tgt, f.degree, j.at("blocks")))
            f.set_block(n, m);
    f.validate();
    return f;
}

struct Loader {
    Workspace& ws;
    const std::string& file;
    const std::string& text;
    std::set<std::string>& names;

    [[noreturn]] void fail(const std::string& name, const std::string& invariant,
                           const std::string& detail) const {
        throw ValidationError(where(file, line_of_name(text, name)) + ": " +
                              invariant + ": " + detail);
    }

    const DgComplex& complex_ref(const std::string& name, const std::string& owner) const {
        auto it = ws.complexes.find(name);
        if (it == ws.complexes.end())
            fail(owner, "unresolved reference", "complex '" + name + "'");
        return it->second;
    }
    const ColoredDgOperad& operad_ref(const std::string& name,
                                      const std::string& owner) const {
        auto it = ws.operads.find(name);
        if (it == ws.operads.end())
            fail(owner, "unresolved reference", "operad '" + name + "'");
        return it->second;
    }
    const AlgebraPresentation& algebra_ref(const std::string& name,
                                           const std::string& owner) const {
        auto it = ws.algebras.find(name);
        if (it == ws.algebras.end())
            fail(owner, "unresolved reference", "algebra '" + name + "'");
        return it->second;
    }

    DgComplex complex_or_ref(const json& j, const std::string& owner) const {
        if (j.is_string()) return complex_ref(j.get<std::string>(), owner);
        return complex_from_json(ws.ring, j);
    }

    void load_ring(const std::string& name, const json& j) {
        CoeffRing r = ring_from_string(j.at("ring").get<std::string>());
        if (ws.ring_set && !(r == ws.ring))
            fail(name, "ring consistency", "the workspace ring is already set");
        ws.ring = r;
        ws.ring_set = true;
    }

    void load_complex(const std::string& name, const json& j) {
        try {
            ws.complexes[name] = complex_from_json(ws.ring, j);
        } catch (const std::invalid_argument& e) {
            fail(name, "complex invariants", e.what());
        }
    }

    void load_map(const std::string& name, const json& j) {
        const DgComplex& src = complex_ref(j.at("source").get<std::string>(), name);
        const DgComplex& tgt = complex_ref(j.at("target").get<std::string>(), name);
        try {
            ws.maps[name] = map_from_json(ws.ring, src, tgt, j);
        } catch (const std::invalid_argument& e) {
            fail(name, "map shapes", e.what());
        }
    }

    ColoredDgOperad builtin_operad(const std::string& name, const json& j) const {
        std::string which = j.at("builtin").get<std::string>();
        int bound = j.value("max_arity", 3);
        bool unital = j.value("unital", false);
        if (which == "Com" || which == "ComU")
            return com_operad(ws.ring, bound, unital || which == "ComU");
        if (which == "Ass") return ass_operad(ws.ring, bound);
        fail(name, "builtin operad", "unknown builtin '" + which + "'");
    }

    void load_operad(const std::string& name, const json& j) {
        ColoredDgOperad o;
        if (j.contains("builtin")) {
            o = builtin_operad(name, j);
        } else {
            o.ring = ws.ring;
            o.colors = j.at("colors").get<std::vector<std::string>>();
            o.arity_bound = j.at("arity_bound").get<int>();
            try {
                for (const auto& [k, v] : j.at("components").items())
                    o.set_component(key_from_string(k), complex_or_ref(v, name));
                if (j.contains("sym"))
                    for (const auto& [k, v] : j.at("sym").items()) {
                        std::size_t at = k.rfind('@');
                        CompKey key = key_from_string(k.substr(0, at));
                        int i = std::stoi(k.substr(at + 1));
                        CompKey swapped = key;
                        std::swap(swapped.in[i], swapped.in[i + 1]);
                        o.set_sym(key, i,
                                  map_from_json(ws.ring, o.component(key),
                                                o.component(swapped), v));
                    }
                if (j.contains("comps"))
                    for (const auto& [k, v] : j.at("comps").items()) {
                        std::size_t a1 = k.find('@');
                        std::size_t a2 = k.find('@', a1 + 1);
                        CompKey outer = key_from_string(k.substr(0, a1));
                        int i = std::stoi(k.substr(a1 + 1, a2 - a1 - 1));
                        CompKey inner = key_from_string(k.substr(a2 + 1));
                        DgComplex src = tensor_many({o.component(outer), o.component(inner)});
                        o.set_comp(outer, i, inner,
                                   map_from_json(ws.ring, src,
                                                 o.component(composed_key(outer, i, inner)),
                                                 v));
                    }
                if (j.contains("units"))
                    for (const auto& [k, v] : j.at("units").items()) {
                        int c = int_key(k);
                        CompKey uk{{c}, c};
                        o.units[c] = matrix_from_triplets(
                            ws.ring, o.component(uk).rank(0), 1, v);
                    }
            } catch (const std::invalid_argument& e) {
                fail(name, "operad data", e.what());
            }
        }
        AxiomReport rep = check_operad_axioms(o);
        if (!rep.ok) fail(name, "operad axioms", rep.message);
        ws.operads[name] = o;
    }

    void load_algebra(const std::string& name, const json& j) {
        const ColoredDgOperad& o = operad_ref(j.at("operad").get<std::string>(), name);
        int truncation = j.at("truncation").get<int>();
        ColorIndexedComplexes gens;
        if (j.contains("generators"))
            for (const auto& [k, v] : j.at("generators").items())
                gens[int_key(k)] = complex_or_ref(v, name);
        try {
            TruncatedFreeAlgebra f = free_algebra(o, gens, truncation);
            IdealSpans seeds;
            if (j.contains("ideal"))
                for (const auto& [c, per_deg] : j.at("ideal").items())
                    for (const auto& [d, v] : per_deg.items()) {
                        int color = int_key(c), deg = int_key(d);
                        int rows = f.component(color).rank(deg);
                        int cols = 0;
                        for (const auto& t : v)
                            cols = std::max(cols, t.at(1).get<int>() + 1);
                        seeds[color][deg] =
                            matrix_from_triplets(ws.ring, rows, cols, v);
                    }
            ws.algebras[name] = quotient_algebra(f, ideal_closure(f, seeds));
        } catch (const std::exception& e) {
            fail(name, "algebra presentation", e.what());
        }
    }

    void load_splitting(const std::string& name, const json& j) {
        std::string type = j.value("type", "explicit");
        SigmaSplitting s;
        try {
            if (type == "rational") {
                s = rational_splitting(
                    operad_ref(j.at("operad").get<std::string>(), name));
            } else if (type == "planar") {
                std::string which = j.value("builtin", "Com");
                if (which != "Com" && which != "ComU")
                    fail(name, "planar splitting", "unknown planar builtin '" + which + "'");
                s = planar_splitting(planar_com_operad(ws.ring, j.value("max_arity", 3),
                                                       j.value("unital", false) ||
                                                           which == "ComU"));
            } else {
                s.operad = operad_ref(j.at("operad").get<std::string>(), name);
                for (const auto& [k, v] : j.at("t").items()) {
                    CompKey key = key_from_string(k);
                    DgComplex c = s.operad.component(key);
                    std::vector<ChainMap> ts;
                    for (const auto& b : v) ts.push_back(map_from_json(ws.ring, c, c, b));
                    s.t[key] = ts;
                }
            }
        } catch (const std::exception& e) {
            fail(name, "splitting data", e.what());
        }
        SplittingReport rep = check_splitting(s);
        if (!rep.ok) fail(name, "SPL/INV/COM", rep.message);
        ws.splittings[name] = s;
    }

    void load_simplicial_module(const std::string& name, const json& j) {
        SimplicialModule m;
        if (j.value("builtin", "") == "constant") {
            m = SimplicialModule::constant(ws.ring, j.at("n_max").get<int>(),
                                           j.value("rank", 1));
        } else {
            m.ring = ws.ring;
            m.n_max = j.at("n_max").get<int>();
            m.levels = j.at("levels").get<std::vector<int>>();
            auto parse_table = [&](const json& tbl, bool faces) {
                for (const auto& [k, v] : tbl.items()) {
                    std::size_t comma = k.find(',');
                    int lvl = std::stoi(k.substr(0, comma));
                    int idx = std::stoi(k.substr(comma + 1));
                    int tgt = faces ? lvl - 1 : lvl + 1;
                    Matrix mat = matrix_from_triplets(ws.ring, m.level(tgt),
                                                      m.level(lvl), v);
                    if (faces)
                        m.faces[{lvl, idx}] = mat;
                    else
                        m.degens[{lvl, idx}] = mat;
                }
            };
            if (j.contains("faces")) parse_table(j.at("faces"), true);
            if (j.contains("degens")) parse_table(j.at("degens"), false);
        }
        try {
            m.validate();
        } catch (const std::exception& e) {
            fail(name, "simplicial identities", e.what());
        }
        ws.simplicial_modules[name] = m;
    }

    void load_simplicial_set(const std::string& name, const json& j) {
        std::string which = j.at("builtin").get<std::string>();
        int n_max = j.at("n_max").get<int>();
        FiniteSimplicialSet s;
        if (which == "point")
            s = FiniteSimplicialSet::point(n_max);
        else if (which == "simplex")
            s = FiniteSimplicialSet::simplex(j.at("n").get<int>(), n_max);
        else if (which == "boundary")
            s = FiniteSimplicialSet::boundary_of_simplex(j.at("n").get<int>(), n_max);
        else
            fail(name, "builtin simplicial set", "unknown builtin '" + which + "'");
        try {
            s.validate(ws.ring);
        } catch (const std::exception& e) {
            fail(name, "simplicial identities", e.what());
        }
        ws.simplicial_sets[name] = s;
    }

    void load_module(const std::string& name, const json& j) {
        const AlgebraPresentation& a =
            algebra_ref(j.at("algebra").get<std::string>(), name);
        int window = j.at("window").get<int>();
        if (j.value("regular", false)) {
            ws.modules[name] = regular_module(a, window);
            return;
        }
        ModuleOverAlgebra m;
        m.operad = operad_ref(j.at("operad").get<std::string>(), name);
        m.algebra = a;
        m.window = window;
        try {
            for (const auto& [k, v] : j.at("carriers").items())
                m.carriers[int_key(k)] = complex_or_ref(v, name);
            for (const auto& [k, v] : j.at("action").items()) {
                CompKey key = key_from_string(k);
                std::vector<DgComplex> factors = {m.operad.component(key)};
                for (int t = 0; t + 1 < key.arity(); ++t)
                    factors.push_back(a.component(key.in[t]));
                factors.push_back(m.carriers[key.in.back()]);
                m.action[key] = map_from_json(ws.ring, tensor_many(factors),
                                              m.carriers.count(key.out)
                                                  ? m.carriers[key.out]
                                                  : DgComplex{ws.ring, {}, {}},
                                              v);
            }
        } catch (const std::exception& e) {
            fail(name, "module data", e.what());
        }
        ws.modules[name] = m;
    }

    void load_object(const json& j) {
        std::string kind = j.at("kind").get<std::string>();
        std::string name = j.at("name").get<std::string>();
        if (kind != "ring") {
            if (names.count(name))
                fail(name, "unique names", "name '" + name + "' already defined");
            names.insert(name);
        }
        if (kind == "ring")
            load_ring(name, j);
        else if (kind == "complex")
            load_complex(name, j);
        else if (kind == "map")
            load_map(name, j);
        else if (kind == "operad")
            load_operad(name, j);
        else if (kind == "algebra")
            load_algebra(name, j);
        else if (kind == "splitting")
            load_splitting(name, j);
        else if (kind == "simplicial_module")
            load_simplicial_module(name, j);
        else if (kind == "simplicial_set")
            load_simplicial_set(name, j);
        else if (kind == "module")
            load_module(name, j);
        else
            fail(name, "object kind", "unknown kind '" + kind + "'");
    }
};

}  // namespace

Matrix matrix_from_triplets(const CoeffRing& ring, int rows, int cols,
                            const nlohmann::json& j) {
    Matrix m(ring, rows, cols);
    for (const auto& t : j) {
        int r = t.at(0).get<int>(), c = t.at(1).get<int>();
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::invalid_argument("matrix entry (" + std::to_string(r) + "," +
                                        std::to_string(c) + ") out of shape " +
                                        std::to_string(rows) + "x" +
                                        std::to_string(cols));
        m.set(r, c, parse_scalar(t.at(2).get<std::string>()));
    }
    return m;
}

nlohmann::json matrix_to_triplets(const Matrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [rc, v] : m.entries())
        j.push_back({rc.first, rc.second, scalar_to_string(v)});
    return j;
}

CoeffRing ring_from_string(const std::string& s) {
    if (s == "Q") return CoeffRing::rationals();
    if (s == "Z") return CoeffRing::integers();
    if (s.rfind("Fp:", 0) == 0) {
        int p = std::stoi(s.substr(3));
        return CoeffRing::prime_field(p);
    }
    if (s == "F2") return CoeffRing::prime_field(2);  // common shorthand
    if (s.rfind("F", 0) == 0 && s.size() > 1 &&
        std::isdigit(static_cast<unsigned char>(s[1])))
        return CoeffRing::prime_field(std::stoi(s.substr(1)));
    throw std::invalid_argument("bad ring '" + s + "' (expected Q, Z, or Fp:<p>)");
}

std::string ring_to_string(const CoeffRing& r) {
    switch (r.kind) {
        case CoeffRing::Kind::Rationals: return "Q";
        case CoeffRing::Kind::Integers: return "Z";
        default: return "Fp:" + std::to_string(r.p);
    }
}

CompKey key_from_string(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    std::size_t bar = body.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("bad component key '" + s + "'");
    CompKey k;
    k.out = std::stoi(body.substr(bar + 1));
    std::string ins = body.substr(0, bar);
    std::stringstream ss(ins);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) k.in.push_back(std::stoi(tok));
    return k;
}

nlohmann::json complex_to_json(const DgComplex& x) {
    nlohmann::json ranks = nlohmann::json::object();
    for (const auto& [n, r] : x.ranks) ranks[std::to_string(n)] = r;
    nlohmann::json diffs = nlohmann::json::object();
    for (const auto& [n, d] : x.diffs)
        if (!d.is_zero()) diffs[std::to_string(n)] = matrix_to_triplets(d);
    return {{"ranks", ranks}, {"diffs", diffs}};
}

DgComplex complex_from_json(const CoeffRing& ring, const nlohmann::json& j) {
    DgComplex x;
    x.ring = ring;
    if (j.contains("ranks"))
        for (const auto& [k, v] : j.at("ranks").items()) {
            int n = int_key(k), r = v.get<int>();
            if (r != 0) x.ranks[n] = r;
        }
    if (j.contains("diffs"))
        for (const auto& [k, v] : j.at("diffs").items()) {
            int n = int_key(k);
            Matrix d = matrix_from_triplets(ring, x.rank(n + 1), x.rank(n), v);
            if (!d.is_zero()) x.diffs[n] = d;
        }
    x.validate();
    return x;
}

Workspace parse_workspace(const std::vector<std::string>& files) {
    Workspace ws;
    std::set<std::string> names;
    for (const std::string& file : files) {
        std::ifstream in(file);
        if (!in) throw ParseError(file + ":1: cannot open file");
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(where(file, line_of_offset(text, e.byte)) + ": " +
                             e.what());
        }
        if (doc.value("schema", "") != "opforge/1")
            throw ParseError(file + ":1: missing or unsupported schema (want opforge/1)");
        Loader loader{ws, file, text, names};
        try {
            for (const auto& obj : doc.value("objects", nlohmann::json::array()))
                loader.load_object(obj);
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError&) {
            throw;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(file + ":1: " + e.what());
        }
    }
    return ws;
}

}  // namespace opforge
