#pragma once

#include <string>
#include <vector>

#include "opforge/envelope.hpp"

#include "json.hpp"

namespace opforge {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Named objects loaded from .opf files; every structural invariant is checked
// at load time. Names are unique across kinds; references resolve to objects
// defined earlier (within the same file or an earlier one).
struct Workspace {
    CoeffRing ring = CoeffRing::rationals();
    bool ring_set = false;
    std::map<std::string, DgComplex> complexes;
    std::map<std::string, GradedMap> maps;
    std::map<std::string, ColoredDgOperad> operads;
    std::map<std::string, AlgebraPresentation> algebras;
    std::map<std::string, SigmaSplitting> splittings;
    std::map<std::string, SimplicialModule> simplicial_modules;
    std::map<std::string, FiniteSimplicialSet> simplicial_sets;
    std::map<std::string, ModuleOverAlgebra> modules;
};

Workspace parse_workspace(const std::vector<std::string>& files);

// --- shared serialization helpers ---------------------------------------------

// [[row, col, "num/den"], ...]; shape comes from context.
Matrix matrix_from_triplets(const CoeffRing& ring, int rows, int cols,
                            const nlohmann::json& j);
nlohmann::json matrix_to_triplets(const Matrix& m);

CoeffRing ring_from_string(const std::string& s);  // Q | Z | Fp:<p>
std::string ring_to_string(const CoeffRing& r);

CompKey key_from_string(const std::string& s);  // "(c1,c2|d)" as printed

nlohmann::json complex_to_json(const DgComplex& x);
DgComplex complex_from_json(const CoeffRing& ring, const nlohmann::json& j);

}  // namespace opforge
