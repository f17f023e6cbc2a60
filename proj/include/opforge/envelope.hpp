#pragma once

#include "opforge/algebra.hpp"
#include "opforge/splitting.hpp"

namespace opforge {

struct NotSplit : std::runtime_error {
    explicit NotSplit(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotACofibration : std::runtime_error {
    explicit NotACofibration(const std::string& msg) : std::runtime_error(msg) {}
};

// One absorbed summand of an enveloping-operad component O_A(c,d):
// O(c ++ c', d) (x) A_{c'(0)} (x) ... modulo the Sigma_{c'} diagonal action.
struct EnvPiece {
    std::vector<int> absorbed;  // sorted color tuple c'
    DgComplex big;
    QuotientComplex coinv;
};

struct EnvComponent {
    std::vector<EnvPiece> pieces;
    MultiSum layout;     // direct sum of the coinvariant quotients
    QuotientComplex rel;  // absorption relations quotient of the sum
};

// The enveloping operad O_A, truncated: free arity <= truncation, absorbed
// arity bounded by the base operad's arity bound. O_A((), d) recovers A_d.
struct EnvelopingOperad {
    ColoredDgOperad base;
    AlgebraPresentation algebra;
    int truncation = 0;
    ColoredDgOperad env;
    std::map<CompKey, EnvComponent> parts;

    // big piece -> component, and a linear section
    GradedMap piece_projection(const CompKey& key, int piece) const;
    GradedMap piece_section(const CompKey& key, int piece) const;
};

EnvelopingOperad enveloping_operad(const ColoredDgOperad& o,
                                   const AlgebraPresentation& a, int truncation);

// The enveloping dg category U(A): objects are the colors, hom(x,y) =
// O_A((x), y), composition and units from the enveloping operad.
struct EnvelopingCategory {
    EnvelopingOperad data;

    DgComplex hom(int x, int y) const;
    // hom(y,z) (x) hom(x,y) -> hom(x,z)
    GradedMap compose_map(int x, int y, int z) const;
    Matrix unit(int x) const;  // degree-0 column of hom(x,x)
};

EnvelopingCategory enveloping_category(const ColoredDgOperad& o,
                                       const AlgebraPresentation& a,
                                       int truncation);

// A module over an algebra: action maps indexed by keys with the module
// input in the last slot; other positions follow by equivariance.
struct ModuleOverAlgebra {
    ColoredDgOperad operad;
    AlgebraPresentation algebra;
    ColorIndexedComplexes carriers;  // M_x per color
    // key (c ++ {x}, y): O(c ++ {x}, y) (x) (x)A_{c(i)} (x) M_x -> M_y
    std::map<CompKey, GradedMap> action;
    int window = 0;

    GradedMap action_map(const CompKey& key) const;  // zero when absent
};

// A acting on itself by its structure maps.
ModuleOverAlgebra regular_module(const AlgebraPresentation& a, int window);

// Assembles (A, M) into an algebra over the module operad MO and audits it.
AxiomReport check_module_axioms(const ModuleOverAlgebra& m);

// A representation of the enveloping category: carriers plus the action of
// each hom complex.
struct CategoryRepresentation {
    ColorIndexedComplexes carriers;
    std::map<std::pair<int, int>, GradedMap> rho;  // (x,y): hom(x,y)(x)M_x->M_y
};

CategoryRepresentation module_to_representation(const EnvelopingOperad& e,
                                                const ModuleOverAlgebra& m);
ModuleOverAlgebra representation_to_module(const EnvelopingOperad& e,
                                           const CategoryRepresentation& r,
                                           int window);

// Transport of a splitting to the module operad: the same t matrices on the
// nonzero MO components.
SigmaSplitting induced_splitting_on_MO(const SigmaSplitting& s);

// The wedge of split injections phi_i: the punctured-cube colimit as a
// subcomplex of (x)Y_i, with its inclusion.
struct CubeWedge {
    DgComplex source;
    GradedMap inclusion;
};
CubeWedge cube_wedge(const std::vector<GradedMap>& maps);

struct FiltrationStage {
    std::map<int, DgComplex> components;       // per color
    std::map<int, GradedMap> from_previous;    // stage inclusion
};

struct FiltrationReport {
    bool ok = true;
    std::string message;
    std::vector<FiltrationStage> stages;       // B_0 .. B_N
    AlgebraPresentation direct;                // A |_|_{F(V)} F(W) by presentation
    std::map<int, GradedMap> comparison;       // colim -> direct components
};

// The filtration B_0 = G(A) -> B_1 -> ... of the pushout of A <- F(V) -> F(W)
// along f: V -> W (degreewise split injective) with attaching maps g: V -> A,
// compared against the direct presentation of the pushout.
FiltrationReport pushout_filtration(const ColoredDgOperad& o,
                                    const AlgebraPresentation& a,
                                    const std::map<int, GradedMap>& f,
                                    const std::map<int, GradedMap>& g,
                                    int truncation);

}  // namespace opforge
