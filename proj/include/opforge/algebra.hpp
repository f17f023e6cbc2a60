#pragma once

#include "opforge/operad.hpp"

namespace opforge {

struct DerivedTensorUnavailable : std::runtime_error {
    explicit DerivedTensorUnavailable(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Generators of a free algebra: one complex per color; missing = zero.
using ColorIndexedComplexes = std::map<int, DgComplex>;

// One arity-homogeneous summand of a free-algebra component: the coinvariants
// of O(c,d) (x) V_c(0) (x) ... over the automorphisms of the representative
// (sorted) color tuple c.
struct FreePiece {
    CompKey key;            // representative: key.in sorted ascending
    DgComplex big;          // O(c,d) (x) (x)_i V_c(i)
    QuotientComplex coinv;  // big -> the coinvariant quotient
};

struct TruncatedFreeAlgebra {
    ColoredDgOperad operad;
    ColorIndexedComplexes generators;
    int truncation = 0;
    std::map<int, std::vector<FreePiece>> pieces;  // color -> by (arity, key)
    std::map<int, MultiSum> layout;                // color -> sum of coinvariants

    DgComplex component(int color) const;
    // index of the piece with the given representative key, -1 if absent
    int piece_index(const CompKey& rep) const;
};

TruncatedFreeAlgebra free_algebra(const ColoredDgOperad& o,
                                  const ColorIndexedComplexes& v, int truncation);

// The multiplication O(c,d) (x) F_c(0) (x) ... (x) F_c(n-1) -> F_d realized on
// the truncated components; summands whose total arity exceeds the truncation
// map to zero.
GradedMap free_structure_map(const TruncatedFreeAlgebra& f, const CompKey& key);

// Ideal spans per color and degree, columns in component coordinates.
using IdealSpans = std::map<int, std::map<int, Matrix>>;

// Smallest span containing the generators that is closed under the
// differential and under multiplication by all operadic products within the
// truncation window.
IdealSpans ideal_closure(const TruncatedFreeAlgebra& f, const IdealSpans& gens);

struct AlgebraPresentation {
    TruncatedFreeAlgebra free_part;
    IdealSpans ideal;                        // d-closed, multiplicatively closed
    std::map<int, QuotientComplex> quotients;  // color -> free component / ideal

    DgComplex component(int color) const;
};

// Quotient by a closed ideal; verifies that the structure maps descend.
// Throws NotDClosed when the spans are not differential-closed.
AlgebraPresentation quotient_algebra(const TruncatedFreeAlgebra& f,
                                     const IdealSpans& ideal);

// Structure maps of the presented algebra (induced on the quotients).
GradedMap presented_structure_map(const AlgebraPresentation& a, const CompKey& key);

// A concrete truncated algebra: carrier complexes plus structure maps,
// tabulated for arities up to the window.
struct OperadAlgebra {
    ColoredDgOperad operad;
    std::map<int, DgComplex> carrier;
    std::map<CompKey, GradedMap> structure;
    int window = 0;

    GradedMap structure_map(const CompKey& key) const;  // zero when absent
};

// unit, chain-map, equivariance and associativity audit within the window
AxiomReport check_algebra_axioms(const OperadAlgebra& a);

OperadAlgebra algebra_of(const AlgebraPresentation& a);

// f^*: restriction of a concrete algebra along an operad map.
OperadAlgebra restrict_along(const OperadMap& f, const OperadAlgebra& b);

// f_!: the induced presentation over the target operad, truncated.
AlgebraPresentation induce_along(const OperadMap& f, const AlgebraPresentation& a,
                                 int truncation);

// A |_| F(M): adjoin free generators M to a presented algebra.
AlgebraPresentation coproduct_with_free(const AlgebraPresentation& a,
                                        const ColorIndexedComplexes& m,
                                        int truncation);
// the canonical map A -> A |_| F(M), per color; m must be the collection
// that was adjoined to produce b
std::map<int, GradedMap> coproduct_unit(const AlgebraPresentation& a,
                                        const AlgebraPresentation& b,
                                        const ColorIndexedComplexes& m);

// the map on free algebras induced by an operad map and generator maps
// g_c : V_c -> W_f(c), per color of the source operad
std::map<int, GradedMap> free_algebra_functor(const OperadMap& f,
                                              const TruncatedFreeAlgebra& src,
                                              const TruncatedFreeAlgebra& dst,
                                              const std::map<int, GradedMap>& gen);

OperadMap identity_operad_map(const ColoredDgOperad& o);

struct ProbeVerdict {
    bool consistent = true;
    std::string witness;  // color/degree of the first homology defect
};

// Adjoins Cone(id_k)[degree] at color c0 and tests A -> A |_| F(M) for
// quasi-isomorphism per color. A failure is conclusive; "consistent" is
// evidence at this truncation only.
ProbeVerdict admissibility_probe(const ColoredDgOperad& o,
                                 const AlgebraPresentation& a, int color,
                                 int degree, int truncation);

// Lax symmetric monoidal data over the PROP of an operad: underlying
// complexes per object (color tuple) and comparison maps
// A(x) (x) A(y) -> A(x ++ y).
struct LaxMonoidalData {
    std::map<std::vector<int>, DgComplex> objects;
    std::map<std::pair<std::vector<int>, std::vector<int>>, GradedMap> comparison;
};

// Checks every tabulated comparison map is a quasi-isomorphism.
AxiomReport homotopy_prop_algebra_check(const ColoredDgOperad& o,
                                        const LaxMonoidalData& a);

}  // namespace opforge
