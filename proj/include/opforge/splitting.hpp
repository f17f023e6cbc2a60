#pragma once

#include "opforge/operad.hpp"

namespace opforge {

struct BadHomotopy : std::runtime_error {
    explicit BadHomotopy(const std::string& msg) : std::runtime_error(msg) {}
};

// A Sigma-splitting: per nonzero component O(c,d) a family of chain
// endomorphisms t_theta, one per total ordering theta of the inputs.
// Orderings are permutations in lexicographic order, read position -> slot
// like everywhere else (theta[u] = the slot placed at position u).
struct SigmaSplitting {
    ColoredDgOperad operad;
    std::map<CompKey, std::vector<ChainMap>> t;  // key -> n! endomorphisms

    ChainMap t_theta(const CompKey& key, int theta_index) const;
};

struct SplittingReport {
    bool ok = true;
    std::string message;  // first counterexample
};

// SPL: sum_theta t_theta = id. INV: equivariance against the generators of
// the symmetric action. COM: the min-projection squares for all composition
// data (f, phi) with total arity <= the operad's arity bound, normalized to
// monotone f and phi = id (the rest follows via INV).
SplittingReport check_splitting(const SigmaSplitting& s);

// t_theta = id / n!; requires a field of characteristic zero.
SigmaSplitting rational_splitting(const ColoredDgOperad& o);

// The splitting of P^Sigma by its ordering summands.
SigmaSplitting planar_splitting(const PlanarColoredOperad& p);

// Contraction data per color: a degree -1 map h with d h + h d = id - alpha.
struct HomotopyData {
    std::map<int, DgComplex> V;
    std::map<int, GradedMap> alpha;  // degree 0 endomorphism of V
    std::map<int, GradedMap> h;      // degree -1 endomorphism of V
};

// The homotopy H = sum_theta S_theta . (t_theta (x) id) on each free-algebra
// component O(c,d) (x) V_c(0) (x) ... (x) V_c(n-1), arity <= arity_bound.
// Throws BadHomotopy if d h + h d != id - alpha for some color.
std::map<CompKey, GradedMap> free_algebra_homotopy(const SigmaSplitting& s,
                                                   const HomotopyData& data,
                                                   int arity_bound);

// The induced endomorphism id_O (x) alpha (x) ... on the same components.
std::map<CompKey, GradedMap> free_algebra_endomorphism(const ColoredDgOperad& o,
                                                       const HomotopyData& data,
                                                       int arity_bound);

struct AlgebraPresentation;

// Verifies on a presented algebra that the homotopy of the admissibility
// proof preserves the ideal generated by the relations, and checks the
// closed-form image of monomial ideal generators.
SplittingReport ideal_stability_check(const SigmaSplitting& s,
                                      const AlgebraPresentation& a, int color_a,
                                      int degree_d, int truncation);

}  // namespace opforge
