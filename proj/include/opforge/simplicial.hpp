#pragma once

#include <map>
#include <vector>

#include "opforge/complex.hpp"

namespace opforge {

// --- simplicial modules ------------------------------------------------------

// Truncated at n_max with all faces/degeneracies tabulated.
struct SimplicialModule {
    CoeffRing ring = CoeffRing::rationals();
    int n_max = 0;
    std::vector<int> levels;  // size n_max + 1
    std::map<std::pair<int, int>, Matrix> faces;   // (m, i): level m -> m-1
    std::map<std::pair<int, int>, Matrix> degens;  // (m, j): level m -> m+1

    int level(int m) const {
        return (m < 0 || m > n_max) ? 0 : levels[m];
    }
    Matrix face(int m, int i) const;
    Matrix degen(int m, int j) const;
    void validate() const;  // simplicial identities inside the window

    static SimplicialModule constant(const CoeffRing& ring, int n_max, int rank = 1);
};

SimplicialModule levelwise_tensor(const SimplicialModule& a, const SimplicialModule& b);

struct NormalizedChains {
    DgComplex complex;               // concentrated in [-n_max, 0]
    std::vector<Matrix> projection;  // per level m: M_m -> C^{-m}
    std::vector<Matrix> section;     // per level m: C^{-m} -> M_m
};

NormalizedChains normalized_chains(const SimplicialModule& m);

struct OutOfWindow : std::runtime_error {
    explicit OutOfWindow(const std::string& msg) : std::runtime_error(msg) {}
};

// Dold-Kan inverse: level n = (+)_{surjections [n] ->> [k]} X^{-k}.
SimplicialModule dold_kan_inverse(const DgComplex& x, int n_max);

// Shuffle map C(M) (x) C(N) -> C(M (x) N); a chain map, lax symmetric.
GradedMap eilenberg_maclane(const SimplicialModule& m, const SimplicialModule& n);
// Front-face/back-face map C(M (x) N) -> C(M) (x) C(N); AW . EM = id.
GradedMap alexander_whitney(const SimplicialModule& m, const SimplicialModule& n);

// --- finite simplicial sets --------------------------------------------------

// A (possibly degenerate) simplex: a nondegenerate simplex of dimension k
// together with a monotone surjection [m] ->> [k].
struct FormalSimplex {
    int k = 0;
    int idx = 0;
    std::vector<int> surj;  // size m + 1, values 0..k, nondecreasing, onto

    int dim() const { return static_cast<int>(surj.size()) - 1; }
    bool nondegenerate() const { return dim() == k; }
    auto operator<=>(const FormalSimplex&) const = default;
};

struct FiniteSimplicialSet {
    int n_max = 0;
    std::vector<int> counts;  // nondegenerate simplices per dimension 0..n_max
    // face_tbl[d][idx][i] = the i-th face of nondegenerate simplex (d, idx)
    std::vector<std::vector<std::vector<FormalSimplex>>> face_tbl;

    int count(int d) const {
        return (d < 0 || d > n_max) ? 0 : counts[d];
    }
    std::vector<FormalSimplex> level_elements(int m) const;
    FormalSimplex apply_face(const FormalSimplex& s, int i) const;
    FormalSimplex apply_degen(const FormalSimplex& s, int j) const;
    void validate(const CoeffRing& ring = CoeffRing::rationals()) const;

    static FiniteSimplicialSet point(int n_max);
    static FiniteSimplicialSet simplex(int n, int n_max);
    static FiniteSimplicialSet boundary_of_simplex(int n, int n_max);
    static FiniteSimplicialSet disjoint_union(const FiniteSimplicialSet& a,
                                              const FiniteSimplicialSet& b);
};

FiniteSimplicialSet product(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b);
SimplicialModule free_module(const FiniteSimplicialSet& s, const CoeffRing& ring);
DgComplex chains_of_simplicial_set(const FiniteSimplicialSet& s, const CoeffRing& ring);

// --- polynomial differential forms -------------------------------------------

struct CharNotZero : std::runtime_error {
    explicit CharNotZero(const std::string& msg) : std::runtime_error(msg) {}
};

// Monomial x^a dx_S in coordinates x_1..x_n (x_0 eliminated); the truncation
// grading counts deg x_i = deg dx_i = 1, the dg degree is |S|.
struct OmegaMono {
    std::vector<int> a;  // exponents, size n
    std::vector<int> S;  // strictly increasing subset of {1..n}
    auto operator<=>(const OmegaMono&) const = default;
};

struct PolyForms {
    CoeffRing ring = CoeffRing::rationals();
    int n = 0, D = 0;
    std::vector<OmegaMono> basis;                 // grouped by dg degree
    std::map<OmegaMono, int> index;               // global basis index
    std::vector<std::pair<int, int>> pos;         // global index -> (degree, offset)
    DgComplex complex;

    using Vec = std::map<int, mpq_class>;  // sparse element in the global basis

    Vec mono_vec(const OmegaMono& m) const;
    Vec one() const;
    Vec mul(const Vec& u, const Vec& v) const;  // truncating past degree D
    Vec d(const Vec& u) const;
};

PolyForms omega_forms(int n, int D, const CoeffRing& ring);
GradedMap omega_face(const PolyForms& src, int i);   // to omega_forms(n-1, D)
GradedMap omega_degen(const PolyForms& src, int j);  // to omega_forms(n+1, D)

}  // namespace opforge
