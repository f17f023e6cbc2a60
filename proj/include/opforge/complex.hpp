#pragma once

#include <map>
#include <optional>
#include <vector>

#include "opforge/matrix.hpp"

namespace opforge {

// Cohomological convention throughout: d^n raises degree, d^n : X^n -> X^{n+1}.
struct DgComplex {
    CoeffRing ring = CoeffRing::rationals();
    std::map<int, int> ranks;      // degree -> rank, only nonzero degrees stored
    std::map<int, Matrix> diffs;   // n -> matrix of shape rank(n+1) x rank(n)

    int rank(int n) const {
        auto it = ranks.find(n);
        return it == ranks.end() ? 0 : it->second;
    }
    Matrix diff(int n) const {
        auto it = diffs.find(n);
        return it == diffs.end() ? Matrix(ring, rank(n + 1), rank(n)) : it->second;
    }
    bool is_zero() const { return ranks.empty(); }
    int min_degree() const { return ranks.empty() ? 0 : ranks.begin()->first; }
    int max_degree() const { return ranks.empty() ? 0 : ranks.rbegin()->first; }
    long total_rank() const;
    long euler_characteristic() const;

    // Throws std::invalid_argument on shape mismatch or d^2 != 0.
    void validate() const;

    // k concentrated in one degree.
    static DgComplex point(const CoeffRing& ring, int degree, int rank = 1);

    bool operator==(const DgComplex& o) const {
        return ring == o.ring && ranks == o.ranks && diffs == o.diffs;
    }
    bool operator!=(const DgComplex& o) const { return !(*this == o); }
};

struct NotDClosed : std::runtime_error {
    explicit NotDClosed(const std::string& msg) : std::runtime_error(msg) {}
};

// A graded map of some degree s between complexes; chain maps are the
// degree-0 graded maps commuting with the differentials.
struct GradedMap {
    DgComplex source, target;
    int degree = 0;
    std::map<int, Matrix> blocks;  // n -> matrix rank_tgt(n+degree) x rank_src(n)

    Matrix block(int n) const {
        auto it = blocks.find(n);
        return it == blocks.end()
                   ? Matrix(source.ring, target.rank(n + degree), source.rank(n))
                   : it->second;
    }
    void set_block(int n, const Matrix& m);
    bool is_zero() const;

    static GradedMap zero(const DgComplex& src, const DgComplex& tgt, int degree = 0);
    static GradedMap identity(const DgComplex& c);

    GradedMap compose(const GradedMap& inner) const;  // this after inner
    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap operator-() const;
    GradedMap scaled(const mpq_class& s) const;
    bool operator==(const GradedMap& o) const;
    bool operator!=(const GradedMap& o) const { return !(*this == o); }

    // d_tgt . f == (-1)^degree f . d_src
    bool is_chain_map() const;
    void validate() const;  // shapes; throws std::invalid_argument
};

using ChainMap = GradedMap;  // degree 0 by convention; validated where it matters

// --- tensor calculus --------------------------------------------------------

// Basis bookkeeping for X_1 (x) ... (x) X_k. In each total degree the degree
// tuples are listed in lexicographic order; inside a tuple the index tuple is
// flattened with the first factor most significant.
struct TensorLayout {
    std::vector<DgComplex> factors;
    std::map<int, std::vector<std::vector<int>>> tuples;  // total degree -> tuples
    std::map<int, std::map<std::vector<int>, int>> offsets;
    std::map<int, int> total;

    explicit TensorLayout(std::vector<DgComplex> fs);
    int offset(int n, const std::vector<int>& degs) const;
    int tuple_rank(const std::vector<int>& degs) const;
};

DgComplex tensor_many(const std::vector<DgComplex>& factors);
DgComplex tensor(const DgComplex& a, const DgComplex& b);

GradedMap tensor_map_many(const std::vector<GradedMap>& fs);
GradedMap tensor_map(const GradedMap& f, const GradedMap& g);

// The Koszul-signed isomorphism sending source factor t to target slot
// sigma[t]; sigma is a permutation of {0..k-1}.
GradedMap permute_factors(const std::vector<DgComplex>& factors,
                          const std::vector<int>& sigma);

// Canonical relabelling of a flat tensor product onto a grouped one:
// tensor_many(factors) -> tensor_many({tensor_many(group_1), ...}) where the
// groups partition the factor list in order. Signless permutation.
GradedMap group_factors(const std::vector<DgComplex>& factors,
                        const std::vector<int>& group_sizes);

// --- constructions ----------------------------------------------------------

DgComplex shift(const DgComplex& x, int s);
GradedMap shift_map(const GradedMap& f, int s);

struct DirectSum {
    DgComplex sum;
    GradedMap incl_a, incl_b, proj_a, proj_b;
};
DirectSum direct_sum(const DgComplex& a, const DgComplex& b);

struct MultiSum {
    DgComplex sum;
    std::vector<GradedMap> incl, proj;  // one per summand
};
MultiSum direct_sum_many(const std::vector<DgComplex>& summands);

// Cone of a chain map f: X -> Y. C^n = X^{n+1} (+) Y^n (X block first),
// d(x, y) = (-dx, fx + dy).
DgComplex cone(const GradedMap& f);
DgComplex cone_of_identity(const CoeffRing& ring, int degree);

struct QuotientComplex {
    DgComplex quotient;
    GradedMap projection;  // chain map
    GradedMap section;     // linear section, projection . section = id
};
// spans: degree -> matrix whose columns span the subspace in that degree.
QuotientComplex quotient_by_subspace(const DgComplex& x,
                                     const std::map<int, Matrix>& spans);

// The differential packaged as a degree +1 graded endomorphism.
GradedMap differential_map(const DgComplex& x);

// Inverse of a degreewise signed-permutation isomorphism (blockwise
// transpose); valid for the relayout isos produced by permute_factors and
// group_factors.
GradedMap signed_permutation_inverse(const GradedMap& f);

// --- homology ---------------------------------------------------------------

struct HomologyGroup {
    int free_rank = 0;
    std::vector<mpq_class> torsion;
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

using HomologyReport = std::map<int, HomologyGroup>;

HomologyReport homology(const DgComplex& x);
bool is_acyclic(const DgComplex& x);

struct QuasiIsoResult {
    bool ok = true;
    std::optional<int> witness_degree;
};
QuasiIsoResult is_quasi_iso(const GradedMap& f);

}  // namespace opforge
