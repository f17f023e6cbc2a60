#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "opforge/ring.hpp"

namespace opforge {

// Sparse exact matrix over a CoeffRing. Entries are stored in canonical
// form; zeros are never stored. Immutable by convention once built
// (mutators exist for construction only).
class Matrix {
  public:
    Matrix() : ring_(CoeffRing::rationals()), rows_(0), cols_(0) {}
    Matrix(CoeffRing ring, int rows, int cols);

    static Matrix identity(CoeffRing ring, int n);
    static Matrix zero(CoeffRing ring, int rows, int cols) { return Matrix(ring, rows, cols); }
    static Matrix column(CoeffRing ring, const std::vector<mpq_class>& entries);

    const CoeffRing& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_zero() const { return entries_.empty(); }

    mpq_class get(int r, int c) const;
    void set(int r, int c, const mpq_class& v);
    void add_to(int r, int c, const mpq_class& v);

    const std::map<std::pair<int, int>, mpq_class>& entries() const { return entries_; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const mpq_class& s) const;
    Matrix transpose() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix hstack(const Matrix& o) const;
    Matrix vstack(const Matrix& o) const;
    Matrix columns(const std::vector<int>& idx) const;
    std::vector<mpq_class> column_vec(int c) const;

    // True when every column is +/- a standard basis vector (or zero) and
    // no two columns hit the same row; such maps act on a monomial basis.
    bool is_signed_permutation() const;

  private:
    CoeffRing ring_;
    int rows_, cols_;
    std::map<std::pair<int, int>, mpq_class> entries_;
};

// --- elimination over the fraction field ---------------------------------

// Rank over the fraction field (Q for Z input, the field itself otherwise).
int rank(const Matrix& m);

// Columns spanning ker(m): over a field a basis, over Z a basis of the
// kernel lattice.
Matrix kernel_basis(const Matrix& m);

// Exact solution X of A * X = B in the ring (integral over Z), if any.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

// Reduce the columns of `span` to an independent generating set: a basis
// of the column space over a field, of the generated lattice over Z.
Matrix span_basis(const Matrix& span);

bool in_span(const Matrix& span, const Matrix& vectors);

// --- Smith normal form ----------------------------------------------------

struct SmithDecomposition {
    std::vector<mpq_class> invariant_factors;  // d_1 | d_2 | ..., nonzero
    Matrix left, left_inv;                     // unimodular row transform
    Matrix right, right_inv;                   // unimodular column transform
    // left * original * right is diagonal with the invariant factors.
};

SmithDecomposition smith_normal_form(const Matrix& m);

// --- presentations --------------------------------------------------------

struct CokernelPresentation {
    int free_rank = 0;
    std::vector<mpq_class> torsion;  // invariant factors > 1 (empty over a field)
};

// coker(m) as a map out of R^rows(m).
CokernelPresentation cokernel_presentation(const Matrix& m);

// Quotient of the ambient free module by the span of the given columns.
// Requires the quotient to be free (always true over a field; over Z the
// span must be a saturated direct summand or TorsionQuotient is thrown).
struct QuotientData {
    Matrix projection;  // ambient -> quotient
    Matrix section;     // quotient -> ambient, projection * section = id
    int quotient_rank = 0;
};

struct TorsionQuotient : std::runtime_error {
    explicit TorsionQuotient(const std::string& msg) : std::runtime_error(msg) {}
};

QuotientData quotient_by_span(const Matrix& span_columns, int ambient_rank,
                              const CoeffRing& ring);

// --- group coinvariants ----------------------------------------------------

struct NotAnAction : std::runtime_error {
    explicit NotAnAction(const std::string& msg) : std::runtime_error(msg) {}
};

struct CoinvariantsResult {
    Matrix projection;  // ambient -> coinvariant generators (free part if no torsion)
    int free_rank = 0;
    std::vector<mpq_class> torsion;
};

// Coinvariants of a finite group action given by generator matrices and
// defining relations (words in the generators, 1-based with sign for
// inverse; each word must act as the identity). The action axiom is
// verified on the relations before the cokernel of span{g x - x} is taken.
CoinvariantsResult group_coinvariants(const std::vector<Matrix>& generators,
                                      const std::vector<std::vector<int>>& relations,
                                      int ambient_rank);

// All elements of the generated matrix group (throws if > cap).
std::vector<Matrix> generate_matrix_group(const std::vector<Matrix>& generators,
                                          int ambient_rank, std::size_t cap = 4000);

}  // namespace opforge
