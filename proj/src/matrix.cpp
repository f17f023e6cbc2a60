#include "opforge/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace opforge {

Matrix::Matrix(CoeffRing ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

Matrix Matrix::identity(CoeffRing ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::column(CoeffRing ring, const std::vector<mpq_class>& entries) {
    Matrix m(ring, static_cast<int>(entries.size()), 1);
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) m.set(i, 0, entries[i]);
    return m;
}

mpq_class Matrix::get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? mpq_class(0) : it->second;
}

void Matrix::set(int r, int c, const mpq_class& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    mpq_class nv = ring_.norm(v);
    if (nv == 0)
        entries_.erase({r, c});
    else
        entries_[{r, c}] = nv;
}

void Matrix::add_to(int r, int c, const mpq_class& v) { set(r, c, get(r, c) + v); }

Matrix Matrix::operator+(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw RingMismatch("matrix addition shape/ring mismatch");
    Matrix m = *this;
    for (const auto& [rc, v] : o.entries_) m.add_to(rc.first, rc.second, v);
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    Matrix m(ring_, rows_, cols_);
    for (const auto& [rc, v] : entries_) m.set(rc.first, rc.second, -v);
    return m;
}

Matrix Matrix::scaled(const mpq_class& s) const {
    Matrix m(ring_, rows_, cols_);
    for (const auto& [rc, v] : entries_) m.set(rc.first, rc.second, v * s);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (ring_ != o.ring_) throw RingMismatch("matrix product ring mismatch");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(ring_, rows_, o.cols_);
    // group o's entries by row for sparse product
    for (const auto& [rc, v] : entries_) {
        int k = rc.second;
        auto it = o.entries_.lower_bound({k, 0});
        for (; it != o.entries_.end() && it->first.first == k; ++it)
            m.add_to(rc.first, it->first.second, v * it->second);
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(ring_, cols_, rows_);
    for (const auto& [rc, v] : entries_) m.set(rc.second, rc.first, v);
    return m;
}

bool Matrix::operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

Matrix Matrix::hstack(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_) throw RingMismatch("hstack mismatch");
    Matrix m(ring_, rows_, cols_ + o.cols_);
    for (const auto& [rc, v] : entries_) m.set(rc.first, rc.second, v);
    for (const auto& [rc, v] : o.entries_) m.set(rc.first, cols_ + rc.second, v);
    return m;
}

Matrix Matrix::vstack(const Matrix& o) const {
    if (ring_ != o.ring_ || cols_ != o.cols_) throw RingMismatch("vstack mismatch");
    Matrix m(ring_, rows_ + o.rows_, cols_);
    for (const auto& [rc, v] : entries_) m.set(rc.first, rc.second, v);
    for (const auto& [rc, v] : o.entries_) m.set(rows_ + rc.first, rc.second, v);
    return m;
}

Matrix Matrix::columns(const std::vector<int>& idx) const {
    Matrix m(ring_, rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < static_cast<int>(idx.size()); ++j)
        for (int r = 0; r < rows_; ++r) {
            mpq_class v = get(r, idx[j]);
            if (v != 0) m.set(r, j, v);
        }
    return m;
}

std::vector<mpq_class> Matrix::column_vec(int c) const {
    std::vector<mpq_class> v(rows_, mpq_class(0));
    for (int r = 0; r < rows_; ++r) v[r] = get(r, c);
    return v;
}

bool Matrix::is_signed_permutation() const {
    std::set<int> used_rows;
    std::vector<int> per_col(cols_, 0);
    for (const auto& [rc, v] : entries_) {
        if (v != 1 && v != -1) return false;
        if (++per_col[rc.second] > 1) return false;
        if (!used_rows.insert(rc.first).second) return false;
    }
    return true;
}

// --- dense helpers ---------------------------------------------------------

namespace {

using Dense = std::vector<std::vector<mpq_class>>;

Dense to_dense(const Matrix& m) {
    Dense d(m.rows(), std::vector<mpq_class>(m.cols(), mpq_class(0)));
    for (const auto& [rc, v] : m.entries()) d[rc.first][rc.second] = v;
    return d;
}

Matrix from_dense(const CoeffRing& ring, const Dense& d, int cols) {
    Matrix m(ring, static_cast<int>(d.size()), cols);
    for (int r = 0; r < static_cast<int>(d.size()); ++r)
        for (int c = 0; c < cols; ++c)
            if (d[r][c] != 0) m.set(r, c, d[r][c]);
    return m;
}

CoeffRing fraction_field(const CoeffRing& ring) {
    return ring.kind == CoeffRing::Kind::Integers ? CoeffRing::rationals() : ring;
}

// Reduced row echelon form over the fraction field, in place.
// Returns pivot columns (one per pivot row, in order).
std::vector<int> rref(Dense& a, const CoeffRing& field) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r)
            if (a[r][col] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(a[row], a[pr]);
        mpq_class piv_inv = field.inv(a[row][col]);
        for (int c = col; c < cols; ++c)
            if (a[row][c] != 0) a[row][c] = field.norm(a[row][c] * piv_inv);
        for (int r = 0; r < rows; ++r) {
            if (r == row || a[r][col] == 0) continue;
            mpq_class f = a[r][col];
            for (int c = col; c < cols; ++c)
                if (a[row][c] != 0) a[r][c] = field.norm(a[r][c] - f * a[row][c]);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Incremental echelonization of integer vectors (pivot = first nonzero
// coordinate). Maintains a basis of the generated lattice.
class IntEchelon {
  public:
    explicit IntEchelon(int dim) : dim_(dim) {}

    void insert(std::vector<mpz_class> v) {
        for (int pos = 0; pos < dim_;) {
            if (v[pos] == 0) { ++pos; continue; }
            auto it = rows_.find(pos);
            if (it == rows_.end()) {
                if (v[pos] < 0)
                    for (auto& x : v) x = -x;
                rows_[pos] = std::move(v);
                return;
            }
            std::vector<mpz_class>& u = it->second;
            // gcd combination at position pos
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u[pos].get_mpz_t(),
                       v[pos].get_mpz_t());
            mpz_class uc = u[pos] / g, vc = v[pos] / g;
            for (int i = pos; i < dim_; ++i) {
                mpz_class nu = s * u[i] + t * v[i];
                mpz_class nv = uc * v[i] - vc * u[i];
                u[i] = nu;
                v[i] = nv;
            }
            // v now has zero at pos; continue inserting the remainder
        }
    }

    // basis rows keyed by pivot position
    const std::map<int, std::vector<mpz_class>>& rows() const { return rows_; }

  private:
    int dim_;
    std::map<int, std::vector<mpz_class>> rows_;
};

std::vector<mpz_class> int_column(const Matrix& m, int c) {
    std::vector<mpz_class> v(m.rows());
    for (int r = 0; r < m.rows(); ++r) v[r] = m.get(r, c).get_num();
    return v;
}

}  // namespace

// --- rank / kernel / solve -------------------------------------------------

int rank(const Matrix& m) {
    CoeffRing field = fraction_field(m.ring());
    Dense d = to_dense(m);
    return static_cast<int>(rref(d, field).size());
}

Matrix kernel_basis(const Matrix& m) {
    const CoeffRing& ring = m.ring();
    if (ring.kind == CoeffRing::Kind::Integers) {
        SmithDecomposition s = smith_normal_form(m);
        int r = static_cast<int>(s.invariant_factors.size());
        std::vector<int> idx;
        for (int j = r; j < m.cols(); ++j) idx.push_back(j);
        return s.right.columns(idx);
    }
    Dense d = to_dense(m);
    std::vector<int> pivots = rref(d, ring);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(ring, m.cols(), static_cast<int>(free_cols.size()));
    for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
        int fc = free_cols[j];
        k.set(fc, j, 1);
        for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
            if (d[i][fc] != 0) k.set(pivots[i], j, -d[i][fc]);
    }
    return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.ring() != b.ring() || a.rows() != b.rows())
        throw RingMismatch("solve: shape/ring mismatch");
    const CoeffRing& ring = a.ring();
    if (ring.kind == CoeffRing::Kind::Integers) {
        SmithDecomposition s = smith_normal_form(a);
        int r = static_cast<int>(s.invariant_factors.size());
        Matrix lb = s.left * b;
        Matrix y(ring, a.cols(), b.cols());
        for (int c = 0; c < b.cols(); ++c) {
            for (int i = 0; i < a.rows(); ++i) {
                mpq_class v = lb.get(i, c);
                if (i < r) {
                    mpq_class q = v / s.invariant_factors[i];
                    q.canonicalize();
                    if (q.get_den() != 1) return std::nullopt;
                    if (i < a.cols()) y.set(i, c, q);
                } else if (v != 0) {
                    return std::nullopt;
                }
            }
        }
        return s.right * y;
    }
    // field: eliminate on [A | B]
    Dense d(a.rows(), std::vector<mpq_class>(a.cols() + b.cols(), mpq_class(0)));
    for (const auto& [rc, v] : a.entries()) d[rc.first][rc.second] = v;
    for (const auto& [rc, v] : b.entries()) d[rc.first][a.cols() + rc.second] = v;
    // restrict pivoting to the A-part
    int rows = a.rows(), acols = a.cols(), total = a.cols() + b.cols();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < acols && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r)
            if (d[r][col] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(d[row], d[pr]);
        mpq_class piv_inv = ring.inv(d[row][col]);
        for (int c = col; c < total; ++c)
            if (d[row][c] != 0) d[row][c] = ring.norm(d[row][c] * piv_inv);
        for (int r = 0; r < rows; ++r) {
            if (r == row || d[r][col] == 0) continue;
            mpq_class f = d[r][col];
            for (int c = col; c < total; ++c)
                if (d[row][c] != 0) d[r][c] = ring.norm(d[r][c] - f * d[row][c]);
        }
        pivots.push_back(col);
        ++row;
    }
    // consistency: rows without pivot must have zero B-part
    for (int r = row; r < rows; ++r)
        for (int c = acols; c < total; ++c)
            if (d[r][c] != 0) return std::nullopt;
    Matrix x(ring, acols, b.cols());
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
        for (int c = 0; c < b.cols(); ++c)
            if (d[i][acols + c] != 0) x.set(pivots[i], c, d[i][acols + c]);
    return x;
}

Matrix span_basis(const Matrix& span) {
    const CoeffRing& ring = span.ring();
    if (ring.kind == CoeffRing::Kind::Integers) {
        IntEchelon ech(span.rows());
        for (int c = 0; c < span.cols(); ++c) {
            std::vector<mpz_class> v = int_column(span, c);
            bool nz = false;
            for (const auto& x : v)
                if (x != 0) { nz = true; break; }
            if (nz) ech.insert(std::move(v));
        }
        Matrix b(ring, span.rows(), static_cast<int>(ech.rows().size()));
        int j = 0;
        for (const auto& [piv, row] : ech.rows()) {
            (void)piv;
            for (int r = 0; r < span.rows(); ++r)
                if (row[r] != 0) b.set(r, j, mpq_class(row[r]));
            ++j;
        }
        return b;
    }
    // field: echelonize the transposed span and return independent rows
    Dense d = to_dense(span.transpose());
    std::vector<int> pivots = rref(d, ring);
    Matrix b(ring, span.rows(), static_cast<int>(pivots.size()));
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
        for (int r = 0; r < span.rows(); ++r)
            if (d[i][r] != 0) b.set(r, i, d[i][r]);
    return b;
}

bool in_span(const Matrix& span, const Matrix& vectors) {
    return solve(span_basis(span), vectors).has_value();
}

// --- Smith normal form -----------------------------------------------------

SmithDecomposition smith_normal_form(const Matrix& m) {
    if (m.ring().kind != CoeffRing::Kind::Integers)
        throw WrongRing("smith_normal_form requires ring Z");
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v.get_num();

    std::vector<std::vector<mpz_class>> L(rows, std::vector<mpz_class>(rows)),
        Li(rows, std::vector<mpz_class>(rows)), R(cols, std::vector<mpz_class>(cols)),
        Ri(cols, std::vector<mpz_class>(cols));
    for (int i = 0; i < rows; ++i) L[i][i] = Li[i][i] = 1;
    for (int i = 0; i < cols; ++i) R[i][i] = Ri[i][i] = 1;

    auto row_add = [&](int i, int j, const mpz_class& q) {  // row_i += q * row_j
        for (int c = 0; c < cols; ++c) a[i][c] += q * a[j][c];
        for (int c = 0; c < rows; ++c) L[i][c] += q * L[j][c];
        for (int r = 0; r < rows; ++r) Li[r][j] -= q * Li[r][i];
    };
    auto col_add = [&](int i, int j, const mpz_class& q) {  // col_i += q * col_j
        for (int r = 0; r < rows; ++r) a[r][i] += q * a[r][j];
        for (int r = 0; r < cols; ++r) R[r][i] += q * R[r][j];
        for (int c = 0; c < cols; ++c) Ri[j][c] -= q * Ri[i][c];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(a[i], a[j]);
        std::swap(L[i], L[j]);
        for (int r = 0; r < rows; ++r) std::swap(Li[r][i], Li[r][j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (int r = 0; r < cols; ++r) std::swap(R[r][i], R[r][j]);
        for (int c = 0; c < cols; ++c) std::swap(Ri[i][c], Ri[j][c]);
    };
    auto row_negate = [&](int i) {
        for (int c = 0; c < cols; ++c) a[i][c] = -a[i][c];
        for (int c = 0; c < rows; ++c) L[i][c] = -L[i][c];
        for (int r = 0; r < rows; ++r) Li[r][i] = -Li[r][i];
    };

    int t = 0;
    int bound = std::min(rows, cols);
    while (t < bound) {
        // find smallest nonzero entry in the remaining submatrix
        int pr = -1, pc = -1;
        mpz_class best;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c) {
                if (a[r][c] == 0) continue;
                mpz_class v = abs(a[r][c]);
                if (pr < 0 || v < best) { best = v; pr = r; pc = c; }
            }
        if (pr < 0) break;
        if (pr != t) row_swap(t, pr);
        if (pc != t) col_swap(t, pc);
        if (a[t][t] < 0) row_negate(t);

        bool clean = true;
        for (int r = t + 1; r < rows; ++r)
            if (a[r][t] != 0) {
                row_add(r, t, -floor_div(a[r][t], a[t][t]));
                if (a[r][t] != 0) clean = false;
            }
        for (int c = t + 1; c < cols; ++c)
            if (a[t][c] != 0) {
                col_add(c, t, -floor_div(a[t][c], a[t][t]));
                if (a[t][c] != 0) clean = false;
            }
        if (!clean) continue;  // pivot shrank, redo selection

        // divisibility fix-up
        bool divides_all = true;
        for (int r = t + 1; r < rows && divides_all; ++r)
            for (int c = t + 1; c < cols; ++c)
                if (a[r][c] % a[t][t] != 0) {
                    row_add(t, r, 1);
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;
        ++t;
    }

    SmithDecomposition out;
    CoeffRing Z = CoeffRing::integers();
    for (int i = 0; i < t; ++i) out.invariant_factors.push_back(mpq_class(a[i][i]));
    auto pack = [&Z](const std::vector<std::vector<mpz_class>>& d, int r, int c) {
        Matrix m(Z, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (d[i][j] != 0) m.set(i, j, mpq_class(d[i][j]));
        return m;
    };
    out.left = pack(L, rows, rows);
    out.left_inv = pack(Li, rows, rows);
    out.right = pack(R, cols, cols);
    out.right_inv = pack(Ri, cols, cols);
    return out;
}

// --- presentations ---------------------------------------------------------

CokernelPresentation cokernel_presentation(const Matrix& m) {
    CokernelPresentation out;
    if (m.ring().kind == CoeffRing::Kind::Integers) {
        SmithDecomposition s = smith_normal_form(m);
        out.free_rank = m.rows() - static_cast<int>(s.invariant_factors.size());
        for (const auto& d : s.invariant_factors)
            if (d != 1) out.torsion.push_back(d);
        return out;
    }
    out.free_rank = m.rows() - rank(m);
    return out;
}

QuotientData quotient_by_span(const Matrix& span_columns, int ambient_rank,
                              const CoeffRing& ring) {
    QuotientData out;
    if (ring.kind == CoeffRing::Kind::Integers) {
        Matrix basis = span_basis(span_columns);
        SmithDecomposition s = smith_normal_form(basis);
        int r = static_cast<int>(s.invariant_factors.size());
        for (int i = 0; i < r; ++i)
            if (s.invariant_factors[i] != 1)
                throw TorsionQuotient("quotient by a non-saturated sublattice");
        std::vector<int> rest;
        for (int i = r; i < ambient_rank; ++i) rest.push_back(i);
        Matrix sel(ring, static_cast<int>(rest.size()), ambient_rank);
        for (int i = 0; i < static_cast<int>(rest.size()); ++i) sel.set(i, rest[i], 1);
        out.projection = sel * s.left;
        out.section = s.left_inv * sel.transpose();
        out.quotient_rank = ambient_rank - r;
        return out;
    }
    // field: reduce against rref rows of the span
    Dense d = to_dense(span_columns.transpose());
    std::vector<int> pivots = rref(d, ring);
    std::vector<bool> is_pivot(ambient_rank, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> rest;
    for (int i = 0; i < ambient_rank; ++i)
        if (!is_pivot[i]) rest.push_back(i);
    int q = static_cast<int>(rest.size());
    Matrix proj(ring, q, ambient_rank);
    for (int i = 0; i < q; ++i) proj.set(i, rest[i], 1);
    // subtract the reduction through pivot coordinates
    for (int k = 0; k < static_cast<int>(pivots.size()); ++k)
        for (int i = 0; i < q; ++i) {
            mpq_class v = d[k][rest[i]];
            if (v != 0) proj.add_to(i, pivots[k], -v);
        }
    Matrix section(ring, ambient_rank, q);
    for (int i = 0; i < q; ++i) section.set(rest[i], i, 1);
    out.projection = proj;
    out.section = section;
    out.quotient_rank = q;
    return out;
}

// --- group coinvariants ----------------------------------------------------

std::vector<Matrix> generate_matrix_group(const std::vector<Matrix>& generators,
                                          int ambient_rank, std::size_t cap) {
    CoeffRing ring = generators.empty() ? CoeffRing::rationals() : generators[0].ring();
    std::vector<Matrix> elems{Matrix::identity(ring, ambient_rank)};
    std::vector<Matrix> frontier = elems;
    while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (const Matrix& e : frontier)
            for (const Matrix& g : generators) {
                Matrix p = g * e;
                if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
                    elems.push_back(p);
                    next.push_back(p);
                    if (elems.size() > cap)
                        throw NotAnAction("generated group exceeds cap");
                }
            }
        frontier = std::move(next);
    }
    return elems;
}

CoinvariantsResult group_coinvariants(const std::vector<Matrix>& generators,
                                      const std::vector<std::vector<int>>& relations,
                                      int ambient_rank) {
    if (generators.empty()) {
        CoinvariantsResult out;
        CoeffRing ring = CoeffRing::rationals();
        out.projection = Matrix::identity(ring, ambient_rank);
        out.free_rank = ambient_rank;
        return out;
    }
    CoeffRing ring = generators[0].ring();
    Matrix id = Matrix::identity(ring, ambient_rank);
    std::vector<Matrix> inverses;
    for (const Matrix& g : generators) {
        if (g.rows() != ambient_rank || g.cols() != ambient_rank)
            throw NotAnAction("generator of wrong shape");
        auto gi = solve(g, id);
        if (!gi) throw NotAnAction("generator not invertible");
        inverses.push_back(*gi);
    }
    for (const auto& word : relations) {
        Matrix acc = id;
        for (int letter : word) {
            if (letter == 0 || std::abs(letter) > static_cast<int>(generators.size()))
                throw NotAnAction("relation letter out of range");
            acc = (letter > 0 ? generators[letter - 1] : inverses[-letter - 1]) * acc;
        }
        if (acc != id) throw NotAnAction("relation does not act as identity");
    }

    Matrix span(ring, ambient_rank, 0);
    for (const Matrix& g : generators) span = span.hstack(g - id);

    CoinvariantsResult out;
    if (ring.kind == CoeffRing::Kind::Integers) {
        Matrix basis = span_basis(span);
        SmithDecomposition s = smith_normal_form(basis);
        int r = static_cast<int>(s.invariant_factors.size());
        std::vector<int> keep;  // torsion classes first, then free classes
        for (int i = 0; i < r; ++i)
            if (s.invariant_factors[i] != 1) {
                keep.push_back(i);
                out.torsion.push_back(s.invariant_factors[i]);
            }
        for (int i = r; i < ambient_rank; ++i) keep.push_back(i);
        out.free_rank = ambient_rank - r;
        Matrix sel(ring, static_cast<int>(keep.size()), ambient_rank);
        for (int i = 0; i < static_cast<int>(keep.size()); ++i) sel.set(i, keep[i], 1);
        out.projection = sel * s.left;
        return out;
    }
    QuotientData q = quotient_by_span(span, ambient_rank, ring);
    out.projection = q.projection;
    out.free_rank = q.quotient_rank;
    return out;
}

}  // namespace opforge
