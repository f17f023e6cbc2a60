#include "opforge/simplicial.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

namespace opforge {

// --- monotone map utilities ----------------------------------------------------

namespace {

using Mono = std::vector<int>;  // monotone map [m] -> [n], size m+1

Mono mono_identity(int m) {
    Mono f(m + 1);
    for (int t = 0; t <= m; ++t) f[t] = t;
    return f;
}

Mono mono_delta(int i, int n) {  // [n-1] -> [n], skips i
    Mono f(n);
    for (int t = 0; t < n; ++t) f[t] = t < i ? t : t + 1;
    return f;
}

Mono mono_sigma(int j, int n) {  // [n+1] -> [n], hits j twice
    Mono f(n + 2);
    for (int t = 0; t <= n + 1; ++t) f[t] = t <= j ? t : t - 1;
    return f;
}

Mono mono_compose(const Mono& f, const Mono& g) {  // f . g
    Mono h(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) h[t] = f[g[t]];
    return h;
}

// factor a monotone map as (injection given by its image) . (surjection)
void mono_factor(const Mono& b, std::vector<int>& image, Mono& surj) {
    image.clear();
    for (int v : b)
        if (image.empty() || image.back() != v) image.push_back(v);
    surj.resize(b.size());
    for (std::size_t t = 0; t < b.size(); ++t)
        surj[t] = static_cast<int>(std::lower_bound(image.begin(), image.end(), b[t]) -
                                   image.begin());
}

void enumerate_surjections(int n, int k, std::vector<Mono>& out) {
    if (k < 0 || k > n) return;
    Mono cur(n + 1);
    // monotone surjections step by 0 or 1 and start at 0
    std::function<void(int, int)> rec = [&](int t, int v) {
        if (t == n + 1) {
            if (v == k) out.push_back(cur);
            return;
        }
        if (n - t >= k - v) {
            cur[t] = v;
            rec(t + 1, v);
        }
        if (v + 1 <= k) {
            cur[t] = v + 1;
            rec(t + 1, v + 1);
        }
    };
    cur[0] = 0;
    rec(1, 0);
}

}  // namespace

// --- SimplicialModule ------------------------------------------------------------

Matrix SimplicialModule::face(int m, int i) const {
    auto it = faces.find({m, i});
    return it == faces.end() ? Matrix(ring, level(m - 1), level(m)) : it->second;
}

Matrix SimplicialModule::degen(int m, int j) const {
    auto it = degens.find({m, j});
    return it == degens.end() ? Matrix(ring, level(m + 1), level(m)) : it->second;
}

void SimplicialModule::validate() const {
    if (static_cast<int>(levels.size()) != n_max + 1)
        throw std::invalid_argument("levels table has wrong size");
    for (const auto& [mi, f] : faces) {
        auto [m, i] = mi;
        if (m < 1 || m > n_max || i < 0 || i > m)
            throw std::invalid_argument("face index out of range");
        if (f.rows() != level(m - 1) || f.cols() != level(m))
            throw std::invalid_argument("face shape mismatch");
    }
    for (const auto& [mj, s] : degens) {
        auto [m, j] = mj;
        if (m < 0 || m >= n_max || j < 0 || j > m)
            throw std::invalid_argument("degeneracy index out of range");
        if (s.rows() != level(m + 1) || s.cols() != level(m))
            throw std::invalid_argument("degeneracy shape mismatch");
    }
    // d_i d_j = d_{j-1} d_i (i < j)
    for (int m = 2; m <= n_max; ++m)
        for (int j = 1; j <= m; ++j)
            for (int i = 0; i < j; ++i)
                if (face(m - 1, i) * face(m, j) != face(m - 1, j - 1) * face(m, i))
                    throw std::invalid_argument("face identity fails");
    // s_i s_j = s_{j+1} s_i (i <= j)
    for (int m = 0; m + 2 <= n_max; ++m)
        for (int j = 0; j <= m; ++j)
            for (int i = 0; i <= j; ++i)
                if (degen(m + 1, i) * degen(m, j) != degen(m + 1, j + 1) * degen(m, i))
                    throw std::invalid_argument("degeneracy identity fails");
    // mixed identities
    for (int m = 0; m < n_max; ++m)
        for (int j = 0; j <= m; ++j)
            for (int i = 0; i <= m + 1; ++i) {
                Matrix lhs = face(m + 1, i) * degen(m, j);
                Matrix rhs(ring, level(m), level(m));
                if (i < j)
                    rhs = (m >= 1) ? degen(m - 1, j - 1) * face(m, i)
                                   : Matrix(ring, level(m), level(m));
                else if (i == j || i == j + 1)
                    rhs = Matrix::identity(ring, level(m));
                else
                    rhs = (m >= 1) ? degen(m - 1, j) * face(m, i - 1)
                                   : Matrix(ring, level(m), level(m));
                if (lhs != rhs) throw std::invalid_argument("mixed identity fails");
            }
}

SimplicialModule SimplicialModule::constant(const CoeffRing& ring, int n_max, int rank) {
    SimplicialModule m;
    m.ring = ring;
    m.n_max = n_max;
    m.levels.assign(n_max + 1, rank);
    Matrix id = Matrix::identity(ring, rank);
    for (int lv = 1; lv <= n_max; ++lv)
        for (int i = 0; i <= lv; ++i) m.faces[{lv, i}] = id;
    for (int lv = 0; lv < n_max; ++lv)
        for (int j = 0; j <= lv; ++j) m.degens[{lv, j}] = id;
    return m;
}

SimplicialModule levelwise_tensor(const SimplicialModule& a, const SimplicialModule& b) {
    if (a.ring != b.ring || a.n_max != b.n_max)
        throw std::invalid_argument("levelwise tensor mismatch");
    SimplicialModule t;
    t.ring = a.ring;
    t.n_max = a.n_max;
    t.levels.resize(t.n_max + 1);
    auto kron = [](const Matrix& x, const Matrix& y) {
        Matrix m(x.ring(), x.rows() * y.rows(), x.cols() * y.cols());
        for (const auto& [rc1, v1] : x.entries())
            for (const auto& [rc2, v2] : y.entries())
                m.set(rc1.first * y.rows() + rc2.first,
                      rc1.second * y.cols() + rc2.second, v1 * v2);
        return m;
    };
    for (int m = 0; m <= t.n_max; ++m) t.levels[m] = a.level(m) * b.level(m);
    for (int m = 1; m <= t.n_max; ++m)
        for (int i = 0; i <= m; ++i) {
            Matrix f = kron(a.face(m, i), b.face(m, i));
            if (!f.is_zero()) t.faces[{m, i}] = f;
        }
    for (int m = 0; m < t.n_max; ++m)
        for (int j = 0; j <= m; ++j) {
            Matrix s = kron(a.degen(m, j), b.degen(m, j));
            if (!s.is_zero()) t.degens[{m, j}] = s;
        }
    return t;
}

NormalizedChains normalized_chains(const SimplicialModule& m) {
    NormalizedChains out;
    out.complex.ring = m.ring;
    out.projection.resize(m.n_max + 1);
    out.section.resize(m.n_max + 1);
    for (int lv = 0; lv <= m.n_max; ++lv) {
        Matrix span(m.ring, m.level(lv), 0);
        for (int j = 0; j + 1 <= lv; ++j) span = span.hstack(m.degen(lv - 1, j));
        QuotientData q = quotient_by_span(span, m.level(lv), m.ring);
        out.projection[lv] = q.projection;
        out.section[lv] = q.section;
        if (q.quotient_rank) out.complex.ranks[-lv] = q.quotient_rank;
    }
    for (int lv = 1; lv <= m.n_max; ++lv) {
        if (out.complex.rank(-lv) == 0 || out.complex.rank(-lv + 1) == 0) continue;
        Matrix d(m.ring, m.level(lv - 1), m.level(lv));
        for (int i = 0; i <= lv; ++i)
            d = (i % 2 == 0) ? d + m.face(lv, i) : d - m.face(lv, i);
        Matrix blk = out.projection[lv - 1] * d * out.section[lv];
        if (!blk.is_zero()) out.complex.diffs[-lv] = blk;
    }
    out.complex.validate();
    return out;
}

SimplicialModule dold_kan_inverse(const DgComplex& x, int n_max) {
    for (const auto& [n, r] : x.ranks)
        if (n > 0 || n < -n_max) throw OutOfWindow("complex not in [-n_max, 0]");
    SimplicialModule g;
    g.ring = x.ring;
    g.n_max = n_max;
    g.levels.resize(n_max + 1);
    // level n basis: (surjection [n] ->> [k], basis vector of X^{-k})
    std::vector<std::vector<Mono>> surjs(n_max + 1);          // per level, in order
    std::vector<std::map<Mono, int>> offset(n_max + 1);       // surjection -> offset
    for (int n = 0; n <= n_max; ++n) {
        int off = 0;
        for (int k = 0; k <= n; ++k) {
            if (x.rank(-k) == 0) continue;
            std::vector<Mono> ss;
            enumerate_surjections(n, k, ss);
            std::sort(ss.begin(), ss.end());
            for (const auto& s : ss) {
                offset[n][s] = off;
                surjs[n].push_back(s);
                off += x.rank(-k);
            }
        }
        g.levels[n] = off;
    }
    auto target_k = [](const Mono& s) { return s.empty() ? 0 : s.back(); };
    auto build = [&](int src_lv, int dst_lv, const Mono& alpha) {
        Matrix m(g.ring, g.levels[dst_lv], g.levels[src_lv]);
        for (const Mono& eta : surjs[src_lv]) {
            int k = target_k(eta);
            int col = offset[src_lv].at(eta);
            Mono beta = mono_compose(eta, alpha);
            std::vector<int> image;
            Mono etap;
            mono_factor(beta, image, etap);
            int kp = static_cast<int>(image.size()) - 1;
            if (kp == k) {
                int row = offset[dst_lv].at(etap);
                for (int b = 0; b < x.rank(-k); ++b) m.set(row + b, col + b, 1);
            } else if (kp == k - 1 && image[kp] == kp) {
                // injection missing exactly the top element: apply d
                if (x.rank(-k + 1) == 0) continue;
                int row = offset[dst_lv].at(etap);
                Matrix d = x.diff(-k);
                mpq_class sign = (k % 2 == 0) ? 1 : -1;
                for (const auto& [rc, v] : d.entries())
                    m.set(row + rc.first, col + rc.second, v * sign);
            }
        }
        return m;
    };
    for (int n = 1; n <= n_max; ++n)
        for (int i = 0; i <= n; ++i) {
            Matrix f = build(n, n - 1, mono_delta(i, n));
            if (!f.is_zero()) g.faces[{n, i}] = f;
        }
    for (int n = 0; n < n_max; ++n)
        for (int j = 0; j <= n; ++j) {
            Matrix s = build(n, n + 1, mono_sigma(j, n));
            if (!s.is_zero()) g.degens[{n, j}] = s;
        }
    g.validate();
    return g;
}

// --- EM and AW -------------------------------------------------------------------

namespace {

void enumerate_shuffles(int p, int q,
                        std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
    // mu: p positions, nu: q positions partitioning {0..p+q-1}
    std::vector<int> mu;
    std::function<void(int)> rec = [&](int t) {
        if (static_cast<int>(mu.size()) == p) {
            std::vector<int> nu;
            std::size_t m = 0;
            for (int v = 0; v < p + q; ++v)
                if (m < mu.size() && mu[m] == v)
                    ++m;
                else
                    nu.push_back(v);
            out.push_back({mu, nu});
            return;
        }
        if (t == p + q) return;
        mu.push_back(t);
        rec(t + 1);
        mu.pop_back();
        if (p + q - t - 1 >= p - static_cast<int>(mu.size())) rec(t + 1);
    };
    rec(0);
}

int shuffle_sign(const std::vector<int>& mu, const std::vector<int>& nu) {
    int inv = 0;
    for (int a : mu)
        for (int b : nu)
            if (a > b) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

Matrix kron2(const Matrix& x, const Matrix& y) {
    Matrix m(x.ring(), x.rows() * y.rows(), x.cols() * y.cols());
    for (const auto& [rc1, v1] : x.entries())
        for (const auto& [rc2, v2] : y.entries())
            m.set(rc1.first * y.rows() + rc2.first, rc1.second * y.cols() + rc2.second,
                  v1 * v2);
    return m;
}

}  // namespace

GradedMap eilenberg_maclane(const SimplicialModule& m, const SimplicialModule& n) {
    SimplicialModule t = levelwise_tensor(m, n);
    NormalizedChains cm = normalized_chains(m), cn = normalized_chains(n),
                     ct = normalized_chains(t);
    DgComplex src = tensor(cm.complex, cn.complex);
    TensorLayout lay({cm.complex, cn.complex});
    GradedMap em = GradedMap::zero(src, ct.complex, 0);
    for (const auto& [deg, tups] : lay.tuples) {
        int nn = -deg;
        if (nn < 0 || nn > t.n_max || ct.complex.rank(deg) == 0) continue;
        Matrix blk(m.ring, ct.complex.rank(deg), src.rank(deg));
        for (const auto& degs : tups) {
            int p = -degs[0], q = -degs[1];
            std::vector<std::pair<std::vector<int>, std::vector<int>>> shufs;
            enumerate_shuffles(p, q, shufs);
            Matrix acc(m.ring, t.level(nn), cm.complex.rank(-p) * cn.complex.rank(-q));
            for (const auto& [mu, nu] : shufs) {
                Matrix sx = cm.section[p];
                for (std::size_t a = 0; a < nu.size(); ++a)
                    sx = m.degen(p + static_cast<int>(a), nu[a]) * sx;
                Matrix sy = cn.section[q];
                for (std::size_t a = 0; a < mu.size(); ++a)
                    sy = n.degen(q + static_cast<int>(a), mu[a]) * sy;
                Matrix term = kron2(sx, sy);
                acc = (shuffle_sign(mu, nu) > 0) ? acc + term : acc - term;
            }
            Matrix placed = ct.projection[nn] * acc;
            int off = lay.offset(deg, degs);
            for (const auto& [rc, v] : placed.entries())
                blk.set(rc.first, off + rc.second, v);
        }
        if (!blk.is_zero()) em.blocks[deg] = blk;
    }
    return em;
}

GradedMap alexander_whitney(const SimplicialModule& m, const SimplicialModule& n) {
    SimplicialModule t = levelwise_tensor(m, n);
    NormalizedChains cm = normalized_chains(m), cn = normalized_chains(n),
                     ct = normalized_chains(t);
    DgComplex tgt = tensor(cm.complex, cn.complex);
    TensorLayout lay({cm.complex, cn.complex});
    GradedMap aw = GradedMap::zero(ct.complex, tgt, 0);
    for (const auto& [deg, r] : ct.complex.ranks) {
        int nn = -deg;
        if (tgt.rank(deg) == 0) continue;
        Matrix blk(m.ring, tgt.rank(deg), r);
        for (int p = 0; p <= nn; ++p) {
            int q = nn - p;
            if (cm.complex.rank(-p) == 0 || cn.complex.rank(-q) == 0) continue;
            Matrix front = Matrix::identity(m.ring, m.level(nn));
            for (int lv = nn; lv > p; --lv) front = m.face(lv, lv) * front;
            Matrix back = Matrix::identity(n.ring, n.level(nn));
            for (int lv = nn; lv > q; --lv) back = n.face(lv, 0) * back;
            Matrix comp =
                kron2(cm.projection[p] * front, cn.projection[q] * back) * ct.section[nn];
            int off = lay.offset(deg, {-p, -q});
            for (const auto& [rc, v] : comp.entries())
                blk.set(off + rc.first, rc.second, v);
        }
        if (!blk.is_zero()) aw.blocks[deg] = blk;
    }
    return aw;
}

// --- FiniteSimplicialSet -----------------------------------------------------------

std::vector<FormalSimplex> FiniteSimplicialSet::level_elements(int m) const {
    std::vector<FormalSimplex> out;
    for (int k = 0; k <= m && k <= n_max; ++k) {
        if (count(k) == 0) continue;
        std::vector<Mono> ss;
        enumerate_surjections(m, k, ss);
        std::sort(ss.begin(), ss.end());
        for (int idx = 0; idx < count(k); ++idx)
            for (const auto& s : ss) out.push_back({k, idx, s});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

FormalSimplex act(const FiniteSimplicialSet& sset, const FormalSimplex& s,
                  const Mono& f) {
    Mono beta = mono_compose(s.surj, f);
    std::vector<int> image;
    Mono etap;
    mono_factor(beta, image, etap);
    int kp = static_cast<int>(image.size()) - 1;
    if (kp == s.k) return {s.k, s.idx, etap};
    // peel the largest missing value of the injection via the face table
    int w = -1;
    {
        std::set<int> img(image.begin(), image.end());
        for (int v = s.k; v >= 0; --v)
            if (!img.count(v)) {
                w = v;
                break;
            }
    }
    FormalSimplex face = sset.face_tbl[s.k][s.idx][w];
    Mono g(beta.size());
    for (std::size_t u = 0; u < beta.size(); ++u) g[u] = beta[u] > w ? beta[u] - 1 : beta[u];
    return act(sset, face, g);
}

}  // namespace

FormalSimplex FiniteSimplicialSet::apply_face(const FormalSimplex& s, int i) const {
    return act(*this, s, mono_delta(i, s.dim()));
}

FormalSimplex FiniteSimplicialSet::apply_degen(const FormalSimplex& s, int j) const {
    return act(*this, s, mono_sigma(j, s.dim()));
}

void FiniteSimplicialSet::validate(const CoeffRing& ring) const {
    for (int d = 1; d <= n_max; ++d)
        for (int idx = 0; idx < count(d); ++idx) {
            if (static_cast<int>(face_tbl[d][idx].size()) != d + 1)
                throw std::invalid_argument("face table arity mismatch");
            for (const auto& f : face_tbl[d][idx])
                if (f.dim() != d - 1 || f.k > n_max || f.idx >= count(f.k))
                    throw std::invalid_argument("face resolves to unknown simplex");
        }
    free_module(*this, ring).validate();
}

FiniteSimplicialSet FiniteSimplicialSet::point(int n_max) {
    FiniteSimplicialSet s;
    s.n_max = n_max;
    s.counts.assign(n_max + 1, 0);
    s.counts[0] = 1;
    s.face_tbl.resize(n_max + 1);
    s.face_tbl[0].resize(1);
    return s;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int sz) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == sz) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

FiniteSimplicialSet simplex_like(int n, int n_max, int top_dim) {
    FiniteSimplicialSet s;
    s.n_max = n_max;
    s.counts.assign(n_max + 1, 0);
    s.face_tbl.resize(n_max + 1);
    std::vector<std::vector<std::vector<int>>> cells(n_max + 1);
    std::vector<std::map<std::vector<int>, int>> idx_of(n_max + 1);
    for (int d = 0; d <= n_max && d <= top_dim; ++d) {
        cells[d] = subsets_of_size(n, d + 1);
        for (int i = 0; i < static_cast<int>(cells[d].size()); ++i)
            idx_of[d][cells[d][i]] = i;
        s.counts[d] = static_cast<int>(cells[d].size());
        s.face_tbl[d].resize(cells[d].size());
    }
    for (int d = 1; d <= n_max && d <= top_dim; ++d)
        for (int i = 0; i < s.counts[d]; ++i) {
            s.face_tbl[d][i].resize(d + 1);
            for (int f = 0; f <= d; ++f) {
                std::vector<int> sub = cells[d][i];
                sub.erase(sub.begin() + f);
                s.face_tbl[d][i][f] = {d - 1, idx_of[d - 1].at(sub), mono_identity(d - 1)};
            }
        }
    return s;
}

}  // namespace

FiniteSimplicialSet FiniteSimplicialSet::simplex(int n, int n_max) {
    return simplex_like(n, n_max, n);
}

FiniteSimplicialSet FiniteSimplicialSet::boundary_of_simplex(int n, int n_max) {
    return simplex_like(n, n_max, n - 1);
}

FiniteSimplicialSet FiniteSimplicialSet::disjoint_union(const FiniteSimplicialSet& a,
                                                        const FiniteSimplicialSet& b) {
    if (a.n_max != b.n_max) throw std::invalid_argument("disjoint union window mismatch");
    FiniteSimplicialSet s;
    s.n_max = a.n_max;
    s.counts.resize(s.n_max + 1);
    s.face_tbl.resize(s.n_max + 1);
    for (int d = 0; d <= s.n_max; ++d) {
        s.counts[d] = a.count(d) + b.count(d);
        s.face_tbl[d] = a.face_tbl[d];
        for (auto fl : b.face_tbl[d]) {
            for (auto& f : fl) f.idx += a.count(f.k);
            s.face_tbl[d].push_back(fl);
        }
    }
    return s;
}

FiniteSimplicialSet product(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b) {
    FiniteSimplicialSet s;
    s.n_max = std::min(a.n_max, b.n_max);
    s.counts.assign(s.n_max + 1, 0);
    s.face_tbl.resize(s.n_max + 1);
    using Pair = std::pair<FormalSimplex, FormalSimplex>;
    std::vector<std::vector<Pair>> nd(s.n_max + 1);
    std::vector<std::map<Pair, int>> idx_of(s.n_max + 1);
    for (int d = 0; d <= s.n_max; ++d) {
        for (const auto& fx : a.level_elements(d))
            for (const auto& fy : b.level_elements(d)) {
                bool degenerate = false;
                for (int j = 0; j < d && !degenerate; ++j)
                    if (fx.surj[j] == fx.surj[j + 1] && fy.surj[j] == fy.surj[j + 1])
                        degenerate = true;
                if (!degenerate) {
                    idx_of[d][{fx, fy}] = static_cast<int>(nd[d].size());
                    nd[d].push_back({fx, fy});
                }
            }
        s.counts[d] = static_cast<int>(nd[d].size());
        s.face_tbl[d].resize(nd[d].size());
    }
    // normalize a pair to (nondegenerate pair, common surjection)
    std::function<std::pair<std::pair<int, int>, Mono>(FormalSimplex, FormalSimplex)>
        normalize = [&](FormalSimplex fx, FormalSimplex fy) {
            int m = fx.dim();
            for (int j = 0; j < m; ++j)
                if (fx.surj[j] == fx.surj[j + 1] && fy.surj[j] == fy.surj[j + 1]) {
                    FormalSimplex fx2 = fx, fy2 = fy;
                    fx2.surj.erase(fx2.surj.begin() + j);
                    fy2.surj.erase(fy2.surj.begin() + j);
                    auto [cell, tau] = normalize(fx2, fy2);
                    return std::make_pair(cell, mono_compose(tau, mono_sigma(j, m - 1)));
                }
            return std::make_pair(std::make_pair(m, idx_of[m].at({fx, fy})),
                                  mono_identity(m));
        };
    for (int d = 1; d <= s.n_max; ++d)
        for (int i = 0; i < s.counts[d]; ++i) {
            s.face_tbl[d][i].resize(d + 1);
            for (int f = 0; f <= d; ++f) {
                FormalSimplex fx = a.apply_face(nd[d][i].first, f);
                FormalSimplex fy = b.apply_face(nd[d][i].second, f);
                auto [cell, tau] = normalize(fx, fy);
                s.face_tbl[d][i][f] = {cell.first, cell.second, tau};
            }
        }
    return s;
}

SimplicialModule free_module(const FiniteSimplicialSet& s, const CoeffRing& ring) {
    SimplicialModule m;
    m.ring = ring;
    m.n_max = s.n_max;
    m.levels.resize(s.n_max + 1);
    std::vector<std::vector<FormalSimplex>> elems(s.n_max + 1);
    std::vector<std::map<FormalSimplex, int>> idx(s.n_max + 1);
    for (int d = 0; d <= s.n_max; ++d) {
        elems[d] = s.level_elements(d);
        m.levels[d] = static_cast<int>(elems[d].size());
        for (int i = 0; i < m.levels[d]; ++i) idx[d][elems[d][i]] = i;
    }
    for (int d = 1; d <= s.n_max; ++d)
        for (int i = 0; i <= d; ++i) {
            Matrix f(ring, m.levels[d - 1], m.levels[d]);
            for (int c = 0; c < m.levels[d]; ++c)
                f.set(idx[d - 1].at(s.apply_face(elems[d][c], i)), c, 1);
            m.faces[{d, i}] = f;
        }
    for (int d = 0; d < s.n_max; ++d)
        for (int j = 0; j <= d; ++j) {
            Matrix g(ring, m.levels[d + 1], m.levels[d]);
            for (int c = 0; c < m.levels[d]; ++c)
                g.set(idx[d + 1].at(s.apply_degen(elems[d][c], j)), c, 1);
            m.degens[{d, j}] = g;
        }
    return m;
}

DgComplex chains_of_simplicial_set(const FiniteSimplicialSet& s, const CoeffRing& ring) {
    return normalized_chains(free_module(s, ring)).complex;
}

// --- polynomial forms ---------------------------------------------------------------

PolyForms::Vec PolyForms::mono_vec(const OmegaMono& m) const { return {{index.at(m), 1}}; }

PolyForms::Vec PolyForms::one() const {
    OmegaMono m;
    m.a.assign(n, 0);
    return mono_vec(m);
}

PolyForms::Vec PolyForms::mul(const Vec& u, const Vec& v) const {
    Vec out;
    for (const auto& [iu, cu] : u)
        for (const auto& [iv, cv] : v) {
            const OmegaMono& mu = basis[iu];
            const OmegaMono& mv = basis[iv];
            // dx factors anticommute; repeated dx vanishes
            bool clash = false;
            int inv = 0;
            for (int sA : mu.S)
                for (int sB : mv.S) {
                    if (sA == sB) clash = true;
                    if (sA > sB) ++inv;
                }
            if (clash) continue;
            OmegaMono prod;
            prod.a.resize(n);
            int total = 0;
            for (int i = 0; i < n; ++i) {
                prod.a[i] = mu.a[i] + mv.a[i];
                total += prod.a[i];
            }
            prod.S.resize(mu.S.size() + mv.S.size());
            std::merge(mu.S.begin(), mu.S.end(), mv.S.begin(), mv.S.end(),
                       prod.S.begin());
            total += static_cast<int>(prod.S.size());
            if (total > D) continue;  // quotient by the degree > D ideal
            mpq_class c = cu * cv;
            if (inv % 2 != 0) c = -c;
            out[index.at(prod)] += c;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (ring.norm(it->second) == 0) ? out.erase(it) : std::next(it);
    return out;
}

PolyForms::Vec PolyForms::d(const Vec& u) const {
    Vec out;
    for (const auto& [iu, cu] : u) {
        const OmegaMono& m = basis[iu];
        for (int i = 1; i <= n; ++i) {
            if (m.a[i - 1] == 0) continue;
            if (std::binary_search(m.S.begin(), m.S.end(), i)) continue;
            OmegaMono nm = m;
            nm.a[i - 1] -= 1;
            int before = static_cast<int>(
                std::lower_bound(nm.S.begin(), nm.S.end(), i) - nm.S.begin());
            nm.S.insert(nm.S.begin() + before, i);
            mpq_class c = cu * m.a[i - 1];
            if (before % 2 != 0) c = -c;
            out[index.at(nm)] += c;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = (ring.norm(it->second) == 0) ? out.erase(it) : std::next(it);
    return out;
}

PolyForms omega_forms(int n, int D, const CoeffRing& ring) {
    if (ring.kind != CoeffRing::Kind::Rationals)
        throw CharNotZero("omega_forms requires rational coefficients");
    PolyForms p;
    p.ring = ring;
    p.n = n;
    p.D = D;
    // enumerate monomials grouped by form degree |S|
    std::vector<std::vector<OmegaMono>> by_deg(n + 1);
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec_a = [&](int i, int used) {
        if (i == n) {
            // choose S among coordinates, |S| <= D - used
            std::vector<int> S;
            std::function<void(int)> rec_s = [&](int start) {
                if (used + static_cast<int>(S.size()) <= D)
                    by_deg[S.size()].push_back({a, S});
                for (int v = start; v <= n; ++v) {
                    if (used + static_cast<int>(S.size()) + 1 > D) break;
                    S.push_back(v);
                    rec_s(v + 1);
                    S.pop_back();
                }
            };
            rec_s(1);
            return;
        }
        for (int e = 0; used + e <= D; ++e) {
            a[i] = e;
            rec_a(i + 1, used + e);
        }
        a[i] = 0;
    };
    rec_a(0, 0);
    p.complex.ring = ring;
    for (int deg = 0; deg <= n; ++deg) {
        std::sort(by_deg[deg].begin(), by_deg[deg].end());
        int off = 0;
        for (const auto& m : by_deg[deg]) {
            p.index[m] = static_cast<int>(p.basis.size());
            p.pos.emplace_back(deg, off++);
            p.basis.push_back(m);
        }
        if (off) p.complex.ranks[deg] = off;
    }
    for (int deg = 0; deg < n; ++deg) {
        if (p.complex.rank(deg) == 0 || p.complex.rank(deg + 1) == 0) continue;
        Matrix dm(ring, p.complex.rank(deg + 1), p.complex.rank(deg));
        for (std::size_t g = 0; g < p.basis.size(); ++g) {
            if (p.pos[g].first != deg) continue;
            PolyForms::Vec img = p.d({{static_cast<int>(g), 1}});
            for (const auto& [tg, c] : img) dm.add_to(p.pos[tg].second, p.pos[g].second, c);
        }
        if (!dm.is_zero()) p.complex.diffs[deg] = dm;
    }
    p.complex.validate();
    return p;
}

namespace {

GradedMap omega_substitution(const PolyForms& src, const PolyForms& tgt,
                             const std::vector<PolyForms::Vec>& ximg) {
    GradedMap f = GradedMap::zero(src.complex, tgt.complex, 0);
    std::map<int, Matrix> blocks;
    for (const auto& [deg, r] : src.complex.ranks)
        blocks.emplace(deg, Matrix(src.ring, tgt.complex.rank(deg), r));
    for (std::size_t g = 0; g < src.basis.size(); ++g) {
        const OmegaMono& m = src.basis[g];
        PolyForms::Vec val = tgt.one();
        for (int i = 1; i <= src.n; ++i)
            for (int e = 0; e < m.a[i - 1]; ++e) val = tgt.mul(val, ximg[i - 1]);
        for (int s : m.S) val = tgt.mul(val, tgt.d(ximg[s - 1]));
        auto [deg, off] = src.pos[g];
        for (const auto& [tg, c] : val) {
            assert(tgt.pos[tg].first == deg);
            blocks.at(deg).add_to(tgt.pos[tg].second, off, c);
        }
    }
    for (auto& [deg, b] : blocks)
        if (!b.is_zero()) f.blocks[deg] = b;
    return f;
}

}  // namespace

GradedMap omega_face(const PolyForms& src, int i) {
    PolyForms tgt = omega_forms(src.n - 1, src.D, src.ring);
    std::vector<PolyForms::Vec> ximg(src.n);
    auto xvar = [&](int j) {  // x_j of the target, 1-based
        OmegaMono m;
        m.a.assign(tgt.n, 0);
        m.a[j - 1] = 1;
        return tgt.mono_vec(m);
    };
    for (int j = 1; j <= src.n; ++j) {
        if (i == 0) {
            if (j == 1) {
                PolyForms::Vec v = tgt.one();
                for (int t = 1; t <= tgt.n; ++t)
                    for (auto& [idx, c] : xvar(t)) v[idx] -= c;
                ximg[j - 1] = v;
                for (auto it = ximg[j - 1].begin(); it != ximg[j - 1].end();)
                    it = (it->second == 0) ? ximg[j - 1].erase(it) : std::next(it);
            } else {
                ximg[j - 1] = xvar(j - 1);
            }
        } else {
            if (j < i)
                ximg[j - 1] = xvar(j);
            else if (j == i)
                ximg[j - 1] = {};
            else
                ximg[j - 1] = xvar(j - 1);
        }
    }
    return omega_substitution(src, tgt, ximg);
}

GradedMap omega_degen(const PolyForms& src, int j) {
    PolyForms tgt = omega_forms(src.n + 1, src.D, src.ring);
    std::vector<PolyForms::Vec> ximg(src.n);
    auto xvar = [&](int t) {
        OmegaMono m;
        m.a.assign(tgt.n, 0);
        m.a[t - 1] = 1;
        return tgt.mono_vec(m);
    };
    for (int t = 1; t <= src.n; ++t) {
        if (t < j)
            ximg[t - 1] = xvar(t);
        else if (t == j) {
            PolyForms::Vec v = xvar(t);
            for (const auto& [idx, c] : xvar(t + 1)) v[idx] += c;
            ximg[t - 1] = v;
        } else
            ximg[t - 1] = xvar(t + 1);
    }
    return omega_substitution(src, tgt, ximg);
}

}  // namespace opforge
