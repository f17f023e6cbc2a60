#include "opforge/complex.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

namespace opforge {

// --- DgComplex ---------------------------------------------------------------

long DgComplex::total_rank() const {
    long t = 0;
    for (const auto& [n, r] : ranks) t += r;
    return t;
}

long DgComplex::euler_characteristic() const {
    long t = 0;
    for (const auto& [n, r] : ranks) t += (n % 2 == 0) ? r : -r;
    return t;
}

void DgComplex::validate() const {
    for (const auto& [n, r] : ranks) {
        if (r <= 0) throw std::invalid_argument("nonpositive rank stored");
        (void)n;
    }
    for (const auto& [n, d] : diffs) {
        if (d.ring() != ring) throw std::invalid_argument("differential ring mismatch");
        if (d.rows() != rank(n + 1) || d.cols() != rank(n))
            throw std::invalid_argument("differential shape mismatch at degree " +
                                        std::to_string(n));
    }
    for (const auto& [n, d] : diffs) {
        if (rank(n + 2) == 0) continue;
        if (!(diff(n + 1) * d).is_zero())
            throw std::invalid_argument("d^2 != 0 at degree " + std::to_string(n));
    }
}

DgComplex DgComplex::point(const CoeffRing& ring, int degree, int rank) {
    DgComplex c;
    c.ring = ring;
    if (rank > 0) c.ranks[degree] = rank;
    return c;
}

// --- GradedMap ---------------------------------------------------------------

void GradedMap::set_block(int n, const Matrix& m) {
    if (m.rows() != target.rank(n + degree) || m.cols() != source.rank(n))
        throw std::invalid_argument("graded map block shape mismatch");
    if (m.is_zero())
        blocks.erase(n);
    else
        blocks[n] = m;
}

bool GradedMap::is_zero() const {
    for (const auto& [n, b] : blocks)
        if (!b.is_zero()) return false;
    return true;
}

GradedMap GradedMap::zero(const DgComplex& src, const DgComplex& tgt, int degree) {
    GradedMap f;
    f.source = src;
    f.target = tgt;
    f.degree = degree;
    return f;
}

GradedMap GradedMap::identity(const DgComplex& c) {
    GradedMap f = zero(c, c, 0);
    for (const auto& [n, r] : c.ranks) f.blocks[n] = Matrix::identity(c.ring, r);
    return f;
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
    if (inner.target != source)
        throw std::invalid_argument("compose: middle complexes differ");
    GradedMap out = zero(inner.source, target, degree + inner.degree);
    for (const auto& [n, b] : inner.blocks) {
        Matrix m = block(n + inner.degree) * b;
        if (!m.is_zero()) out.blocks[n] = m;
    }
    return out;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (source != o.source || target != o.target || degree != o.degree)
        throw std::invalid_argument("graded map addition mismatch");
    GradedMap out = *this;
    for (const auto& [n, b] : o.blocks) {
        Matrix m = out.block(n) + b;
        if (m.is_zero())
            out.blocks.erase(n);
        else
            out.blocks[n] = m;
    }
    return out;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + (-o); }

GradedMap GradedMap::operator-() const { return scaled(-1); }

GradedMap GradedMap::scaled(const mpq_class& s) const {
    GradedMap out = zero(source, target, degree);
    if (source.ring.norm(s) == 0) return out;
    for (const auto& [n, b] : blocks) out.blocks[n] = b.scaled(source.ring.norm(s));
    return out;
}

bool GradedMap::operator==(const GradedMap& o) const {
    if (source != o.source || target != o.target || degree != o.degree) return false;
    std::set<int> degs;
    for (const auto& [n, b] : blocks) degs.insert(n);
    for (const auto& [n, b] : o.blocks) degs.insert(n);
    for (int n : degs)
        if (block(n) != o.block(n)) return false;
    return true;
}

bool GradedMap::is_chain_map() const {
    mpq_class sign = (degree % 2 == 0) ? 1 : -1;
    int lo = std::min(source.min_degree(), target.min_degree() - degree) - 1;
    int hi = std::max(source.max_degree(), target.max_degree() - degree) + 1;
    for (int n = lo; n <= hi; ++n)
        if (target.diff(n + degree) * block(n) != block(n + 1).scaled(sign) * source.diff(n))
            return false;
    return true;
}

void GradedMap::validate() const {
    for (const auto& [n, b] : blocks)
        if (b.rows() != target.rank(n + degree) || b.cols() != source.rank(n))
            throw std::invalid_argument("graded map block shape mismatch at degree " +
                                        std::to_string(n));
}

// --- tensor layout -----------------------------------------------------------

namespace {

void enumerate_tuples(const std::vector<DgComplex>& fs, std::size_t pos,
                      std::vector<int>& cur, int deg_so_far,
                      const std::function<void(const std::vector<int>&, int)>& emit) {
    if (pos == fs.size()) {
        emit(cur, deg_so_far);
        return;
    }
    for (const auto& [n, r] : fs[pos].ranks) {
        (void)r;
        cur.push_back(n);
        enumerate_tuples(fs, pos + 1, cur, deg_so_far + n, emit);
        cur.pop_back();
    }
}

std::vector<int> strides_for(const std::vector<DgComplex>& fs,
                             const std::vector<int>& degs) {
    std::vector<int> st(fs.size(), 1);
    for (int t = static_cast<int>(fs.size()) - 2; t >= 0; --t)
        st[t] = st[t + 1] * fs[t + 1].rank(degs[t + 1]);
    return st;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (const auto& [rc1, v1] : a.entries())
        for (const auto& [rc2, v2] : b.entries())
            m.set(rc1.first * b.rows() + rc2.first, rc1.second * b.cols() + rc2.second,
                  v1 * v2);
    return m;
}

}  // namespace

TensorLayout::TensorLayout(std::vector<DgComplex> fs) : factors(std::move(fs)) {
    std::vector<int> cur;
    enumerate_tuples(factors, 0, cur, 0, [&](const std::vector<int>& degs, int n) {
        int r = 1;
        for (std::size_t t = 0; t < factors.size(); ++t) r *= factors[t].rank(degs[t]);
        if (r == 0) return;
        offsets[n][degs] = total[n];
        tuples[n].push_back(degs);
        total[n] += r;
    });
    // drop zero-rank degrees
    for (auto it = total.begin(); it != total.end();)
        it = it->second == 0 ? total.erase(it) : std::next(it);
}

int TensorLayout::offset(int n, const std::vector<int>& degs) const {
    return offsets.at(n).at(degs);
}

int TensorLayout::tuple_rank(const std::vector<int>& degs) const {
    int r = 1;
    for (std::size_t t = 0; t < factors.size(); ++t) r *= factors[t].rank(degs[t]);
    return r;
}

DgComplex tensor_many(const std::vector<DgComplex>& factors) {
    CoeffRing ring = factors.empty() ? CoeffRing::rationals() : factors[0].ring;
    for (const auto& f : factors)
        if (f.ring != ring) throw RingMismatch("tensor over mixed rings");
    TensorLayout lay(factors);
    DgComplex out;
    out.ring = ring;
    for (const auto& [n, r] : lay.total)
        if (r > 0) out.ranks[n] = r;
    for (const auto& [n, tups] : lay.tuples) {
        if (out.rank(n + 1) == 0 && out.rank(n) == 0) continue;
        Matrix d(ring, out.rank(n + 1), out.rank(n));
        for (const auto& degs : tups) {
            int o = lay.offset(n, degs);
            std::vector<int> st = strides_for(factors, degs);
            for (std::size_t t = 0; t < factors.size(); ++t) {
                Matrix dt = factors[t].diff(degs[t]);
                if (dt.is_zero()) continue;
                std::vector<int> tdegs = degs;
                tdegs[t] += 1;
                if (lay.tuple_rank(tdegs) == 0) continue;
                int o2 = lay.offset(n + 1, tdegs);
                std::vector<int> st2 = strides_for(factors, tdegs);
                int parity = 0;
                for (std::size_t u = 0; u < t; ++u) parity += degs[u];
                mpq_class sign = (parity % 2 == 0) ? 1 : -1;
                // odometer over the other factors' indices
                std::vector<int> idx(factors.size(), 0);
                bool done = false;
                while (!done) {
                    int base = 0, base2 = 0;
                    for (std::size_t u = 0; u < factors.size(); ++u)
                        if (u != t) {
                            base += idx[u] * st[u];
                            base2 += idx[u] * st2[u];
                        }
                    for (const auto& [rc, v] : dt.entries())
                        d.add_to(o2 + base2 + rc.first * st2[t],
                                 o + base + rc.second * st[t], v * sign);
                    done = true;
                    for (int u = static_cast<int>(factors.size()) - 1; u >= 0; --u) {
                        if (u == static_cast<int>(t)) continue;
                        if (++idx[u] < factors[u].rank(degs[u])) {
                            done = false;
                            break;
                        }
                        idx[u] = 0;
                    }
                }
            }
        }
        if (!d.is_zero()) out.diffs[n] = d;
    }
    out.validate();
    return out;
}

DgComplex tensor(const DgComplex& a, const DgComplex& b) { return tensor_many({a, b}); }

GradedMap tensor_map_many(const std::vector<GradedMap>& fs) {
    std::vector<DgComplex> srcs, tgts;
    int deg = 0;
    for (const auto& f : fs) {
        srcs.push_back(f.source);
        tgts.push_back(f.target);
        deg += f.degree;
    }
    DgComplex src = tensor_many(srcs), tgt = tensor_many(tgts);
    CoeffRing ring = src.ring;
    TensorLayout ls(srcs), lt(tgts);
    GradedMap out = GradedMap::zero(src, tgt, deg);
    for (const auto& [n, tups] : ls.tuples) {
        Matrix blk(ring, tgt.rank(n + deg), src.rank(n));
        for (const auto& degs : tups) {
            std::vector<int> tdegs(degs.size());
            bool nonzero = true;
            for (std::size_t t = 0; t < fs.size(); ++t) {
                tdegs[t] = degs[t] + fs[t].degree;
                if (tgts[t].rank(tdegs[t]) == 0) nonzero = false;
            }
            if (!nonzero) continue;
            // Koszul: moving f_u past x_1..x_{u-1}
            int parity = 0;
            for (std::size_t u = 0; u < fs.size(); ++u)
                if (fs[u].degree % 2 != 0) {
                    int s = 0;
                    for (std::size_t t = 0; t < u; ++t) s += degs[t];
                    parity += s;
                }
            Matrix piece = Matrix::identity(ring, 1);
            for (std::size_t t = 0; t < fs.size(); ++t)
                piece = kron(piece, fs[t].block(degs[t]));
            if (parity % 2 != 0) piece = -piece;
            int o = ls.offset(n, degs);
            int o2 = lt.offset(n + deg, tdegs);
            for (const auto& [rc, v] : piece.entries())
                blk.set(o2 + rc.first, o + rc.second, v);
        }
        if (!blk.is_zero()) out.blocks[n] = blk;
    }
    return out;
}

GradedMap tensor_map(const GradedMap& f, const GradedMap& g) {
    return tensor_map_many({f, g});
}

GradedMap permute_factors(const std::vector<DgComplex>& factors,
                          const std::vector<int>& sigma) {
    std::size_t k = factors.size();
    if (sigma.size() != k) throw std::invalid_argument("permutation size mismatch");
    std::vector<DgComplex> tf(k);
    for (std::size_t t = 0; t < k; ++t) tf[sigma[t]] = factors[t];
    DgComplex src = tensor_many(factors), tgt = tensor_many(tf);
    CoeffRing ring = src.ring;
    TensorLayout ls(factors), lt(tf);
    GradedMap out = GradedMap::zero(src, tgt, 0);
    for (const auto& [n, tups] : ls.tuples) {
        Matrix blk(ring, tgt.rank(n), src.rank(n));
        for (const auto& degs : tups) {
            std::vector<int> tdegs(k);
            for (std::size_t t = 0; t < k; ++t) tdegs[sigma[t]] = degs[t];
            int parity = 0;
            for (std::size_t t = 0; t < k; ++t)
                for (std::size_t u = t + 1; u < k; ++u)
                    if (sigma[t] > sigma[u]) parity += degs[t] * degs[u];
            mpq_class sign = (parity % 2 == 0) ? 1 : -1;
            int o = ls.offset(n, degs);
            int o2 = lt.offset(n, tdegs);
            std::vector<int> st = strides_for(factors, degs);
            std::vector<int> st2 = strides_for(tf, tdegs);
            std::vector<int> idx(k, 0);
            bool done = factors.empty();
            if (k == 0) blk.set(o2, o, sign);
            while (!done) {
                int col = o, row = o2;
                for (std::size_t t = 0; t < k; ++t) {
                    col += idx[t] * st[t];
                    row += idx[t] * st2[sigma[t]];
                }
                blk.set(row, col, sign);
                done = true;
                for (int u = static_cast<int>(k) - 1; u >= 0; --u) {
                    if (++idx[u] < factors[u].rank(degs[u])) {
                        done = false;
                        break;
                    }
                    idx[u] = 0;
                }
            }
        }
        if (!blk.is_zero()) out.blocks[n] = blk;
    }
    return out;
}

GradedMap group_factors(const std::vector<DgComplex>& factors,
                        const std::vector<int>& group_sizes) {
    std::size_t k = factors.size();
    {
        std::size_t s = 0;
        for (int g : group_sizes) {
            if (g < 0) throw std::invalid_argument("negative group size");
            s += g;
        }
        if (s != k) throw std::invalid_argument("group sizes do not sum to factor count");
    }
    std::vector<std::vector<DgComplex>> slices;
    std::vector<DgComplex> gcx;
    {
        std::size_t at = 0;
        for (int g : group_sizes) {
            slices.emplace_back(factors.begin() + at, factors.begin() + at + g);
            gcx.push_back(tensor_many(slices.back()));
            at += g;
        }
    }
    DgComplex src = tensor_many(factors), tgt = tensor_many(gcx);
    std::vector<TensorLayout> glay;
    for (const auto& sl : slices) glay.emplace_back(sl);
    TensorLayout ls(factors), lt(gcx);
    GradedMap out = GradedMap::zero(src, tgt, 0);
    for (const auto& [n, tups] : ls.tuples) {
        Matrix blk(src.ring, tgt.rank(n), src.rank(n));
        for (const auto& degs : tups) {
            std::vector<int> gd(group_sizes.size());
            std::vector<std::vector<int>> sdegs(group_sizes.size());
            {
                std::size_t at = 0;
                for (std::size_t t = 0; t < group_sizes.size(); ++t) {
                    int sum = 0;
                    for (int u = 0; u < group_sizes[t]; ++u) {
                        sdegs[t].push_back(degs[at + u]);
                        sum += degs[at + u];
                    }
                    gd[t] = sum;
                    at += group_sizes[t];
                }
            }
            int o = ls.offset(n, degs);
            int o2 = lt.offset(n, gd);
            std::vector<int> st = strides_for(factors, degs);
            std::vector<int> gst = strides_for(gcx, gd);
            std::vector<int> goff(group_sizes.size());
            std::vector<std::vector<int>> sst(group_sizes.size());
            for (std::size_t t = 0; t < group_sizes.size(); ++t) {
                goff[t] = group_sizes[t] ? glay[t].offset(gd[t], sdegs[t])
                                         : glay[t].offset(0, {});
                sst[t] = strides_for(slices[t], sdegs[t]);
            }
            std::vector<int> idx(k, 0);
            bool done = false;
            while (!done) {
                int col = o, row = o2;
                {
                    std::size_t at = 0;
                    for (std::size_t t = 0; t < group_sizes.size(); ++t) {
                        int inner = goff[t];
                        for (int u = 0; u < group_sizes[t]; ++u) {
                            col += idx[at + u] * st[at + u];
                            inner += idx[at + u] * sst[t][u];
                        }
                        row += inner * gst[t];
                        at += group_sizes[t];
                    }
                }
                blk.set(row, col, 1);
                done = true;
                for (int u = static_cast<int>(k) - 1; u >= 0; --u) {
                    if (++idx[u] < factors[u].rank(degs[u])) {
                        done = false;
                        break;
                    }
                    idx[u] = 0;
                }
                if (k == 0) done = true;
            }
        }
        if (!blk.is_zero()) out.blocks[n] = blk;
    }
    return out;
}

// --- constructions -----------------------------------------------------------

DgComplex shift(const DgComplex& x, int s) {
    DgComplex out;
    out.ring = x.ring;
    for (const auto& [n, r] : x.ranks) out.ranks[n + s] = r;
    mpq_class sign = (s % 2 == 0) ? 1 : -1;
    for (const auto& [n, d] : x.diffs)
        if (!d.is_zero()) out.diffs[n + s] = d.scaled(sign);
    return out;
}

GradedMap shift_map(const GradedMap& f, int s) {
    GradedMap out = GradedMap::zero(shift(f.source, s), shift(f.target, s), f.degree);
    for (const auto& [n, b] : f.blocks) out.blocks[n + s] = b;
    return out;
}

DirectSum direct_sum(const DgComplex& a, const DgComplex& b) {
    if (a.ring != b.ring) throw RingMismatch("direct sum over mixed rings");
    DgComplex s;
    s.ring = a.ring;
    std::set<int> degs;
    for (const auto& [n, r] : a.ranks) degs.insert(n);
    for (const auto& [n, r] : b.ranks) degs.insert(n);
    for (int n : degs) s.ranks[n] = a.rank(n) + b.rank(n);
    for (int n : degs) {
        if (s.rank(n + 1) == 0) continue;
        Matrix d(s.ring, s.rank(n + 1), s.rank(n));
        Matrix da = a.diff(n), db = b.diff(n);
        for (const auto& [rc, v] : da.entries()) d.set(rc.first, rc.second, v);
        for (const auto& [rc, v] : db.entries())
            d.set(a.rank(n + 1) + rc.first, a.rank(n) + rc.second, v);
        if (!d.is_zero()) s.diffs[n] = d;
    }
    DirectSum out{s, GradedMap::zero(a, s), GradedMap::zero(b, s), GradedMap::zero(s, a),
                  GradedMap::zero(s, b)};
    for (int n : degs) {
        int ra = a.rank(n), rb = b.rank(n);
        if (ra) {
            Matrix ia(s.ring, ra + rb, ra), pa(s.ring, ra, ra + rb);
            for (int i = 0; i < ra; ++i) {
                ia.set(i, i, 1);
                pa.set(i, i, 1);
            }
            out.incl_a.blocks[n] = ia;
            out.proj_a.blocks[n] = pa;
        }
        if (rb) {
            Matrix ib(s.ring, ra + rb, rb), pb(s.ring, rb, ra + rb);
            for (int i = 0; i < rb; ++i) {
                ib.set(ra + i, i, 1);
                pb.set(i, ra + i, 1);
            }
            out.incl_b.blocks[n] = ib;
            out.proj_b.blocks[n] = pb;
        }
    }
    return out;
}

MultiSum direct_sum_many(const std::vector<DgComplex>& summands) {
    CoeffRing ring = summands.empty() ? CoeffRing::rationals() : summands[0].ring;
    for (const auto& s : summands)
        if (s.ring != ring) throw RingMismatch("direct sum over mixed rings");
    std::set<int> degs;
    for (const auto& s : summands)
        for (const auto& [n, r] : s.ranks) degs.insert(n);
    DgComplex sum;
    sum.ring = ring;
    std::map<int, std::vector<int>> off;  // degree -> per-summand offset
    for (int n : degs) {
        int t = 0;
        for (const auto& s : summands) {
            off[n].push_back(t);
            t += s.rank(n);
        }
        if (t) sum.ranks[n] = t;
    }
    for (int n : degs) {
        if (sum.rank(n + 1) == 0) continue;
        Matrix d(ring, sum.rank(n + 1), sum.rank(n));
        for (std::size_t t = 0; t < summands.size(); ++t) {
            Matrix dt = summands[t].diff(n);
            for (const auto& [rc, v] : dt.entries())
                d.set(off[n + 1][t] + rc.first, off[n][t] + rc.second, v);
        }
        if (!d.is_zero()) sum.diffs[n] = d;
    }
    MultiSum out{sum, {}, {}};
    for (std::size_t t = 0; t < summands.size(); ++t) {
        GradedMap in = GradedMap::zero(summands[t], sum);
        GradedMap pr = GradedMap::zero(sum, summands[t]);
        for (const auto& [n, r] : summands[t].ranks) {
            Matrix im(ring, sum.rank(n), r), pm(ring, r, sum.rank(n));
            for (int i = 0; i < r; ++i) {
                im.set(off[n][t] + i, i, 1);
                pm.set(i, off[n][t] + i, 1);
            }
            in.blocks[n] = im;
            pr.blocks[n] = pm;
        }
        out.incl.push_back(std::move(in));
        out.proj.push_back(std::move(pr));
    }
    return out;
}

DgComplex cone(const GradedMap& f) {
    if (f.degree != 0 || !f.is_chain_map())
        throw std::invalid_argument("cone requires a degree-0 chain map");
    const DgComplex& x = f.source;
    const DgComplex& y = f.target;
    DgComplex c;
    c.ring = x.ring;
    std::set<int> degs;
    for (const auto& [n, r] : x.ranks) degs.insert(n - 1);
    for (const auto& [n, r] : y.ranks) degs.insert(n);
    for (int n : degs) {
        int r = x.rank(n + 1) + y.rank(n);
        if (r) c.ranks[n] = r;
    }
    for (int n : degs) {
        int rows = x.rank(n + 2) + y.rank(n + 1);
        int cols = x.rank(n + 1) + y.rank(n);
        if (!rows || !cols) continue;
        Matrix d(c.ring, rows, cols);
        Matrix dx = x.diff(n + 1), fb = f.block(n + 1), dy = y.diff(n);
        for (const auto& [rc, v] : dx.entries()) d.set(rc.first, rc.second, -v);
        for (const auto& [rc, v] : fb.entries())
            d.set(x.rank(n + 2) + rc.first, rc.second, v);
        for (const auto& [rc, v] : dy.entries())
            d.set(x.rank(n + 2) + rc.first, x.rank(n + 1) + rc.second, v);
        if (!d.is_zero()) c.diffs[n] = d;
    }
    c.validate();
    return c;
}

DgComplex cone_of_identity(const CoeffRing& ring, int degree) {
    DgComplex c;
    c.ring = ring;
    c.ranks[degree] = 1;
    c.ranks[degree + 1] = 1;
    Matrix d(ring, 1, 1);
    d.set(0, 0, 1);
    c.diffs[degree] = d;
    return c;
}

QuotientComplex quotient_by_subspace(const DgComplex& x,
                                     const std::map<int, Matrix>& spans) {
    auto span_at = [&](int n) {
        auto it = spans.find(n);
        return it == spans.end() ? Matrix(x.ring, x.rank(n), 0) : it->second;
    };
    // d-closedness
    for (const auto& [n, sp] : spans) {
        if (sp.rows() != x.rank(n)) throw std::invalid_argument("span shape mismatch");
        Matrix img = x.diff(n) * sp;
        if (img.is_zero()) continue;
        if (!in_span(span_at(n + 1), img))
            throw NotDClosed("span not closed under d at degree " + std::to_string(n));
    }
    std::map<int, QuotientData> qd;
    for (const auto& [n, r] : x.ranks) qd[n] = quotient_by_span(span_at(n), r, x.ring);
    DgComplex q;
    q.ring = x.ring;
    for (const auto& [n, data] : qd)
        if (data.quotient_rank) q.ranks[n] = data.quotient_rank;
    for (const auto& [n, data] : qd) {
        if (q.rank(n + 1) == 0) continue;
        Matrix d = qd.at(n + 1).projection * x.diff(n) * data.section;
        if (!d.is_zero()) q.diffs[n] = d;
    }
    q.validate();
    QuotientComplex out{q, GradedMap::zero(x, q), GradedMap::zero(q, x)};
    for (const auto& [n, data] : qd) {
        if (!data.projection.is_zero()) out.projection.blocks[n] = data.projection;
        if (!data.section.is_zero()) out.section.blocks[n] = data.section;
    }
    return out;
}

// --- homology ----------------------------------------------------------------

HomologyReport homology(const DgComplex& x) {
    HomologyReport rep;
    for (const auto& [n, r] : x.ranks) {
        Matrix z = kernel_basis(x.diff(n));
        if (z.cols() == 0) continue;
        auto coords = solve(z, x.diff(n - 1));
        assert(coords.has_value());
        CokernelPresentation ck = cokernel_presentation(*coords);
        if (ck.free_rank == 0 && ck.torsion.empty()) continue;
        rep[n] = HomologyGroup{ck.free_rank, ck.torsion};
    }
    return rep;
}

GradedMap signed_permutation_inverse(const GradedMap& f) {
    GradedMap g = GradedMap::zero(f.target, f.source, -f.degree);
    for (const auto& [n, m] : f.blocks)
        if (!m.is_zero()) g.blocks[n + f.degree] = m.transpose();
    return g;
}

GradedMap differential_map(const DgComplex& x) {
    GradedMap d = GradedMap::zero(x, x, 1);
    for (const auto& [n, m] : x.diffs)
        if (!m.is_zero()) d.blocks[n] = m;
    return d;
}

bool is_acyclic(const DgComplex& x) { return homology(x).empty(); }

QuasiIsoResult is_quasi_iso(const GradedMap& f) {
    if (f.degree != 0 || !f.is_chain_map())
        throw std::invalid_argument("is_quasi_iso requires a degree-0 chain map");
    const DgComplex& x = f.source;
    const DgComplex& y = f.target;
    std::set<int> degs;
    for (const auto& [n, r] : x.ranks) degs.insert(n);
    for (const auto& [n, r] : y.ranks) degs.insert(n);
    for (int n : degs) {
        Matrix zx = kernel_basis(x.diff(n));
        Matrix zy = kernel_basis(y.diff(n));
        auto F = solve(zy, f.block(n) * zx);
        auto py = solve(zy, y.diff(n - 1));
        auto px = solve(zx, x.diff(n - 1));
        assert(F && py && px);
        // surjective on homology
        CokernelPresentation ck = cokernel_presentation(F->hstack(*py));
        if (ck.free_rank != 0 || !ck.torsion.empty()) return {false, n};
        // injective on homology
        Matrix ker = kernel_basis(F->hstack(*py));
        Matrix xparts(x.ring, zx.cols(), ker.cols());
        for (const auto& [rc, v] : ker.entries())
            if (rc.first < zx.cols()) xparts.set(rc.first, rc.second, v);
        if (!xparts.is_zero() && !in_span(*px, xparts)) return {false, n};
    }
    return {true, std::nullopt};
}

}  // namespace opforge
