#include "wgkm/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace wgkm {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    internal_check(cols_ == o.rows_, "IntMat dimension mismatch in product");
    IntMat p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            Int v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols_; ++c) p.at(r, c) += v * o.at(k, c);
        }
    return p;
}

IntVec IntMat::operator*(const IntVec& v) const {
    internal_check(static_cast<int>(v.size()) == cols_, "IntMat/vector dimension mismatch");
    IntVec out(rows_, 0);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
    return out;
}

IntVec IntMat::row(int r) const {
    IntVec v(cols_);
    for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

IntVec IntMat::col(int c) const {
    IntVec v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

RatMat RatMat::from(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(static_cast<long>(m.at(i, j)));
    return r;
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    internal_check(cols_ == o.rows_, "RatMat dimension mismatch in product");
    RatMat p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Rat& v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols_; ++c) p.at(r, c) += v * o.at(k, c);
        }
    return p;
}

RatVec RatMat::operator*(const RatVec& v) const {
    internal_check(static_cast<int>(v.size()) == cols_, "RatMat/vector dimension mismatch");
    RatVec out(rows_, Rat(0));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (v[c] != 0) out[r] += at(r, c) * v[c];
    return out;
}

Int gcd_ll(Int a, Int b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int content(const IntVec& v) {
    Int g = 0;
    for (Int x : v) g = gcd_ll(g, x);
    return g;
}

bool is_zero_vec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
    internal_check(a.size() == b.size(), "vector size mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    internal_check(a.size() == b.size(), "vector size mismatch");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec vec_neg(const IntVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

IntVec vec_scale(const IntVec& v, Int s) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
    return r;
}

namespace {

// Row/column elementary operations that keep U*A*V = D in sync.
struct SmithWork {
    IntMat D, U, V;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < D.cols(); ++c) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < D.rows(); ++r) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
    }
    void row_negate(int i) {
        for (int c = 0; c < D.cols(); ++c) D.at(i, c) = -D.at(i, c);
        for (int c = 0; c < U.cols(); ++c) U.at(i, c) = -U.at(i, c);
    }
    // row_i += k * row_j
    void row_add(int i, int j, Int k) {
        if (k == 0) return;
        for (int c = 0; c < D.cols(); ++c) D.at(i, c) += k * D.at(j, c);
        for (int c = 0; c < U.cols(); ++c) U.at(i, c) += k * U.at(j, c);
    }
    // col_i += k * col_j
    void col_add(int i, int j, Int k) {
        if (k == 0) return;
        for (int r = 0; r < D.rows(); ++r) D.at(r, i) += k * D.at(r, j);
        for (int r = 0; r < V.rows(); ++r) V.at(r, i) += k * V.at(r, j);
    }
};

} // namespace

SmithResult smith_normal_form(const IntMat& A) {
    const int m = A.rows(), n = A.cols();
    SmithWork w{A, IntMat::identity(m), IntMat::identity(n)};

    int t = 0;
    const int tmax = std::min(m, n);
    while (t < tmax) {
        // Deterministic pivot: smallest |entry| in the remaining block, row-major tie-break.
        int pr = -1, pc = -1;
        Int best = 0;
        for (int r = t; r < m; ++r)
            for (int c = t; c < n; ++c) {
                Int v = std::llabs(w.D.at(r, c));
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break; // remaining block is zero
        w.row_swap(t, pr);
        w.col_swap(t, pc);
        if (w.D.at(t, t) < 0) w.row_negate(t);

        bool clean = true;
        for (int r = t + 1; r < m; ++r) {
            Int q = w.D.at(r, t) / w.D.at(t, t);
            w.row_add(r, t, -q);
            if (w.D.at(r, t) != 0) clean = false;
        }
        for (int c = t + 1; c < n; ++c) {
            Int q = w.D.at(t, c) / w.D.at(t, t);
            w.col_add(c, t, -q);
            if (w.D.at(t, c) != 0) clean = false;
        }
        if (!clean) continue; // smaller remainders appeared; redo this pivot

        // Enforce divisibility d_t | entries of the remaining block.
        bool fixed = false;
        for (int r = t + 1; r < m && !fixed; ++r)
            for (int c = t + 1; c < n && !fixed; ++c)
                if (w.D.at(r, c) % w.D.at(t, t) != 0) {
                    w.row_add(t, r, 1);
                    fixed = true;
                }
        if (fixed) continue;
        ++t;
    }

    SmithResult res{w.U, w.V, w.D, 0};
    for (int i = 0; i < tmax; ++i)
        if (w.D.at(i, i) != 0) ++res.rank;
    return res;
}

UnimodularCompletion complete_to_unimodular(const IntVec& c) {
    const int n = static_cast<int>(c.size());
    require(!is_zero_vec(c), ErrorKind::Computation, "cannot complete the zero vector");
    internal_check(content(c) == 1, "complete_to_unimodular expects a primitive vector");

    IntMat A(n, 1);
    for (int i = 0; i < n; ++i) A.at(i, 0) = c[i];
    SmithResult s = smith_normal_form(A);
    // U*A*V = e_1 with V = (+-1); fold V's sign into U so that M*c = e_1 exactly.
    internal_check(s.rank == 1 && s.D.at(0, 0) == 1, "primitive vector should have Smith form e_1");
    IntMat M = s.U;
    if (s.V.at(0, 0) == -1)
        for (int ccol = 0; ccol < n; ++ccol) M.at(0, ccol) = -M.at(0, ccol);
    IntMat Minv = int_inverse_unimodular(M);
    IntVec check = M * c;
    internal_check(check[0] == 1, "unimodular completion failed");
    for (int i = 1; i < n; ++i) internal_check(check[i] == 0, "unimodular completion failed");
    return {M, Minv};
}

RatMat rat_inverse(const RatMat& A) {
    const int n = A.rows();
    require(A.cols() == n, ErrorKind::Computation, "inverse of non-square matrix");
    RatMat work = A, inv = RatMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (work.at(r, col) != 0) {
                piv = r;
                break;
            }
        require(piv >= 0, ErrorKind::Computation, "matrix is singular");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(work.at(piv, c), work.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        Rat d = work.at(col, col);
        for (int c = 0; c < n; ++c) {
            work.at(col, c) /= d;
            inv.at(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rat f = work.at(r, col);
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                work.at(r, c) -= f * work.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

int rat_rank(RatMat A) {
    int rank = 0;
    const int m = A.rows(), n = A.cols();
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (A.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = col; c < n; ++c) std::swap(A.at(piv, c), A.at(rank, c));
        for (int r = rank + 1; r < m; ++r) {
            if (A.at(r, col) == 0) continue;
            Rat f = A.at(r, col) / A.at(rank, col);
            for (int c = col; c < n; ++c) A.at(r, c) -= f * A.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

std::vector<RatVec> rat_nullspace(const RatMat& A) {
    const int m = A.rows(), n = A.cols();
    RatMat E = A;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (E.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < n; ++c) std::swap(E.at(piv, c), E.at(rank, c));
        Rat d = E.at(rank, col);
        for (int c = 0; c < n; ++c) E.at(rank, c) /= d;
        for (int r = 0; r < m; ++r) {
            if (r == rank) continue;
            Rat f = E.at(r, col);
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) E.at(r, c) -= f * E.at(rank, c);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<RatVec> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(n, Rat(0));
        v[free] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -E.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatVec rat_solve(const RatMat& A, const RatVec& b) {
    const int m = A.rows(), n = A.cols();
    internal_check(static_cast<int>(b.size()) == m, "rat_solve dimension mismatch");
    RatMat E(m, n + 1);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) E.at(r, c) = A.at(r, c);
        E.at(r, n) = b[r];
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (E.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c <= n; ++c) std::swap(E.at(piv, c), E.at(rank, c));
        Rat d = E.at(rank, col);
        for (int c = 0; c <= n; ++c) E.at(rank, c) /= d;
        for (int r = 0; r < m; ++r) {
            if (r == rank) continue;
            Rat f = E.at(r, col);
            if (f == 0) continue;
            for (int c = 0; c <= n; ++c) E.at(r, c) -= f * E.at(rank, c);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int r = rank; r < m; ++r)
        require(E.at(r, n) == 0, ErrorKind::Computation, "inconsistent linear system");
    require(rank == n, ErrorKind::Computation, "underdetermined linear system");
    RatVec x(n, Rat(0));
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = E.at(r, n);
    return x;
}

IntMat int_inverse_unimodular(const IntMat& A) {
    RatMat inv = rat_inverse(RatMat::from(A));
    IntMat out;
    internal_check(rat_mat_is_integral(inv, &out), "matrix inverse is not integral (not unimodular)");
    return out;
}

bool rat_mat_is_integral(const RatMat& A, IntMat* out) {
    IntMat m(A.rows(), A.cols());
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            const Rat& q = A.at(r, c);
            if (!rat_is_integer(q)) return false;
            if (!q.get_num().fits_slong_p()) return false;
            m.at(r, c) = q.get_num().get_si();
        }
    if (out) *out = m;
    return true;
}

} // namespace wgkm
