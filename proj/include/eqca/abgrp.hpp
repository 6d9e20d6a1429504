#pragma once
// Exact integer linear algebra: matrices, Smith normal form, kernels,
// cokernels, solving, finitely presented abelian groups, hom groups.
#include "int.hpp"
#include <algorithm>
#include <optional>
#include <numeric>

namespace eqca {

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Int> a; // row-major

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    Mat(int r, int c, std::vector<Int> entries) : rows(r), cols(c), a(std::move(entries)) {
        if (a.size() != size_t(r) * c) fail(ErrKind::internal, "matrix entry count mismatch");
    }

    Int& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat zero(int r, int c) { return Mat(r, c); }

    bool is_zero() const {
        for (auto& x : a) if (x != 0) return false;
        return true;
    }
    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const {
        Mat t(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols != o.rows) fail(ErrKind::internal, "matrix product dimension mismatch");
        Mat p(rows, o.cols);
        for (int r = 0; r < rows; ++r)
            for (int k = 0; k < cols; ++k) {
                const Int& v = at(r, k);
                if (v == 0) continue;
                for (int c = 0; c < o.cols; ++c)
                    if (o.at(k, c) != 0) p.at(r, c) += v * o.at(k, c);
            }
        return p;
    }
    Mat operator+(const Mat& o) const {
        Mat p(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) p.a[i] = a[i] + o.a[i];
        return p;
    }
    Mat operator-(const Mat& o) const {
        Mat p(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) p.a[i] = a[i] - o.a[i];
        return p;
    }
    Mat scaled(const Int& c) const {
        Mat p(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) p.a[i] = c * a[i];
        return p;
    }

    Vec apply(const Vec& v) const {
        if (int(v.size()) != cols) fail(ErrKind::internal, "matrix apply dimension mismatch");
        Vec r(rows);
        for (int i = 0; i < rows; ++i) {
            Int s = 0;
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != 0) s += at(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    Vec col(int c) const {
        Vec v(rows);
        for (int r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
    Vec row(int r) const {
        Vec v(cols);
        for (int c = 0; c < cols; ++c) v[c] = at(r, c);
        return v;
    }
    void set_col(int c, const Vec& v) {
        for (int r = 0; r < rows; ++r) at(r, c) = v[r];
    }
    void set_row(int r, const Vec& v) {
        for (int c = 0; c < cols; ++c) at(r, c) = v[c];
    }

    static Mat hstack(const Mat& l, const Mat& r) {
        if (l.rows != r.rows) fail(ErrKind::internal, "hstack row mismatch");
        Mat m(l.rows, l.cols + r.cols);
        for (int i = 0; i < l.rows; ++i) {
            for (int j = 0; j < l.cols; ++j) m.at(i, j) = l.at(i, j);
            for (int j = 0; j < r.cols; ++j) m.at(i, l.cols + j) = r.at(i, j);
        }
        return m;
    }
    static Mat vstack(const Mat& t, const Mat& b) {
        if (t.cols != b.cols) fail(ErrKind::internal, "vstack col mismatch");
        Mat m(t.rows + b.rows, t.cols);
        for (int i = 0; i < t.rows; ++i)
            for (int j = 0; j < t.cols; ++j) m.at(i, j) = t.at(i, j);
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) m.at(t.rows + i, j) = b.at(i, j);
        return m;
    }
    static Mat from_cols(int rows, const std::vector<Vec>& cs) {
        Mat m(rows, int(cs.size()));
        for (int c = 0; c < int(cs.size()); ++c) m.set_col(c, cs[c]);
        return m;
    }
    Mat cols_slice(int from, int to) const { // [from, to)
        Mat m(rows, to - from);
        for (int r = 0; r < rows; ++r)
            for (int c = from; c < to; ++c) m.at(r, c - from) = at(r, c);
        return m;
    }
};

// U * A * V = D with D diagonal, d_i | d_{i+1}, U and V unimodular.
struct SNF {
    Mat U, V, Uinv, Vinv, D;
    int rank = 0;
    std::vector<Int> divisors; // the nonzero diagonal entries
};

namespace detail {
inline void row_add(Mat& m, int dst, int src, const Int& q) { // row dst += q * row src
    for (int c = 0; c < m.cols; ++c) m.at(dst, c) += q * m.at(src, c);
}
inline void col_add(Mat& m, int dst, int src, const Int& q) { // col dst += q * col src
    for (int r = 0; r < m.rows; ++r) m.at(r, dst) += q * m.at(r, src);
}
inline void row_swap(Mat& m, int i, int j) {
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
inline void col_swap(Mat& m, int i, int j) {
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}
inline void row_neg(Mat& m, int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}
inline void col_neg(Mat& m, int j) {
    for (int r = 0; r < m.rows; ++r) m.at(r, j) = -m.at(r, j);
}
} // namespace detail

inline SNF smith_normal_form(const Mat& input) {
    using namespace detail;
    SNF s;
    Mat A = input;
    const int R = A.rows, C = A.cols;
    s.U = Mat::identity(R); s.Uinv = Mat::identity(R);
    s.V = Mat::identity(C); s.Vinv = Mat::identity(C);

    auto do_row_add = [&](int dst, int src, const Int& q) {
        row_add(A, dst, src, q); row_add(s.U, dst, src, q); col_add(s.Uinv, src, dst, -q);
    };
    auto do_col_add = [&](int dst, int src, const Int& q) {
        col_add(A, dst, src, q); col_add(s.V, dst, src, q); row_add(s.Vinv, src, dst, -q);
    };
    auto do_row_swap = [&](int i, int j) {
        row_swap(A, i, j); row_swap(s.U, i, j); col_swap(s.Uinv, i, j);
    };
    auto do_col_swap = [&](int i, int j) {
        col_swap(A, i, j); col_swap(s.V, i, j); row_swap(s.Vinv, i, j);
    };
    auto do_row_neg = [&](int i) { row_neg(A, i); row_neg(s.U, i); col_neg(s.Uinv, i); };

    int t = 0;
    const int n = std::min(R, C);
    while (t < n) {
        // pivot: smallest nonzero absolute value in A[t.., t..]
        int pr = -1, pc = -1;
        Int best = 0;
        for (int r = t; r < R; ++r)
            for (int c = t; c < C; ++c) {
                if (A.at(r, c) == 0) continue;
                Int v = abs_int(A.at(r, c));
                if (pr < 0 || v < best) { best = v; pr = r; pc = c; }
            }
        if (pr < 0) break; // rest is zero
        if (pr != t) do_row_swap(t, pr);
        if (pc != t) do_col_swap(t, pc);
        if (A.at(t, t) < 0) do_row_neg(t);

        bool dirty = false;
        for (int r = t + 1; r < R; ++r) {
            if (A.at(r, t) == 0) continue;
            Int q = A.at(r, t) / A.at(t, t);
            if (q != 0) do_row_add(r, t, -q);
            if (A.at(r, t) != 0) dirty = true;
        }
        for (int c = t + 1; c < C; ++c) {
            if (A.at(t, c) == 0) continue;
            Int q = A.at(t, c) / A.at(t, t);
            if (q != 0) do_col_add(c, t, -q);
            if (A.at(t, c) != 0) dirty = true;
        }
        if (dirty) continue; // re-pivot in the same corner

        // divisibility: make A[t][t] divide everything to the lower right
        bool fixed = true;
        for (int r = t + 1; r < R && fixed; ++r)
            for (int c = t + 1; c < C && fixed; ++c)
                if (A.at(r, c) % A.at(t, t) != 0) {
                    do_row_add(t, r, 1);
                    fixed = false;
                }
        if (!fixed) continue;
        ++t;
    }
    s.rank = t;
    s.D = A;
    for (int i = 0; i < t; ++i) s.divisors.push_back(A.at(i, i));
    return s;
}

// Basis of { x : A x = 0 } as columns of the returned matrix.
inline Mat kernel_basis(const Mat& A) {
    SNF s = smith_normal_form(A);
    return s.V.cols_slice(s.rank, A.cols);
}

// One solution of A x = b over the integers, if any.
inline std::optional<Vec> solve(const Mat& A, const Vec& b) {
    if (int(b.size()) != A.rows) fail(ErrKind::validation, "solve: dimension mismatch");
    SNF s = smith_normal_form(A);
    Vec y = s.U.apply(b);
    Vec z(A.cols, Int(0));
    for (int i = 0; i < A.rows; ++i) {
        if (i < s.rank) {
            if (y[i] % s.divisors[i] != 0) return std::nullopt;
            if (i < A.cols) z[i] = y[i] / s.divisors[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(z);
}

// Basis of the lattice spanned by the columns of A, as columns (rows x rank).
inline Mat column_space_basis(const Mat& A) {
    SNF s = smith_normal_form(A);
    Mat b(A.rows, s.rank);
    for (int i = 0; i < s.rank; ++i) {
        // column i of Uinv scaled by d_i
        for (int r = 0; r < A.rows; ++r) b.at(r, i) = s.Uinv.at(r, i) * s.divisors[i];
    }
    return b;
}

// Finitely presented abelian group Z^n / (row space of rels).
struct FPAb {
    int n_gens = 0;
    Mat rels; // rows are relators, rels.cols == n_gens (or 0x0 when free)

    FPAb() = default;
    explicit FPAb(int n) : n_gens(n), rels(0, n) {}
    FPAb(int n, Mat r) : n_gens(n), rels(std::move(r)) {}

    static FPAb free_group(int n) { return FPAb(n); }
    static FPAb zero() { return FPAb(0); }

    // relators as columns (n_gens x n_rels)
    Mat rel_cols() const { return rels.transpose(); }

    bool eq(const Vec& v, const Vec& w) const {
        Vec d = v - w;
        if (is_zero(d)) return true;
        if (rels.rows == 0) return false;
        return solve(rel_cols(), d).has_value();
    }
    bool is_zero_elem(const Vec& v) const { return eq(v, Vec(n_gens, Int(0))); }
};

inline FPAb cokernel(const Mat& A) { // Z^rows / column span of A
    return FPAb(A.rows, A.transpose());
}

// Invariant factors: torsion entries (>1) in divisibility order, then one 0 per free rank.
inline std::vector<Int> elementary_divisors(const FPAb& g) {
    SNF s = smith_normal_form(g.rels);
    std::vector<Int> out;
    for (auto& d : s.divisors)
        if (d != 1) out.push_back(d);
    int free_rank = g.n_gens - s.rank;
    for (int i = 0; i < free_rank; ++i) out.push_back(0);
    return out;
}

inline int free_rank(const FPAb& g) {
    int n = 0;
    for (auto& d : elementary_divisors(g)) if (d == 0) ++n;
    return n;
}

inline bool is_trivial_group(const FPAb& g) { return elementary_divisors(g).empty(); }

// Simplified presentation: diag(d_i) relations with unit factors dropped.
// to_simple maps old coordinates to new; from_simple is a section modulo relations.
struct Simplified {
    FPAb group;
    Mat to_simple, from_simple;
    std::vector<Int> divisors; // matches elementary_divisors(group)
};

inline Simplified simplify(const FPAb& g) {
    // group = coker(B) with B = rel_cols (n x r); U B V = D => coords z = U x
    SNF s = smith_normal_form(g.rel_cols());
    std::vector<int> keep;
    std::vector<Int> divs;
    for (int i = 0; i < g.n_gens; ++i) {
        Int d = i < s.rank ? s.divisors[i] : Int(0);
        if (d == 1) continue;
        keep.push_back(i);
        divs.push_back(d);
    }
    Simplified out;
    int k = int(keep.size());
    Mat rels(0, k);
    for (int i = 0; i < k; ++i)
        if (divs[i] != 0) {
            Mat row(1, k);
            row.at(0, i) = divs[i];
            rels = Mat::vstack(rels, row);
        }
    out.group = FPAb(k, rels);
    out.divisors = divs;
    out.to_simple = Mat(k, g.n_gens);
    out.from_simple = Mat(g.n_gens, k);
    for (int i = 0; i < k; ++i) {
        out.to_simple.set_row(i, s.U.row(keep[i]));
        out.from_simple.set_col(i, s.Uinv.col(keep[i]));
    }
    return out;
}

// Presentation of L/S where L and S are lattices given by generating columns
// inside a common ambient Z^N, with S contained in L.
struct LatticeQuotient {
    FPAb group;
    Mat embed;                       // N x k, columns are ambient representatives of generators
    Mat ambient_basis;               // = embed (basis of L)
    std::optional<Vec> encode(const Vec& ambient) const { return solve(embed, ambient); }
};

inline LatticeQuotient lattice_quotient(const Mat& Lcols, const Mat& Scols) {
    LatticeQuotient q;
    Mat B = column_space_basis(Lcols);
    int k = B.cols;
    Mat rels(0, k);
    for (int c = 0; c < Scols.cols; ++c) {
        auto y = solve(B, Scols.col(c));
        if (!y) fail(ErrKind::internal, "lattice_quotient: S not contained in L");
        Mat row(1, k);
        row.set_row(0, *y);
        rels = Mat::vstack(rels, row);
    }
    q.group = FPAb(k, rels);
    q.embed = B;
    q.ambient_basis = B;
    return q;
}

// Kernel of A as a free abelian group together with its embedding.
struct KernelGroup {
    FPAb group; // free
    Mat basis;  // cols embed generators into Z^{A.cols}
};

inline KernelGroup kernel_group(const Mat& A) {
    KernelGroup k;
    k.basis = kernel_basis(A);
    k.group = FPAb::free_group(k.basis.cols);
    return k;
}

// Hom(a, b) with explicit matrix representatives (target-coords x source-coords).
struct HomGroup {
    FPAb group;
    std::vector<Mat> basis; // one matrix per generator of group
    int src_gens = 0, dst_gens = 0;

    Mat combine(const Vec& coords) const {
        Mat m = Mat::zero(dst_gens, src_gens);
        for (size_t i = 0; i < basis.size(); ++i)
            if (coords[i] != 0) m = m + basis[i].scaled(coords[i]);
        return m;
    }
};

inline HomGroup hom_group(const FPAb& a, const FPAb& b) {
    const int m = a.n_gens, n = b.n_gens;
    Mat Ra = a.rel_cols(); // m x ra
    Mat Rb = b.rel_cols(); // n x rb
    const int ra = Ra.cols, rb = Rb.cols;
    // unknowns: X (n*m) with X*Ra = Rb*Y for some Y (rb*ra)
    const int nx = n * m, ny = rb * ra;
    Mat sys(n * ra, nx + ny);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < ra; ++j) {
            int eq = i * ra + j;
            for (int k = 0; k < m; ++k) sys.at(eq, i * m + k) = Ra.at(k, j);
            for (int k = 0; k < rb; ++k) sys.at(eq, nx + k * ra + j) = -Rb.at(i, k);
        }
    Mat ker = kernel_basis(sys);
    // project to X coordinates
    Mat L(nx, ker.cols);
    for (int r = 0; r < nx; ++r)
        for (int c = 0; c < ker.cols; ++c) L.at(r, c) = ker.at(r, c);
    // trivial homs: X = Rb * W, i.e. column j of X is any column of Rb
    Mat S(nx, m * rb);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < rb; ++k)
            for (int i = 0; i < n; ++i) S.at(i * m + j, j * rb + k) = Rb.at(i, k);
    LatticeQuotient q = lattice_quotient(L, S);
    HomGroup h;
    h.group = q.group;
    h.src_gens = m; h.dst_gens = n;
    for (int c = 0; c < q.embed.cols; ++c) {
        Mat X(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) X.at(i, j) = q.embed.at(i * m + j, c);
        h.basis.push_back(X);
    }
    return h;
}

// Subquotient (ker dout) / (im din) inside Z^N; din maps into the kernel.
struct Subquotient {
    FPAb group;
    Mat cycle_basis;  // N x k: ambient representatives of generators
    std::optional<Vec> encode(const Vec& ambient_cycle) const {
        return solve(cycle_basis, ambient_cycle);
    }
};

inline Subquotient homology_group(const Mat& dout, const Mat& din) {
    Subquotient h;
    Mat K = kernel_basis(dout); // N x k
    Mat rels(0, K.cols);
    for (int c = 0; c < din.cols; ++c) {
        auto y = solve(K, din.col(c));
        if (!y) fail(ErrKind::internal, "homology: boundary not a cycle");
        Mat row(1, K.cols);
        row.set_row(0, *y);
        rels = Mat::vstack(rels, row);
    }
    h.group = FPAb(K.cols, rels);
    h.cycle_basis = K;
    return h;
}

} // namespace eqca
