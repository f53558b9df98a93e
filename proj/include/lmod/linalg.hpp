#pragma once

#include <utility>
#include <vector>

#include "lmod/rat.hpp"

namespace lmod {

// Dense matrix over exact rationals, row major.  Small sizes only; plain
// Gaussian elimination is all we ever need.
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Rat& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw RankMismatch("mat*: shape mismatch");
    Mat z(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

inline Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw RankMismatch("mat+: shape mismatch");
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

inline Mat operator-(const Mat& x) {
    Mat z = x;
    for (auto& v : z.a) v = -v;
    return z;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) throw RankMismatch("mat_vec: shape mismatch");
    Vec r(m.rows, Rat(0));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

// Row echelon in place; returns rank.
inline size_t echelon(Mat& m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        size_t piv = rank;
        while (piv < m.rows && m(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        for (size_t j = 0; j < m.cols; ++j) std::swap(m(rank, j), m(piv, j));
        Rat inv = Rat(1) / m(rank, col);
        for (size_t j = col; j < m.cols; ++j) m(rank, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == rank || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline size_t rank(Mat m) { return echelon(m); }

// Basis of the right null space, as columns-of-solutions (each Vec has
// length m.cols).
inline std::vector<Vec> null_space(Mat m) {
    size_t r = echelon(m);
    std::vector<size_t> pivot_col;
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t i = 0, col = 0; i < r; ++i) {
        while (col < m.cols && m(i, col) == 0) ++col;
        pivot_col.push_back(col);
        is_pivot[col] = true;
    }
    std::vector<Vec> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < r; ++i) v[pivot_col[i]] = -m(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves A x = b; throws InternalInconsistency if inconsistent (square or
// overdetermined exact systems arising from dual-basis computations).
inline Vec solve(Mat a, Vec b) {
    if (a.rows != b.size()) throw RankMismatch("solve: shape mismatch");
    Mat aug(a.rows, a.cols + 1);
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    echelon(aug);
    Vec x(a.cols, Rat(0));
    for (size_t i = 0; i < aug.rows; ++i) {
        size_t lead = 0;
        while (lead <= a.cols && aug(i, lead) == 0) {
            ++lead;
            if (lead > a.cols) break;
        }
        if (lead > a.cols) continue;
        if (lead == a.cols) throw InternalInconsistency("solve: inconsistent system");
        // free variables are set to zero, so the pivot value is the rhs
        x[lead] = aug(i, a.cols);
    }
    Vec chk = mat_vec(a, x);
    for (size_t i = 0; i < b.size(); ++i)
        if (chk[i] != b[i]) throw InternalInconsistency("solve: residual nonzero");
    return x;
}

}  // namespace lmod
