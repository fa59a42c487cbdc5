#pragma once

#include <vector>

#include "cqk/ratq.hpp"

namespace cqk {

using Vec = std::vector<RatQ>;
using Mat = std::vector<Vec>;  // row-major

inline Mat mat_zero(size_t r, size_t c) { return Mat(r, Vec(c)); }

inline Mat mat_identity(size_t n) {
    Mat m = mat_zero(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = RatQ(1);
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    if (a[0].size() != b.size()) throw Error("matrix shape mismatch");
    Mat out = mat_zero(a.size(), b[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < b[0].size(); ++j) {
                if (b[k][j].is_zero()) continue;
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    return out;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
    if (a.empty()) return {};
    if (a[0].size() != x.size()) throw Error("matrix shape mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) out[i] += a[i][j] * x[j];
    return out;
}

inline Vec vec_mat(const Vec& x, const Mat& a) {
    if (a.empty()) return {};
    if (x.size() != a.size()) throw Error("matrix shape mismatch");
    Vec out(a[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j)
            if (!x[i].is_zero() && !a[i][j].is_zero()) out[j] += x[i] * a[i][j];
    return out;
}

inline Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat out = mat_zero(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
    return out;
}

inline bool mat_is_zero(const Mat& a) {
    for (auto& row : a)
        for (auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

inline RatQ dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector length mismatch");
    RatQ s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        RatQ inv = RatQ(1) / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            RatQ f = m[r][col];
            for (size_t j = col; j < cols; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t mat_rank(Mat m) { return rref(m).size(); }

/// Basis of the null space of a.
inline std::vector<Vec> mat_kernel(Mat a) {
    size_t cols = a.empty() ? 0 : a[0].size();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> out;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols);
        v[free] = RatQ(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

/// Solve a x = b; throws if inconsistent or underdetermined.
inline Vec mat_solve(Mat a, Vec b) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a);
    if (!pivots.empty() && pivots.back() == cols) throw Error("inconsistent linear system");
    if (pivots.size() != cols) throw Error("underdetermined linear system");
    Vec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

inline Mat mat_inverse(const Mat& a) {
    size_t n = a.size();
    Mat work = a;
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error("inverse of non-square matrix");
        Mat id = mat_identity(n);
        for (size_t j = 0; j < n; ++j) work[i].push_back(id[i][j]);
    }
    auto pivots = rref(work);
    if (pivots.size() != n || pivots.back() != n - 1) throw Error("singular matrix");
    Mat out = mat_zero(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = work[i][n + j];
    return out;
}

}  // namespace cqk
