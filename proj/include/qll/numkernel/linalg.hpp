#pragma once

#include "qll/numkernel/numberfield.hpp"

namespace qll {

// Dense matrix over a field T (rows of std::vector).  Only the exact
// operations the project needs: elimination, kernels, solving, determinant.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<std::vector<T>> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(r, std::vector<T>(c)) {}
    std::vector<T>& operator[](int i) { return a[i]; }
    const std::vector<T>& operator[](int i) const { return a[i]; }

    static Mat identity_like(int n, const T& one) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m[i][i] = one;
        return m;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t[j][i] = a[i][j];
        return t;
    }

    Mat operator*(const Mat& o) const {
        Mat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (is_zero(a[i][k])) continue;
                for (int j = 0; j < o.cols; ++j) {
                    if (is_zero(o.a[k][j])) continue;
                    r[i][j] = r[i][j] + a[i][k] * o.a[k][j];
                }
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> r(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                if (is_zero(a[i][j]) || is_zero(v[j])) continue;
                r[i] = r[i] + a[i][j] * v[j];
            }
        return r;
    }
};

// In-place row echelon reduction; returns pivot column list.  If `reduced`
// is set, continues to RREF.
template <class T>
std::vector<int> mat_echelon(Mat<T>& m, bool reduced = true) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!is_zero(m[i][c])) { p = i; break; }
        if (p < 0) continue;
        std::swap(m.a[p], m.a[r]);
        T inv = field_inv(m[r][c]);
        for (int j = c; j < m.cols; ++j) m[r][j] = m[r][j] * inv;
        int lo = reduced ? 0 : r + 1;
        for (int i = lo; i < m.rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            T f = m[i][c];
            for (int j = c; j < m.cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int mat_rank(Mat<T> m) {
    return (int)mat_echelon(m, false).size();
}

// Kernel basis (column vectors x with M x = 0).
template <class T>
std::vector<std::vector<T>> mat_kernel(Mat<T> m, const T& one) {
    auto pivots = mat_echelon(m, true);
    std::vector<bool> ispivot(m.cols, false);
    for (int c : pivots) ispivot[c] = true;
    std::vector<std::vector<T>> out;
    for (int c = 0; c < m.cols; ++c) {
        if (ispivot[c]) continue;
        std::vector<T> v(m.cols);
        v[c] = one;
        for (size_t r = 0; r < pivots.size(); ++r) {
            // pivot row r has 1 at pivots[r]
            v[pivots[r]] = -m[(int)r][c];
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Solves M x = b (M square, invertible); throws when singular.
template <class T>
std::vector<T> mat_solve(Mat<T> m, std::vector<T> b) {
    if (m.rows != m.cols || (int)b.size() != m.rows) throw math_error("mat_solve: shape");
    int n = m.rows;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(m[i][c])) { p = i; break; }
        if (p < 0) throw math_error("mat_solve: singular matrix");
        std::swap(m.a[p], m.a[c]);
        std::swap(b[p], b[c]);
        T inv = field_inv(m[c][c]);
        for (int j = c; j < n; ++j) m[c][j] = m[c][j] * inv;
        b[c] = b[c] * inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || is_zero(m[i][c])) continue;
            T f = m[i][c];
            for (int j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
            b[i] = b[i] - f * b[c];
        }
    }
    return b;
}

template <class T>
T mat_det(Mat<T> m) {
    if (m.rows != m.cols) throw math_error("mat_det: not square");
    int n = m.rows;
    if (n == 0) throw math_error("mat_det: empty");
    bool neg = false;
    T det{};
    bool found_unit = false;
    T unit{};
    for (int i = 0; i < n && !found_unit; ++i)
        for (int j = 0; j < n && !found_unit; ++j)
            if (!is_zero(m[i][j])) {
                unit = field_inv(m[i][j]) * m[i][j];
                found_unit = true;
            }
    if (!found_unit) return T{};
    det = unit;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(m[i][c])) { p = i; break; }
        if (p < 0) return T{};
        if (p != c) { std::swap(m.a[p], m.a[c]); neg = !neg; }
        det = det * m[c][c];
        T inv = field_inv(m[c][c]);
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(m[i][c])) continue;
            T f = m[i][c] * inv;
            for (int j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return neg ? -det : det;
}

template <class T>
Mat<T> mat_inverse(const Mat<T>& m, const T& one) {
    if (m.rows != m.cols) throw math_error("mat_inverse: not square");
    int n = m.rows;
    Mat<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = one;
    }
    auto piv = mat_echelon(aug, true);
    if ((int)piv.size() != n || piv[n - 1] != n - 1) throw math_error("mat_inverse: singular");
    Mat<T> r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
    return r;
}

} // namespace qll
