#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace seqnet {

using Vec = std::vector<double>;

// Dense row-major square-or-rectangular matrix. Desk scale (K up to a few
// hundred); no sparsity.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    // The averaging matrix with every entry 1/n.
    static Matrix averaging(int n) {
        Matrix m(n, n);
        const double v = 1.0 / n;
        for (auto& x : m.a) x = v;
        return m;
    }
};

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const double xv = x.at(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += xv * y.at(k, j);
        }
    }
    return z;
}

inline Matrix mat_sub(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("mat_sub: shape mismatch");
    Matrix z(x.rows, x.cols);
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
    return z;
}

// y = M x, accumulated left to right along each row (fixed order so results
// are reproducible).
inline void mat_vec(const Matrix& m, const Vec& x, Vec& y) {
    if (m.cols != static_cast<int>(x.size())) throw std::invalid_argument("mat_vec: shape mismatch");
    y.assign(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        const double* row = &m.a[static_cast<std::size_t>(i) * m.cols];
        for (int j = 0; j < m.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

inline double max_abs(const Matrix& m) {
    double v = 0.0;
    for (double x : m.a) {
        const double ax = x < 0 ? -x : x;
        if (ax > v) v = ax;
    }
    return v;
}

inline double max_abs_diff(const Matrix& x, const Matrix& y) { return max_abs(mat_sub(x, y)); }

}  // namespace seqnet
