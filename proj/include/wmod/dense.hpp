#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wmod {

/// Row-major dense matrix, just enough for the small solves here.
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Least squares min ||A x - b||_2 by Householder QR (A overwritten).
inline std::vector<double> lstsq_qr(DenseMatrix A, std::vector<double> b) {
    const std::size_t m = A.rows, n = A.cols;
    if (b.size() != m || m < n) throw std::invalid_argument("lstsq_qr: bad shapes");
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < m; ++i) norm += A(i, j) * A(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = A(j, j) > 0 ? -norm : norm;
        double vnorm2 = 0.0;
        std::vector<double> v(m - j);
        v[0] = A(j, j) - alpha;
        for (std::size_t i = j + 1; i < m; ++i) v[i - j] = A(i, j);
        for (double t : v) vnorm2 += t * t;
        if (vnorm2 == 0.0) continue;
        A(j, j) = alpha;
        for (std::size_t i = j + 1; i < m; ++i) A(i, j) = 0.0;
        for (std::size_t c = j + 1; c < n; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < m; ++i) dot += v[i - j] * A(i, c);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = j; i < m; ++i) A(i, c) -= f * v[i - j];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < m; ++i) dot += v[i - j] * b[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = j; i < m; ++i) b[i] -= f * v[i - j];
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t j = n; j-- > 0;) {
        double s = b[j];
        for (std::size_t c = j + 1; c < n; ++c) s -= A(j, c) * x[c];
        x[j] = A(j, j) != 0.0 ? s / A(j, j) : 0.0;
    }
    return x;
}

/// Square solve with partial pivoting.
inline std::vector<double> solve_linear(DenseMatrix A, std::vector<double> b) {
    const std::size_t n = A.rows;
    if (A.cols != n || b.size() != n) throw std::invalid_argument("solve_linear: bad shapes");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(A(i, col)) > std::abs(A(piv, col))) piv = i;
        if (A(piv, col) == 0.0) throw std::runtime_error("solve_linear: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = A(i, col) / A(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) A(i, j) -= f * A(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

} // namespace wmod
