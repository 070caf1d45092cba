// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex helpers for desk-scale matrices (N <= 8) and slim
// least-squares problems. No external dependencies.

#ifndef ECM_LINALG_HPP
#define ECM_LINALG_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "ecm/errors.hpp"

namespace ecm {

using CMatrix = std::vector<std::vector<std::complex<double>>>;

/// Determinant by cofactor expansion along the first row. Exact structure,
/// exponential cost; intended for n <= 4.
inline std::complex<double> det_cofactor(const CMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return {1.0, 0.0};
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    std::complex<double> det{0.0, 0.0};
    for (std::size_t col = 0; col < n; ++col) {
        CMatrix minor(n - 1, std::vector<std::complex<double>>(n - 1));
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == col) continue;
                minor[i - 1][jj++] = m[i][j];
            }
        }
        const double sign = (col % 2 == 0) ? 1.0 : -1.0;
        det += sign * m[0][col] * det_cofactor(minor);
    }
    return det;
}

/// Determinant by LU factorization with partial pivoting.
inline std::complex<double> det_lu(CMatrix m) {
    const std::size_t n = m.size();
    std::complex<double> det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m[k][k]);
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > best) {
                best = std::abs(m[i][k]);
                piv = i;
            }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::complex<double> f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

namespace detail {

inline std::complex<double> hdot(const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm2(const std::vector<std::complex<double>>& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace detail

/// The two largest singular values, by power iteration with one deflation.
/// Deterministic start vector; adequate for diagnostics on tiny matrices.
inline std::pair<double, double> top_two_singular_values(const CMatrix& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    if (rows == 0 || cols == 0) return {0.0, 0.0};
    CMatrix b(cols, std::vector<std::complex<double>>(cols, {0.0, 0.0}));
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t k = 0; k < rows; ++k) b[i][j] += std::conj(a[k][i]) * a[k][j];

    auto power = [&](const CMatrix& m) {
        std::vector<std::complex<double>> v(cols);
        for (std::size_t i = 0; i < cols; ++i)
            v[i] = {1.0 + 0.1 * static_cast<double>(i), 0.3 - 0.05 * static_cast<double>(i)};
        double lambda = 0.0;
        for (int it = 0; it < 200; ++it) {
            std::vector<std::complex<double>> w(cols, {0.0, 0.0});
            for (std::size_t i = 0; i < cols; ++i)
                for (std::size_t j = 0; j < cols; ++j) w[i] += m[i][j] * v[j];
            const double nw = detail::norm2(w);
            if (nw == 0.0) return std::make_pair(0.0, v);
            for (auto& x : w) x /= nw;
            lambda = nw;
            v = std::move(w);
        }
        return std::make_pair(lambda, v);
    };

    const auto [l1, v1] = power(b);
    CMatrix b2 = b;
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) b2[i][j] -= l1 * v1[i] * std::conj(v1[j]);
    const auto [l2, v2] = power(b2);
    (void)v2;
    return {std::sqrt(std::max(0.0, l1)), std::sqrt(std::max(0.0, l2))};
}

/// Complex linear least squares by column-pivoted Householder QR. Rank
/// deficiency is handled by a basic solution (free pivots set to zero), so
/// a structurally degenerate fit still attains the least-squares minimum.
struct LLSResult {
    std::vector<std::complex<double>> x;
    double residual_norm = 0.0;  // ||Ax - b||_2
    double cond_estimate = 0.0;  // pivot-ratio estimate of the kept block
    int rank = 0;
    bool rank_deficient = false;
};

inline LLSResult solve_least_squares(CMatrix a, std::vector<std::complex<double>> b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    if (m < n) throw parameter_error("solve_least_squares: underdetermined system");

    // column equilibration: rank decisions and the condition estimate refer
    // to the unit-column-scaled problem
    std::vector<double> colscale(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(a[i][j]);
        s = std::sqrt(s);
        if (s > 0.0) {
            colscale[j] = s;
            for (std::size_t i = 0; i < m; ++i) a[i][j] /= s;
        }
    }

    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;
    std::vector<double> colnorm(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) colnorm[j] += std::norm(a[i][j]);
    double max_initial = 0.0;
    for (double c : colnorm) max_initial = std::max(max_initial, c);
    const double rank_tol2 = 1e-24 * std::max(max_initial, 1e-300);

    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        // pivot: remaining column of largest norm
        std::size_t best = k;
        double bestn = 0.0;
        for (std::size_t j = k; j < n; ++j) {
            double nj = 0.0;
            for (std::size_t i = k; i < m; ++i) nj += std::norm(a[i][j]);
            if (nj > bestn) {
                bestn = nj;
                best = j;
            }
        }
        if (bestn <= rank_tol2) break;
        if (best != k) {
            for (std::size_t i = 0; i < m; ++i) std::swap(a[i][k], a[i][best]);
            std::swap(perm[k], perm[best]);
        }
        const std::complex<double> akk = a[k][k];
        const double xnorm = std::sqrt(bestn);
        const double aabs = std::abs(akk);
        const std::complex<double> phase =
            (aabs == 0.0) ? std::complex<double>{1.0, 0.0} : akk / aabs;
        const std::complex<double> alpha = -phase * xnorm;
        std::vector<std::complex<double>> v(m - k);
        v[0] = akk - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = a[i][k];
        double vnorm2 = 0.0;
        for (const auto& x : v) vnorm2 += std::norm(x);
        if (vnorm2 == 0.0) break;
        for (std::size_t j = k; j < n; ++j) {
            std::complex<double> dot{0.0, 0.0};
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * a[i][j];
            const std::complex<double> f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) a[i][j] -= f * v[i - k];
        }
        std::complex<double> dotb{0.0, 0.0};
        for (std::size_t i = k; i < m; ++i) dotb += std::conj(v[i - k]) * b[i];
        const std::complex<double> fb = 2.0 * dotb / vnorm2;
        for (std::size_t i = k; i < m; ++i) b[i] -= fb * v[i - k];
        ++rank;
    }

    LLSResult out;
    out.rank = static_cast<int>(rank);
    out.rank_deficient = rank < n;

    std::vector<std::complex<double>> y(n, {0.0, 0.0});
    for (std::size_t k = rank; k-- > 0;) {
        std::complex<double> s = b[k];
        for (std::size_t j = k + 1; j < rank; ++j) s -= a[k][j] * y[j];
        y[k] = s / a[k][k];
    }
    out.x.assign(n, {0.0, 0.0});
    for (std::size_t k = 0; k < rank; ++k) out.x[perm[k]] = y[k] / colscale[perm[k]];

    double rn = 0.0;
    for (std::size_t i = rank; i < m; ++i) rn += std::norm(b[i]);
    out.residual_norm = std::sqrt(rn);

    if (rank > 0) {
        double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < rank; ++k) {
            const double d = std::abs(a[k][k]);
            dmax = std::max(dmax, d);
            dmin = std::min(dmin, d);
        }
        out.cond_estimate = dmax / dmin;
    }
    return out;
}

}  // namespace ecm

#endif  // ECM_LINALG_HPP
