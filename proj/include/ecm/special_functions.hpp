// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_SPECIAL_FUNCTIONS_HPP
#define ECM_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "ecm/errors.hpp"

namespace ecm {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;
inline const cplx two_pi_i{0.0, 2.0 * pi};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Modular parameter of the torus together with the series truncation cap.
///
/// The nome qe = exp(2 pi i tau) is always derived from tau, never stored,
/// so the two cannot drift apart. The truncation cap bounds the adaptive
/// number of lattice terms retained per side of a theta sum.
struct EllipticParams {
    cplx tau;
    int max_terms = 200;

    explicit EllipticParams(cplx tau_, int max_terms_ = 200)
        : tau(tau_), max_terms(max_terms_) {
        if (!is_finite(tau)) throw domain_error("EllipticParams: tau must be finite");
        if (!(tau.imag() > 0.0))
            throw parameter_error("EllipticParams: Im(tau) must be positive");
        if (max_terms < 1) throw parameter_error("EllipticParams: truncation cap must be positive");
    }

    cplx qe() const { return std::exp(two_pi_i * tau); }
};

namespace detail {

// Sum of the k-th termwise derivative of the theta series. Terms are grouped
// in pairs (l, 1-l), which share the same nome power l(l-1)/2; at u = 0 and
// k = 0 each pair cancels exactly, including in floating point.
inline cplx theta_sum(cplx u, const EllipticParams& ep, int k) {
    if (!is_finite(u)) throw domain_error("theta: non-finite argument");
    const cplx qe = ep.qe();
    if (!(std::abs(qe) < 1.0)) throw parameter_error("theta: |qe| must be < 1");

    cplx sum{0.0, 0.0};
    cplx comp{0.0, 0.0};  // Kahan compensation
    double max_mag = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    const double eps = 1e-16;

    for (int l = 1; l <= ep.max_terms + 1; ++l) {
        const double tri = 0.5 * static_cast<double>(l) * static_cast<double>(l - 1);
        const cplx e_pos = std::exp(two_pi_i * (static_cast<double>(l) * u + tri * ep.tau));
        const cplx e_neg = std::exp(two_pi_i * (static_cast<double>(1 - l) * u + tri * ep.tau));
        cplx pair;
        if (k == 0) {
            pair = e_pos - e_neg;
        } else {
            cplx fp{1.0, 0.0}, fn{1.0, 0.0};
            const cplx wp = two_pi_i * static_cast<double>(l);
            const cplx wn = two_pi_i * static_cast<double>(1 - l);
            for (int j = 0; j < k; ++j) {
                fp *= wp;
                fn *= wn;
            }
            pair = fp * e_pos - fn * e_neg;
        }
        if (l % 2 != 0) pair = -pair;

        const cplx y = pair - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        const double mag = std::abs(pair);
        if (mag > max_mag) max_mag = mag;
        if (mag <= eps * max_mag && mag <= prev_mag && l >= 4) return sum;
        prev_mag = mag;
    }
    throw convergence_error("theta: series did not converge within the truncation cap");
}

// Argument reduction u = u0 + m + k tau with u0 in the fundamental strip.
// The series is summed at u0 and the exact quasi-periodicity prefactor
// (-1)^k exp(-2 pi i (k u0 + k(k-1)/2 tau)) restores the value at u. This
// keeps the relative accuracy independent of how far u sits from the strip.
struct ThetaReduction {
    cplx u0;
    double k;
};

inline ThetaReduction reduce_theta_argument(cplx u, cplx tau) {
    const double k = std::round(u.imag() / tau.imag());
    const cplx u1 = u - k * tau;
    const double m = std::round(u1.real());
    return {u1 - m, k};
}

// k-th derivative of theta at an arbitrary point, via reduction and the
// binomial expansion of the prefactor derivatives.
inline cplx theta_deriv(cplx u, const EllipticParams& ep, int korder) {
    if (!is_finite(u)) throw domain_error("theta: non-finite argument");
    const auto red = reduce_theta_argument(u, ep.tau);
    if (red.k == 0.0 && u.real() == red.u0.real() && u.imag() == red.u0.imag())
        return theta_sum(u, ep, korder);
    const double sign = (std::llround(red.k) % 2 == 0) ? 1.0 : -1.0;
    const cplx pre =
        sign * std::exp(two_pi_i * (-red.k * red.u0 - 0.5 * red.k * (red.k - 1.0) * ep.tau));
    const cplx shift = -two_pi_i * red.k;
    cplx acc{0.0, 0.0};
    double binom = 1.0;
    cplx shift_pow{1.0, 0.0};
    // sum_i C(korder, i) shift^{korder-i} theta^{(i)}(u0), lowest i last
    std::array<cplx, 4> derivs{};
    for (int i = 0; i <= korder; ++i) derivs[static_cast<std::size_t>(i)] = theta_sum(red.u0, ep, i);
    for (int i = korder; i >= 0; --i) {
        acc += binom * shift_pow * derivs[static_cast<std::size_t>(i)];
        binom *= static_cast<double>(i) / static_cast<double>(korder - i + 1);
        shift_pow *= shift;
    }
    return pre * acc;
}

}  // namespace detail

/// Theta series sum_l (-1)^l exp(2 pi i l u) qe^{l(l-1)/2}, truncated
/// adaptively so the first omitted term is below 1e-16 of the largest
/// retained one. Vanishes on the period lattice Z + tau Z.
inline cplx theta(cplx u, const EllipticParams& ep) { return detail::theta_deriv(u, ep, 0); }

/// Termwise derivative of the theta series with respect to u.
inline cplx theta_prime(cplx u, const EllipticParams& ep) { return detail::theta_deriv(u, ep, 1); }

namespace detail {

// Signed distance of z from the period lattice Z + tau Z.
inline double lattice_distance(cplx z, cplx tau) {
    const double b = z.imag() / tau.imag();
    const double a = z.real() - b * tau.real();
    const double da = a - std::round(a);
    const double db = b - std::round(b);
    return std::abs(cplx{da, 0.0} + db * tau);
}

}  // namespace detail

/// Weierstrass elliptic function with periods (1, tau), normalized so that
/// z^2 wp(z) -> 1 as z -> 0. Computed as the negative second log-derivative
/// of theta plus the constant fixed by that normalization.
inline cplx weierstrass_p(cplx z, const EllipticParams& ep) {
    if (!is_finite(z)) throw domain_error("weierstrass_p: non-finite argument");
    if (detail::lattice_distance(z, ep.tau) < 1e-10)
        throw pole_error("weierstrass_p: argument within 1e-10 of a lattice point");
    const cplx t0 = detail::theta_deriv(z, ep, 0);
    const cplx t1 = detail::theta_deriv(z, ep, 1);
    const cplx t2 = detail::theta_deriv(z, ep, 2);
    const cplx c1 = detail::theta_sum(cplx{0.0, 0.0}, ep, 1);
    const cplx c2 = detail::theta_sum(cplx{0.0, 0.0}, ep, 2);
    const cplx c3 = detail::theta_sum(cplx{0.0, 0.0}, ep, 3);
    const cplx r = t1 / t0;
    const cplx norm = c3 / (3.0 * c1) - (c2 * c2) / (4.0 * c1 * c1);
    return r * r - t2 / t0 + norm;
}

namespace detail {

// log(sin(pi z)), stable for large |Im z|; agrees with the principal value
// modulo 2 pi i.
inline cplx log_sin_pi(cplx z) {
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    const cplx w = std::exp(two_pi_i * z);
    const cplx i_pi{0.0, pi};
    return -i_pi * z + std::log(w - cplx{1.0, 0.0}) - std::log(cplx{0.0, 2.0});
}

}  // namespace detail

/// Logarithm of the Gamma function (Lanczos approximation, g = 7). Exact
/// modulo 2 pi i; the real part and exp(log_gamma) are exact to ~1e-13
/// relative away from the poles at non-positive integers.
inline cplx log_gamma(cplx z) {
    if (!is_finite(z)) throw domain_error("log_gamma: non-finite argument");
    const double rn = std::round(z.real());
    if (rn <= 0.0 && std::abs(z.real() - rn) < 1e-12 && std::abs(z.imag()) < 1e-12)
        throw pole_error("log_gamma: argument within 1e-12 of a non-positive integer");

    static const double g = 7.0;
    static const double p[9] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

    if (z.real() < 0.5) {
        return std::log(cplx{pi, 0.0}) - detail::log_sin_pi(z) - log_gamma(cplx{1.0, 0.0} - z);
    }
    const cplx zz = z - 1.0;
    cplx x{p[0], 0.0};
    for (int i = 1; i < 9; ++i) x += p[i] / (zz + static_cast<double>(i));
    const cplx t = zz + (g + 0.5);
    return 0.5 * std::log(2.0 * pi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace ecm

#endif  // ECM_SPECIAL_FUNCTIONS_HPP
