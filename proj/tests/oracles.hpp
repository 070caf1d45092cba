// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#ifndef ECM_TESTS_ORACLES_HPP
#define ECM_TESTS_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// Partition counts p(0..n) by the Euler pentagonal-number recurrence.
inline std::vector<long long> partition_counts(int n) {
    std::vector<long long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        long long acc = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            const int g2 = k * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            const long long sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= m) acc += sign * p[static_cast<std::size_t>(m - g1)];
            if (g2 <= m) acc += sign * p[static_cast<std::size_t>(m - g2)];
        }
        p[static_cast<std::size_t>(m)] = acc;
    }
    return p;
}

// Number of (lambda, mu) pairs with |lambda| + |mu| = m.
inline long long pair_count(int m, const std::vector<long long>& p) {
    long long c = 0;
    for (int k = 0; k <= m; ++k) c += p[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(m - k)];
    return c;
}

// Total number of (lambda, mu, l) triples with l(l+1)/2 + |lambda| + |mu| <= d.
inline long long triple_count(int d, const std::vector<long long>& p) {
    long long total = 0;
    for (int l = -d - 1; l <= d + 1; ++l) {
        const long long t = static_cast<long long>(l) * (l + 1) / 2;
        if (t > d) continue;
        for (int m = 0; m + t <= d; ++m) total += pair_count(m, p);
    }
    return total;
}

// Central finite difference of a univariate complex function.
template <typename F>
cplx central_difference(F&& f, cplx z, double h) {
    return (f(z + cplx{h, 0.0}) - f(z - cplx{h, 0.0})) / cplx{2.0 * h, 0.0};
}

// log Gamma by upward recurrence into the Stirling regime plus the Bernoulli
// tail series. Independent of the Lanczos route used by the library.
inline cplx log_gamma_stirling(cplx z) {
    static const double bern[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                  1.0 / 1188, -691.0 / 360360, 7.0 / 1092, -3617.0 / 122400};
    cplx shift{0.0, 0.0};
    int k = 0;
    while (z.real() < 24.0) {
        shift += std::log(z);
        z += 1.0;
        if (++k > 200) throw std::runtime_error("log_gamma_stirling: shift cap");
    }
    const double two_pi = 6.283185307179586476925286766559;
    cplx s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(two_pi);
    cplx zp = z;
    for (double b : bern) {
        s += b / zp;
        zp *= z * z;
    }
    return s - shift;
}

// Exact rational with 64-bit numerator/denominator.
struct Rational {
    long long num = 0, den = 1;
    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }
    void normalize() {
        if (den == 0) throw std::runtime_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

// Element of Q[sqrt(2)], exact. Used as the irrational slope in linear
// functionals so that both sides of a combinatorial identity compare exactly.
struct QSqrt2 {
    Rational a, b;  // a + b sqrt(2)
    QSqrt2() = default;
    QSqrt2(Rational a_, Rational b_) : a(a_), b(b_) {}
    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
    friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.a - y.a, x.b - y.b}; }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
        return {x.a * y.a + Rational(2) * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }
};

}  // namespace oracles

#endif  // ECM_TESTS_ORACLES_HPP
