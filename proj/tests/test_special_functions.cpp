// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "ecm/special_functions.hpp"
#include "oracles.hpp"

using ecm::cplx;
using ecm::EllipticParams;
using Catch::Approx;

namespace {
const EllipticParams ep8(cplx{0.0, 0.8});
const cplx I{0.0, 1.0};

double rel(cplx a, cplx scale) { return std::abs(a) / std::abs(scale); }
}  // namespace

TEST_CASE("theta vanishes identically at u = 0") {
    CHECK(ecm::theta(cplx{0.0, 0.0}, ep8) == cplx{0.0, 0.0});
}

TEST_CASE("theta quasi-periodicity at a generic point") {
    const cplx u{0.3, 0.1};
    const cplx t = ecm::theta(u, ep8);
    const cplx t1 = ecm::theta(u + 1.0, ep8);
    CHECK(rel(t1 - t, t) < 1e-12);
    const cplx ttau = ecm::theta(u + ep8.tau, ep8);
    CHECK(rel(t + std::exp(ecm::two_pi_i * u) * ttau, t) < 1e-12);
}

TEST_CASE("theta quasi-periodicity over a grid up to |qe| = 0.7") {
    // tau chosen so |qe| is approximately 0.25 and 0.7
    for (double tau2 : {0.22, 0.05675}) {
        const EllipticParams ep(cplx{0.13, tau2});
        const double q = std::abs(ep.qe());
        CHECK(q <= 0.705);
        for (int a = 0; a < 5; ++a) {
            for (int b = -2; b <= 2; ++b) {
                const cplx u = cplx{0.07 + 0.19 * a, 0.0} + (0.37 + 0.8 * b) * ep.tau;
                if (std::abs(u.imag()) > 2.0 * tau2 + 1e-12) continue;
                const cplx t = ecm::theta(u, ep);
                const cplx t1 = ecm::theta(u + 1.0, ep);
                const cplx ttau = ecm::theta(u + ep.tau, ep);
                const double scale = std::abs(t) + std::abs(ttau);
                CHECK(std::abs(t1 - t) / scale < 1e-12);
                CHECK(std::abs(t + std::exp(ecm::two_pi_i * u) * ttau) / scale < 1e-12);
            }
        }
    }
}

TEST_CASE("theta vanishes on the period lattice") {
    for (int m = -2; m <= 2; ++m)
        for (int k = -2; k <= 2; ++k)
            CHECK(std::abs(ecm::theta(cplx(m, 0) + static_cast<double>(k) * ep8.tau, ep8)) < 1e-10);
}

TEST_CASE("theta rejects bad input") {
    CHECK_THROWS_AS(ecm::theta(cplx{std::nan(""), 0.0}, ep8), ecm::domain_error);
    CHECK_THROWS_AS(EllipticParams(cplx{0.5, -0.1}), ecm::parameter_error);
    CHECK_THROWS_AS(EllipticParams(cplx{0.5, 0.0}), ecm::parameter_error);
}

TEST_CASE("theta_prime at u = 0 matches the direct series") {
    // sum (-1)^l 2 pi i l qe^{l(l-1)/2}, summed with explicit terms
    const cplx qe = ep8.qe();
    cplx ref{0.0, 0.0};
    for (int l = -40; l <= 41; ++l) {
        const double tri = 0.5 * l * (l - 1);
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        ref += sign * ecm::two_pi_i * static_cast<double>(l) * std::pow(qe, tri);
    }
    const cplx got = ecm::theta_prime(cplx{0.0, 0.0}, ep8);
    CHECK(rel(got - ref, ref) < 1e-13);
    CHECK(std::abs(got) > 1.0);
}

TEST_CASE("theta_prime matches a finite-difference oracle") {
    const cplx u{0.3, 0.1};
    const cplx fd = oracles::central_difference(
        [&](cplx v) { return ecm::theta(v, ep8); }, u, 1e-5);
    const cplx got = ecm::theta_prime(u, ep8);
    CHECK(rel(got - fd, got) < 1e-8);
}

TEST_CASE("theta_prime is 1-periodic") {
    const cplx u{0.21, -0.05};
    const cplx a = ecm::theta_prime(u, ep8);
    const cplx b = ecm::theta_prime(u + 1.0, ep8);
    CHECK(rel(a - b, a) < 1e-12);
}

TEST_CASE("weierstrass_p is even and doubly periodic") {
    const cplx z{0.21, 0.13};
    const cplx w = ecm::weierstrass_p(z, ep8);
    CHECK(rel(ecm::weierstrass_p(-z, ep8) - w, w) < 1e-12);
    CHECK(rel(ecm::weierstrass_p(z + 1.0, ep8) - w, w) < 1e-10);
    CHECK(rel(ecm::weierstrass_p(z + ep8.tau, ep8) - w, w) < 1e-10);
}

TEST_CASE("weierstrass_p lattice invariance on a sample grid") {
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            const cplx z = cplx{0.08 + 0.17 * a, 0.0} + (0.11 + 0.15 * b) * ep8.tau;
            const cplx w = ecm::weierstrass_p(z, ep8);
            CHECK(rel(ecm::weierstrass_p(-z, ep8) - w, w) < 1e-10);
            CHECK(rel(ecm::weierstrass_p(z - 1.0, ep8) - w, w) < 1e-10);
            CHECK(rel(ecm::weierstrass_p(z - ep8.tau, ep8) - w, w) < 1e-10);
        }
    }
}

TEST_CASE("weierstrass_p normalization z^2 wp(z) -> 1") {
    const cplx z{1e-3, 0.0};
    CHECK(std::abs(z * z * ecm::weierstrass_p(z, ep8) - 1.0) < 1e-6);
    const cplx z2{0.0, 1e-3};
    CHECK(std::abs(z2 * z2 * ecm::weierstrass_p(z2, ep8) - 1.0) < 1e-6);
}

TEST_CASE("weierstrass_p rejects lattice points") {
    CHECK_THROWS_AS(ecm::weierstrass_p(cplx{1.0, 0.0} + 1e-12 * I, ep8), ecm::pole_error);
    CHECK_THROWS_AS(ecm::weierstrass_p(ep8.tau * 2.0, ep8), ecm::pole_error);
}

TEST_CASE("log_gamma basic values") {
    CHECK(std::abs(ecm::log_gamma(cplx{1.0, 0.0})) < 1e-13);
    CHECK(std::abs(ecm::log_gamma(cplx{0.5, 0.0}) - std::log(std::sqrt(ecm::pi))) < 1e-12);
    // cross-check the half-integer value against the independent oracle
    const cplx o = oracles::log_gamma_stirling(cplx{0.5, 0.0});
    CHECK(std::abs(ecm::log_gamma(cplx{0.5, 0.0}) - o) < 1e-12);
}

namespace {
double recurrence_residual(cplx z) {
    const cplx lhs = ecm::log_gamma(z + 1.0) - ecm::log_gamma(z) - std::log(z);
    // compare modulo 2 pi i
    const double k = std::round(lhs.imag() / (2.0 * ecm::pi));
    const cplx r = lhs - cplx{0.0, 2.0 * ecm::pi * k};
    return std::abs(r) / std::max(1.0, std::abs(std::log(z)));
}
}  // namespace

TEST_CASE("log_gamma recurrence at a fixed point") {
    CHECK(recurrence_residual(cplx{2.5, 1.0}) < 1e-13);
}

TEST_CASE("log_gamma recurrence on a random sample") {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> re(-8.0, 20.0), im(-10.0, 10.0);
    int tested = 0;
    while (tested < 100) {
        const cplx z{re(rng), im(rng)};
        const double rn = std::round(z.real());
        if (rn <= 0.0 && std::abs(z.real() - rn) < 1e-3 && std::abs(z.imag()) < 1e-3) continue;
        if (std::abs(z) < 1e-2 || std::abs(z + 1.0) < 1e-2) continue;
        CHECK(recurrence_residual(z) < 1e-12);
        ++tested;
    }
}

TEST_CASE("log_gamma agrees with the Stirling oracle off the real axis") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> re(0.6, 40.0), im(-15.0, 15.0);
    for (int i = 0; i < 50; ++i) {
        const cplx z{re(rng), im(rng)};
        const cplx a = ecm::log_gamma(z);
        const cplx b = oracles::log_gamma_stirling(z);
        CHECK(std::abs(a - b) / std::max(1.0, std::abs(b)) < 1e-12);
    }
}

TEST_CASE("log_gamma rejects poles") {
    CHECK_THROWS_AS(ecm::log_gamma(cplx{0.0, 0.0}), ecm::pole_error);
    CHECK_THROWS_AS(ecm::log_gamma(cplx{-3.0, 0.0}), ecm::pole_error);
}
