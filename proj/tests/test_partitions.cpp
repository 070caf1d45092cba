// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "ecm/partitions.hpp"
#include "oracles.hpp"

using ecm::Cell;
using ecm::Partition;
using cplx = std::complex<double>;

TEST_CASE("partition construction and canonical form") {
    CHECK(Partition(std::vector<int>{3, 1, 0, 0}) == Partition({3, 1}));
    CHECK(Partition{}.size() == 0);
    CHECK(Partition({4, 2, 1}).size() == 7);
    CHECK(Partition({4, 2, 1}).length() == 3);
    CHECK_THROWS_AS(Partition({1, 2}), ecm::parameter_error);
    CHECK_THROWS_AS(Partition({2, -1}), ecm::parameter_error);
}

TEST_CASE("enumerate_partitions counts match the pentagonal recurrence") {
    const auto p = oracles::partition_counts(20);
    CHECK(ecm::enumerate_partitions(0).size() == 1);
    CHECK(ecm::enumerate_partitions(0)[0] == Partition{});
    CHECK(ecm::enumerate_partitions(4).size() == 5);
    CHECK(ecm::enumerate_partitions(10).size() == 42);
    for (int d = 0; d <= 20; ++d)
        CHECK(ecm::enumerate_partitions(d).size() == static_cast<std::size_t>(p[d]));
    CHECK_THROWS_AS(ecm::enumerate_partitions(61), ecm::capacity_error);
}

TEST_CASE("enumerate_partitions is descending-lex ordered and valid") {
    for (int d = 0; d <= 12; ++d) {
        const auto ps = ecm::enumerate_partitions(d);
        for (std::size_t k = 0; k < ps.size(); ++k) {
            CHECK(ps[k].size() == d);
            if (k + 1 < ps.size()) CHECK(ps[k + 1] < ps[k]);
        }
    }
}

TEST_CASE("transpose basics") {
    CHECK(ecm::transpose(Partition({2, 1})) == Partition({2, 1}));
    CHECK(ecm::transpose(Partition({3, 1})) == Partition({2, 1, 1}));
    CHECK(ecm::transpose(Partition{}) == Partition{});
}

TEST_CASE("transpose against the cell-reflection oracle") {
    const Partition p({3, 1});
    const Partition t = ecm::transpose(p);
    // reflected cell set must coincide with the cell set of the transpose
    auto cells = p.cells();
    std::vector<Cell> reflected;
    for (const Cell& c : cells) reflected.push_back({c.j, c.i});
    auto tcells = t.cells();
    for (const Cell& c : reflected)
        CHECK(std::find(tcells.begin(), tcells.end(), c) != tcells.end());
    CHECK(reflected.size() == tcells.size());
}

TEST_CASE("transpose is an involution with the expected size and length") {
    for (int d = 0; d <= 12; ++d)
        for (const auto& p : ecm::enumerate_partitions(d)) {
            CHECK(ecm::transpose(ecm::transpose(p)) == p);
            CHECK(ecm::transpose(p).size() == p.size());
            CHECK(ecm::transpose(p).length() == p.part(1));
        }
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> parts;
        int prev = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < 5 && prev > 0; ++i) {
            parts.push_back(prev);
            prev = static_cast<int>(rng() % (prev + 1));
        }
        const Partition p(parts);
        if (p.size() > 20) continue;
        CHECK(ecm::transpose(ecm::transpose(p)) == p);
        CHECK(ecm::transpose(p).size() == p.size());
    }
}

TEST_CASE("contents at the corner cell vanish") {
    const auto c = ecm::contents({1, 1}, cplx{1.3, -0.2}, cplx{0.7, 0.1});
    CHECK(std::abs(c.xi) == 0.0);
    CHECK(std::abs(c.upsilon) == 0.0);
    CHECK(std::abs(c.zeta) == 0.0);
}

TEST_CASE("contents by direct substitution at (2,3), hbar=1, n=2") {
    const auto c = ecm::contents({2, 3}, cplx{1.0, 0.0}, cplx{2.0, 0.0});
    CHECK(std::abs(c.xi - cplx{3.0, 0.0}) < 1e-15);       // i-j+n(j-1) = -1+4
    CHECK(std::abs(c.upsilon - cplx{0.0, 0.0}) < 1e-15);  // n(j-i)+1-j = 2-2
    CHECK(std::abs(c.zeta - cplx{-3.0, 0.0}) < 1e-15);    // i-1-n(j-1) = 1-4
}

TEST_CASE("contents agree with the equivariant-weight decomposition") {
    // eps1 = hbar, eps3 = -hbar n, eps4 = hbar (n-1); checked on all cells of
    // all partitions of size <= 6, at two generic parameter points.
    const cplx params[2][2] = {{{1.0, 0.0}, {2.0, 0.0}}, {{0.7, 0.3}, {1.1, -0.2}}};
    for (const auto& pr : params) {
        const cplx hbar = pr[0], n = pr[1];
        const cplx e1 = hbar, e3 = -hbar * n, e4 = hbar * (n - 1.0);
        for (int d = 0; d <= 6; ++d)
            for (const auto& p : ecm::enumerate_partitions(d))
                for (const Cell& c : p.cells()) {
                    const auto w = ecm::contents(c, hbar, n);
                    const double i1 = c.i - 1.0, j1 = c.j - 1.0;
                    CHECK(std::abs(w.xi - (e1 * i1 + e4 * j1)) < 1e-13);
                    CHECK(std::abs(w.upsilon - (e3 * i1 + e4 * j1)) < 1e-13);
                    CHECK(std::abs(w.zeta - (e1 * i1 + e3 * j1)) < 1e-13);
                }
    }
}

TEST_CASE("boundary sets of small diagrams") {
    const auto e = ecm::boundary_sets(Partition{});
    CHECK(e.addable == std::vector<Cell>{{1, 1}});
    CHECK(e.removable.empty());

    const auto b = ecm::boundary_sets(Partition({2, 1}));
    CHECK(b.addable == std::vector<Cell>{{1, 3}, {2, 2}, {3, 1}});
    CHECK(b.removable == std::vector<Cell>{{1, 2}, {2, 1}});

    const auto c = ecm::boundary_sets(Partition({3, 3, 1}));
    CHECK(c.addable.size() == 3);
    CHECK(c.removable.size() == 2);
}

TEST_CASE("boundary sets: |addable| = |removable| + 1") {
    for (int d = 0; d <= 10; ++d)
        for (const auto& p : ecm::enumerate_partitions(d)) {
            const auto b = ecm::boundary_sets(p);
            CHECK(b.addable.size() == b.removable.size() + 1);
        }
}

namespace {

// <a, b> = (a-1) + f (b-1) evaluated exactly in Q[sqrt(2)].
oracles::QSqrt2 bracket(long long a, long long b, const oracles::QSqrt2& f) {
    using oracles::QSqrt2;
    using oracles::Rational;
    const QSqrt2 av{Rational(a - 1), Rational(0)};
    const QSqrt2 bv{Rational(b - 1), Rational(0)};
    return av + f * bv;
}

}  // namespace

TEST_CASE("boundary sets satisfy the corner generating identity exactly") {
    using oracles::QSqrt2;
    using oracles::Rational;
    std::mt19937_64 rng(20230642);
    std::vector<QSqrt2> slopes;
    slopes.push_back({Rational(0), Rational(1)});  // f = sqrt(2)
    while (slopes.size() < 10) {
        const long long an = static_cast<long long>(rng() % 19) - 9;
        const long long ad = 1 + static_cast<long long>(rng() % 7);
        const long long bn = static_cast<long long>(rng() % 19) - 9;
        const long long bd = 1 + static_cast<long long>(rng() % 7);
        if (bn == 0) continue;  // keep f irrational
        slopes.push_back({Rational(an, ad), Rational(bn, bd)});
    }
    for (const auto& f : slopes) {
        for (int d = 0; d <= 10; ++d) {
            for (const auto& p : ecm::enumerate_partitions(d)) {
                const auto b = ecm::boundary_sets(p);
                QSqrt2 lhs{Rational(0), Rational(0)};
                for (const Cell& c : b.addable) lhs = lhs + bracket(c.i - 1, c.j - 1, f);
                for (const Cell& c : b.removable) lhs = lhs - bracket(c.i, c.j, f);
                QSqrt2 rhs{Rational(0), Rational(0)};
                for (int i = 1; i <= p.length() + 1; ++i) rhs = rhs + bracket(i - 1, p.part(i), f);
                for (int i = 1; i <= p.length(); ++i) rhs = rhs - bracket(i, p.part(i), f);
                CHECK(lhs == rhs);
            }
        }
    }
}
