// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Exact combinatorial certificate behind the bilinear identities: diagram
// characters as Laurent polynomials, the stack characters S34/S14, the
// weight-preserving involution on (lambda, mu, l) triples, and an exhaustive
// cancellation check over all triples up to a given weight.

#ifndef ECM_ORIGAMI_HPP
#define ECM_ORIGAMI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ecm/errors.hpp"
#include "ecm/laurent.hpp"
#include "ecm/parallel.hpp"
#include "ecm/partitions.hpp"

namespace ecm {

/// Coordinate planes carrying diagram characters. Only the three planes
/// that appear in the cancellation identity are supported.
enum class Plane { p34, p14, p13 };

/// Character sum_{(i,j) in lambda} q_a^{i-1} q_b^{j-1} for plane (a,b),
/// with q3 eliminated via q3 = q1^{-1} q4^{-1} and q2 absent.
inline LaurentPoly2 character(const Partition& lambda, Plane plane) {
    LaurentPoly2 out;
    for (const Cell& c : lambda.cells()) {
        const int i1 = c.i - 1, j1 = c.j - 1;
        switch (plane) {
            case Plane::p34: out += LaurentPoly2::monomial(-i1, -i1 + j1, 1); break;
            case Plane::p14: out += LaurentPoly2::monomial(i1, j1, 1); break;
            case Plane::p13: out += LaurentPoly2::monomial(i1 - j1, -j1, 1); break;
        }
    }
    return out;
}

/// Stack characters entering the cancellation identity, with the common
/// exponential prefactor dropped:
///   plane 34: q3^{l+1} (1 - P34 chi34(lambda)),
///   plane 14: q1^{-l}  (1 - P14 chi14(mu)),
/// where P_a = 1 - q_a and P_ab = P_a P_b.
inline LaurentPoly2 origami_S(Plane plane, int l, const Partition& p) {
    const LaurentPoly2 one = LaurentPoly2::one();
    switch (plane) {
        case Plane::p34: {
            const LaurentPoly2 P34 = (one - LaurentPoly2::q3()) * (one - LaurentPoly2::q4());
            return LaurentPoly2::q3(l + 1) * (one - P34 * character(p, Plane::p34));
        }
        case Plane::p14: {
            const LaurentPoly2 P14 = (one - LaurentPoly2::q1()) * (one - LaurentPoly2::q4());
            return LaurentPoly2::q1(-l) * (one - P14 * character(p, Plane::p14));
        }
        default:
            throw parameter_error("origami_S: supported planes are 34 and 14");
    }
}

/// A pair of diagrams with an integer flux; weight = l(l+1)/2 + |lambda| + |mu|.
struct OrigamiTriple {
    Partition lambda;
    Partition mu;
    int l = 0;

    long long weight() const {
        return static_cast<long long>(l) * (l + 1) / 2 + lambda.size() + mu.size();
    }

    std::string str() const {
        return "(" + lambda.str() + ", " + mu.str() + ", " + std::to_string(l) + ")";
    }

    friend bool operator==(const OrigamiTriple&, const OrigamiTriple&) = default;
    friend auto operator<=>(const OrigamiTriple&, const OrigamiTriple&) = default;
};

/// The sign-flipping pairing of triples. First branch (mu1 + l >= lambda1):
/// prepend mu1 + l to lambda, pop the first row of mu, decrement l. Second
/// branch: pop the first row of lambda, prepend lambda1 - l - 1 to mu,
/// increment l. Zero first parts are stripped.
inline OrigamiTriple involution(const OrigamiTriple& t) {
    const int lambda1 = t.lambda.part(1);
    const int mu1 = t.mu.part(1);
    OrigamiTriple out;
    if (mu1 + t.l >= lambda1) {
        std::vector<int> nl;
        if (mu1 + t.l > 0) nl.push_back(mu1 + t.l);
        for (int x : t.lambda.parts()) nl.push_back(x);
        std::vector<int> nm(t.mu.parts().begin() + (t.mu.empty() ? 0 : 1), t.mu.parts().end());
        out = {Partition(std::move(nl)), Partition(std::move(nm)), t.l - 1};
    } else {
        std::vector<int> nl(t.lambda.parts().begin() + (t.lambda.empty() ? 0 : 1),
                            t.lambda.parts().end());
        std::vector<int> nm;
        if (lambda1 - t.l - 1 > 0) nm.push_back(lambda1 - t.l - 1);
        for (int x : t.mu.parts()) nm.push_back(x);
        out = {Partition(std::move(nl)), Partition(std::move(nm)), t.l + 1};
    }
    return out;
}

/// The Laurent polynomial whose invariance under the involution is the
/// exact content of the cancellation identity (common prefactor dropped).
inline LaurentPoly2 cancellation_combination(const OrigamiTriple& t) {
    const LaurentPoly2 one = LaurentPoly2::one();
    const LaurentPoly2 P1 = one - LaurentPoly2::q1();
    const LaurentPoly2 P3 = one - LaurentPoly2::q3();
    return P1 * origami_S(Plane::p34, t.l, t.lambda) + P3 * origami_S(Plane::p14, t.l, t.mu);
}

/// Outcome of the exhaustive certificate run.
struct CancellationReport {
    int d_max = 0;
    long long triples_checked = 0;
    long long orbit_count = 0;
    bool pass = false;
    std::string first_failure;  // empty when pass
};

/// All triples of weight <= d_max, enumerated deterministically.
inline std::vector<OrigamiTriple> enumerate_triples(int d_max) {
    std::vector<OrigamiTriple> out;
    std::vector<std::vector<Partition>> parts_by_size;
    for (int s = 0; s <= d_max; ++s) parts_by_size.push_back(enumerate_partitions(s));
    for (int l = -(d_max + 1); l <= d_max + 1; ++l) {
        const long long tri = static_cast<long long>(l) * (l + 1) / 2;
        if (tri < 0 || tri > d_max) continue;
        for (int rest = 0; rest + tri <= d_max; ++rest)
            for (int a = 0; a <= rest; ++a)
                for (const auto& lam : parts_by_size[static_cast<std::size_t>(a)])
                    for (const auto& mu : parts_by_size[static_cast<std::size_t>(rest - a)])
                        out.push_back({lam, mu, l});
    }
    return out;
}

/// Checks, exactly over the integers, that the involution pairs every triple
/// of weight <= d_max with a weight-equal partner of adjacent flux and equal
/// cancellation combination, and that the pairing is a fixed-point-free
/// involution (hence a perfect matching with alternating signs).
inline CancellationReport verify_cancellation(int d_max, unsigned threads = 1) {
    if (d_max < 0) throw parameter_error("verify_cancellation: negative weight cap");
    if (d_max > 12) throw capacity_error("verify_cancellation: exhaustive cap is 12");

    const std::vector<OrigamiTriple> triples = enumerate_triples(d_max);

    struct ChunkResult {
        long long orbits = 0;
        std::string failure;
    };
    std::vector<ChunkResult> results(parallel_chunk_count);

    parallel_chunks(triples.size(), threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        ChunkResult& res = results[chunk];
        for (std::size_t idx = lo; idx < hi; ++idx) {
            if (!res.failure.empty()) return;
            const OrigamiTriple& t = triples[idx];
            const OrigamiTriple u = involution(t);
            auto fail = [&](const std::string& what) {
                res.failure = t.str() + " -> " + u.str() + ": " + what;
            };
            if (u == t) { fail("fixed point"); return; }
            if (std::abs(u.l - t.l) != 1) { fail("flux step is not 1"); return; }
            if (u.weight() != t.weight()) { fail("weight changed"); return; }
            if (involution(u) != t) { fail("not an involution"); return; }
            if (cancellation_combination(t) != cancellation_combination(u)) {
                fail("combination mismatch");
                return;
            }
            if (t < u) ++res.orbits;
        }
    });

    CancellationReport report;
    report.d_max = d_max;
    report.triples_checked = static_cast<long long>(triples.size());
    for (const auto& r : results) {
        report.orbit_count += r.orbits;
        if (report.first_failure.empty() && !r.failure.empty()) report.first_failure = r.failure;
    }
    report.pass = report.first_failure.empty() &&
                  report.orbit_count * 2 == report.triples_checked;
    if (report.first_failure.empty() && !report.pass)
        report.first_failure = "orbit count does not halve the triple count";
    return report;
}

}  // namespace ecm

#endif  // ECM_ORIGAMI_HPP
