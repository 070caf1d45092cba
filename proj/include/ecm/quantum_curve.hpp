// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// The quantum spectral curve as an infinite-order difference operator,
// truncated in the nome. Solutions are built order by order on an
// arithmetic lattice by a first-order recursion; equations are then
// re-verified by an independent evaluator that sums the operator terms
// directly. The three bilinear pairings, the normalization matcher for
// their product identity, and the Fourier partial-sum transform live here.

#ifndef ECM_QUANTUM_CURVE_HPP
#define ECM_QUANTUM_CURVE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ecm/errors.hpp"
#include "ecm/lattice_series.hpp"
#include "ecm/linalg.hpp"
#include "ecm/polynomial.hpp"
#include "ecm/special_functions.hpp"

namespace ecm {

/// Parameters of the quantum curve problem: the monic curve polynomial, the
/// deformation parameters, the nome, the truncation order and the lattice
/// geometry (base point, refinement r giving step hbar/r, half window M).
struct QCurveParams {
    MonicPoly Y;
    cplx hbar{1.0, 0.0};
    cplx n{0.0, 0.0};
    cplx qe{0.0, 0.0};
    int order = 0;
    cplx w0{0.0, 0.0};
    int refinement = 1;
    int half_window = 8;

    cplx nu() const { return hbar * n; }
    cplx step() const { return hbar / static_cast<double>(refinement); }

    void validate() const {
        if (hbar == cplx{0.0, 0.0}) throw parameter_error("QCurveParams: hbar must be nonzero");
        if (!(std::abs(qe) < 1.0)) throw parameter_error("QCurveParams: |qe| must be < 1");
        if (order < 0) throw parameter_error("QCurveParams: order must be >= 0");
        if (refinement < 1) throw parameter_error("QCurveParams: refinement must be >= 1");
        if (half_window < refinement)
            throw parameter_error("QCurveParams: half_window must be >= refinement");
        if (Y.degree() < 1) throw parameter_error("QCurveParams: curve polynomial is constant");
    }

    /// Integer number of lattice steps in hbar * n; requires rational n with
    /// reduced denominator equal to the refinement.
    int rational_shift_sites() const {
        const double p = n.real() * static_cast<double>(refinement);
        const double rounded = std::round(p);
        if (std::abs(n.imag()) > 1e-12 || std::abs(p - rounded) > 1e-9)
            throw alignment_error(
                "QCurveParams: the product pairing requires rational n = p/r with the "
                "configured refinement r");
        const long long pi = std::llround(rounded);
        if (std::gcd(std::abs(pi), static_cast<long long>(refinement)) != 1)
            throw alignment_error(
                "QCurveParams: n = p/r must be in lowest terms; reduce the refinement");
        return static_cast<int>(pi);
    }
};

namespace detail {

// One difference equation family, graded by the triangular nome powers:
//   sum_l (-1)^l qe^{l(l-1)/2} Y(w - slope l) Psi(w + dir hbar l) = 0.
// The two curve equations and the recursions for the bilinear solutions are
// all of this shape with different (Y, slope, dir).
struct CurveForm {
    MonicPoly Y;
    cplx slope;
    int dir = +1;
};

inline CurveForm psi_form(const QCurveParams& qp) { return {qp.Y, qp.nu(), +1}; }
inline CurveForm psi_dual_form(const QCurveParams& qp) { return {qp.Y, qp.nu() + qp.hbar, -1}; }
// The bilinear-pairing solutions satisfy the same family with re-centered
// polynomial and reflected slope (index substitution l -> -l in the pairing).
inline CurveForm x_form(const QCurveParams& qp) {
    return {qp.Y.shifted(-qp.nu()), -qp.nu(), +1};
}
inline CurveForm z_form(const QCurveParams& qp) {
    return {qp.Y.shifted(qp.nu() - qp.hbar), qp.nu() - qp.hbar, +1};
}

inline int triangular(int l) { return l * (l - 1) / 2; }

inline int max_pair_index(int d) {
    int k = 0;
    while ((k + 1) * (k + 2) / 2 <= d) ++k;
    return k;  // largest k with k(k+1)/2 <= d
}

inline int normalize_chain(int site, int r) { return ((site % r) + r) % r; }

inline int first_site_at_or_above(int lo, int chain, int r) {
    const int rem = normalize_chain(lo, r);
    return lo + (chain - rem + r) % r;
}

inline int last_site_at_or_below(int hi, int chain, int r) {
    const int rem = normalize_chain(hi, r);
    return hi - (rem - chain + r) % r;
}

// Per-order valid site ranges implied by the recursion's shift margins,
// given the order-0 range. base_range is where the equation can be anchored.
struct RangePlan {
    std::vector<std::pair<int, int>> value;
    std::vector<std::pair<int, int>> base;
};

inline RangePlan plan_ranges(int D, int r, int dir, std::pair<int, int> order0_range,
                             int half_window) {
    RangePlan plan;
    plan.value.assign(static_cast<std::size_t>(D) + 1, order0_range);
    plan.base.assign(static_cast<std::size_t>(D) + 1, order0_range);
    for (int d = 1; d <= D; ++d) {
        int blo = -half_window, bhi = half_window;
        for (int k = 1; k * (k + 1) / 2 <= d; ++k) {
            const int dprev = d - k * (k + 1) / 2;
            const auto& [plo, phi] = plan.value[static_cast<std::size_t>(dprev)];
            if (dir > 0) {
                blo = std::max(blo, plo + k * r);
                bhi = std::min(bhi, phi - (k + 1) * r);
            } else {
                blo = std::max(blo, plo + (k + 1) * r);
                bhi = std::min(bhi, phi - k * r);
            }
        }
        if (blo > bhi + 1) {
            const int deficit = (blo - bhi - 1 + 1) / 2;
            throw window_error("quantum curve: window exhausted by shift margins at order " +
                               std::to_string(d) + "; increase half_window by at least " +
                               std::to_string(deficit));
        }
        plan.base[static_cast<std::size_t>(d)] = {blo, bhi};
        plan.value[static_cast<std::size_t>(d)] =
            (dir > 0) ? std::pair<int, int>{blo, bhi + r} : std::pair<int, int>{blo - r, bhi};
    }
    return plan;
}

// Rejects curve polynomials that vanish (within 1e-8 of the local scale) at
// any lattice argument used by the truncated operator.
inline void validate_form(const CurveForm& form, const QCurveParams& qp) {
    const int K = max_pair_index(qp.order);
    for (int m = -qp.half_window; m <= qp.half_window; ++m) {
        const cplx w = qp.w0 + static_cast<double>(m) * qp.step();
        for (int l = -K; l <= K + 1; ++l) {
            const cplx arg = w - form.slope * static_cast<double>(l);
            const double scale = 1.0 + std::pow(std::abs(arg), form.Y.degree());
            if (std::abs(form.Y(arg)) <= 1e-8 * scale)
                throw parameter_error(
                    "quantum curve: curve polynomial vanishes on the shifted lattice near w = (" +
                    std::to_string(arg.real()) + ", " + std::to_string(arg.imag()) +
                    "); re-seed the lattice base w0 (an imaginary offset suffices)");
        }
    }
}

// Inhomogeneity of the order-d equation: the paired lower-order terms
// l = -k and l = k + 1 sharing nome offset k(k+1)/2. Kahan-compensated.
inline cplx order_inhomogeneity(const CurveForm& form, const QCurveParams& qp,
                                const LatticeSeries& s, int d, int site) {
    const cplx w = s.w_at(site);
    cplx acc{0.0, 0.0}, comp{0.0, 0.0};
    auto add = [&](cplx t) {
        const cplx y = t - comp;
        const cplx u = acc + y;
        comp = (u - acc) - y;
        acc = u;
    };
    const int r = qp.refinement;
    for (int k = 1; k * (k + 1) / 2 <= d; ++k) {
        const int dprev = d - k * (k + 1) / 2;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        add(sign * form.Y(w + form.slope * static_cast<double>(k)) *
            s.at(dprev, site - form.dir * k * r));
        add(-sign * form.Y(w - form.slope * static_cast<double>(k + 1)) *
            s.at(dprev, site + form.dir * (k + 1) * r));
    }
    return acc;
}

struct SolveOptions {
    // Override the order-0 values (copied verbatim with their range).
    const LatticeSeries* order0 = nullptr;
    // Seed values per order (1..D) and chain; defaults to zero.
    std::vector<std::vector<cplx>> seeds;
};

// Order-by-order solution of the curve form. Order 0 marches the ratio
// recursion from a unit seed on each chain (or copies the override); order
// d >= 1 marches the inhomogeneous recursion from the configured seed.
inline LatticeSeries solve_curve_series(const CurveForm& form, const QCurveParams& qp,
                                        const SolveOptions& opt = {}) {
    qp.validate();
    validate_form(form, qp);
    const int r = qp.refinement;
    const int M = qp.half_window;
    const int D = qp.order;
    LatticeSeries s(qp.w0, qp.step(), D, M);

    std::pair<int, int> ord0{-M, M};
    if (opt.order0) {
        if (opt.order0->half_window() != M)
            throw parameter_error("solve_curve_series: order-0 override window mismatch");
        ord0 = {opt.order0->lo(0), opt.order0->hi(0)};
    }
    const RangePlan plan = plan_ranges(D, r, form.dir, ord0, M);

    // order 0
    s.set_range(0, ord0.first, ord0.second);
    if (opt.order0) {
        for (int m = ord0.first; m <= ord0.second; ++m) s.set(0, m, opt.order0->at(0, m));
    } else {
        for (int c = 0; c < r; ++c) {
            if (form.dir > 0) {
                const int m0 = first_site_at_or_above(ord0.first, c, r);
                if (m0 > ord0.second) continue;
                s.set(0, m0, {1.0, 0.0});
                for (int m = m0; m + r <= ord0.second; m += r) {
                    const cplx w = s.w_at(m);
                    s.set(0, m + r, s.at(0, m) * form.Y(w) / form.Y(w - form.slope));
                }
            } else {
                const int m0 = last_site_at_or_below(ord0.second, c, r);
                if (m0 < ord0.first) continue;
                s.set(0, m0, {1.0, 0.0});
                for (int m = m0; m - r >= ord0.first; m -= r) {
                    const cplx w = s.w_at(m);
                    s.set(0, m - r, s.at(0, m) * form.Y(w) / form.Y(w - form.slope));
                }
            }
        }
    }

    // higher orders
    for (int d = 1; d <= D; ++d) {
        const auto [blo, bhi] = plan.base[static_cast<std::size_t>(d)];
        const auto [vlo, vhi] = plan.value[static_cast<std::size_t>(d)];
        s.set_range(d, vlo, vhi);
        for (int c = 0; c < r; ++c) {
            cplx seed{0.0, 0.0};
            if (static_cast<int>(opt.seeds.size()) >= d && !opt.seeds[static_cast<std::size_t>(d - 1)].empty())
                seed = opt.seeds[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(c)];
            if (form.dir > 0) {
                const int m0 = first_site_at_or_above(vlo, c, r);
                if (m0 > vhi) continue;
                s.set(d, m0, seed);
                for (int m = m0; m <= bhi && m + r <= vhi; m += r) {
                    const cplx w = s.w_at(m);
                    const cplx g = order_inhomogeneity(form, qp, s, d, m);
                    s.set(d, m + r, (form.Y(w) * s.at(d, m) + g) / form.Y(w - form.slope));
                }
            } else {
                const int m0 = last_site_at_or_below(vhi, c, r);
                if (m0 < vlo) continue;
                s.set(d, m0, seed);
                for (int m = m0; m >= blo && m - r >= vlo; m -= r) {
                    const cplx w = s.w_at(m);
                    const cplx g = order_inhomogeneity(form, qp, s, d, m);
                    s.set(d, m - r, (form.Y(w) * s.at(d, m) + g) / form.Y(w - form.slope));
                }
            }
        }
    }
    return s;
}

// Independent re-evaluation of the defining equation: sums the operator
// terms directly over l, order by order, with the term-magnitude scale.
struct ResidualPair {
    LatticeSeries residual;
    LatticeSeries scale;
};

inline ResidualPair evaluate_curve_residual(const CurveForm& form, const QCurveParams& qp,
                                            const LatticeSeries& s) {
    const int r = qp.refinement;
    const int M = qp.half_window;
    const int D = qp.order;
    ResidualPair out{LatticeSeries(qp.w0, qp.step(), D, M), LatticeSeries(qp.w0, qp.step(), D, M)};
    for (int d = 0; d <= D; ++d) {
        const int K = max_pair_index(d);
        int rlo = -M, rhi = M;
        for (int l = -K; l <= K + 1; ++l) {
            const int dprev = d - triangular(l);
            const int shift = form.dir * l * r;
            rlo = std::max(rlo, s.lo(dprev) - shift);
            rhi = std::min(rhi, s.hi(dprev) - shift);
        }
        out.residual.set_range(d, rlo, rhi);
        out.scale.set_range(d, rlo, rhi);
        for (int m = rlo; m <= rhi; ++m) {
            const cplx w = s.w_at(m);
            cplx acc{0.0, 0.0}, comp{0.0, 0.0};
            double mag = 0.0;
            for (int l = -K; l <= K + 1; ++l) {
                if (triangular(l) > d) continue;
                const int dprev = d - triangular(l);
                const double sign = (((l % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
                const cplx term = sign * form.Y(w - form.slope * static_cast<double>(l)) *
                                  s.at(dprev, m + form.dir * l * r);
                const cplx y = term - comp;
                const cplx t = acc + y;
                comp = (t - acc) - y;
                acc = t;
                mag += std::abs(term);
            }
            out.residual.set(d, m, acc);
            out.scale.set(d, m, {mag, 0.0});
        }
    }
    return out;
}

}  // namespace detail

/// A solved curve series together with its independently evaluated
/// defining-equation residual (double-entry bookkeeping: the evaluator
/// implements the operator sum directly, not the recursion).
struct CurveSolution {
    LatticeSeries psi;
    LatticeSeries residual;
    LatticeSeries residual_scale;

    double max_relative_residual(int d) const {
        double worst = 0.0;
        for (int m = residual.lo(d); m <= residual.hi(d); ++m) {
            const double sc = residual_scale.at(d, m).real();
            worst = std::max(worst, std::abs(residual.at(d, m)) / (sc + 1e-300));
        }
        return worst;
    }
    double max_relative_residual() const {
        double worst = 0.0;
        for (int d = 0; d <= psi.order(); ++d) worst = std::max(worst, max_relative_residual(d));
        return worst;
    }
};

namespace detail {

inline CurveSolution solve_with_residual(const CurveForm& form, const QCurveParams& qp,
                                         const SolveOptions& opt = {}) {
    CurveSolution sol{solve_curve_series(form, qp, opt), {}, {}};
    auto res = evaluate_curve_residual(form, qp, sol.psi);
    sol.residual = std::move(res.residual);
    sol.residual_scale = std::move(res.scale);
    for (int m = sol.psi.lo(0); m <= sol.psi.hi(0); ++m)
        if (sol.psi.at(0, m) == cplx{0.0, 0.0})
            throw parameter_error(
                "quantum curve: order-0 solution vanished on the lattice; re-seed w0");
    return sol;
}

}  // namespace detail

/// Solves sum_l (-1)^l qe^{l(l-1)/2} Y(w - nu l) Psi(w + hbar l) = 0
/// order by order, unit-seeded on each chain at order 0, zero-seeded above.
inline CurveSolution solve_psi(const QCurveParams& qp) {
    return detail::solve_with_residual(detail::psi_form(qp), qp);
}

/// Dual equation: sum_l (-1)^l qe^{l(l-1)/2} Y(w - (nu+hbar) l) Psi(w - hbar l) = 0,
/// marched in the opposite lattice direction.
inline CurveSolution solve_psi_dual(const QCurveParams& qp) {
    return detail::solve_with_residual(detail::psi_dual_form(qp), qp);
}

/// One factor of a bilinear pairing: an exact polynomial (order 0 only),
/// a lattice series, or an arbitrary order-graded function (test hook).
class PairFactor {
  public:
    PairFactor(const MonicPoly& poly) : poly_(&poly) {}
    PairFactor(const LatticeSeries& series) : series_(&series) {}
    static PairFactor from_function(int max_order, std::function<cplx(int, cplx)> f) {
        PairFactor pf;
        pf.fn_ = std::move(f);
        pf.fn_order_ = max_order;
        return pf;
    }

    bool lattice() const { return series_ != nullptr; }
    const LatticeSeries* series() const { return series_; }

    int max_order() const {
        if (poly_) return 0;
        if (series_) return series_->order();
        return fn_order_;
    }

    cplx value(int d, cplx w) const {
        if (poly_) return d == 0 ? (*poly_)(w) : cplx{0.0, 0.0};
        if (series_) return series_->at(d, series_->resolve_site(w));
        return d <= fn_order_ ? fn_(d, w) : cplx{0.0, 0.0};
    }

  private:
    PairFactor() = default;
    const MonicPoly* poly_ = nullptr;
    const LatticeSeries* series_ = nullptr;
    std::function<cplx(int, cplx)> fn_;
    int fn_order_ = 0;
};

enum class StarKind { YX, YZ, XZ };

/// Residual of a bilinear pairing together with its term-magnitude scale.
struct PairingResult {
    LatticeSeries residual;
    LatticeSeries scale;

    double max_relative(int d) const {
        double worst = 0.0;
        for (int m = residual.lo(d); m <= residual.hi(d); ++m)
            worst = std::max(worst,
                             std::abs(residual.at(d, m)) / (scale.at(d, m).real() + 1e-300));
        return worst;
    }
    double max_relative() const {
        double worst = 0.0;
        for (int d = 0; d <= residual.order(); ++d) worst = std::max(worst, max_relative(d));
        return worst;
    }
};

/// Order-by-order evaluation of the requested bilinear sum
///   sum_l (-1)^l qe^{l(l+1)/2} A(w + sA(l)) B(w + sB(l)),
/// with the argument shifts
///   YX: sA = -hbar n (l+1),      sB = -hbar l;
///   YZ: sA = hbar (n-1) (l+1),   sB = -hbar l;
///   XZ: sA = hbar (n-1) (l+1),   sB = hbar n l;
/// and factor orders summing to d - l(l+1)/2 at nome order d.
inline PairingResult star_pair(StarKind kind, const PairFactor& A, const PairFactor& B,
                               const QCurveParams& qp) {
    qp.validate();
    const int M = qp.half_window;
    const int D = qp.order;
    const cplx step = qp.step();
    const cplx nu = qp.nu();

    if (kind == StarKind::XZ && (A.lattice() || B.lattice())) qp.rational_shift_sites();

    auto shiftA = [&](int l) -> cplx {
        const double lp = static_cast<double>(l + 1);
        return kind == StarKind::YX ? -nu * lp : (nu - qp.hbar) * lp;
    };
    auto shiftB = [&](int l) -> cplx {
        return kind == StarKind::XZ ? nu * static_cast<double>(l)
                                    : -qp.hbar * static_cast<double>(l);
    };

    const int Kp = [&] {
        int k = 0;
        while ((k + 1) * (k + 2) / 2 <= D) ++k;
        return k;
    }();

    auto site_shift = [&](cplx shift, const char* which) -> int {
        const cplx ratio = shift / step;
        const double rounded = std::round(ratio.real());
        if (std::abs(ratio.real() - rounded) > 1e-9 * (1.0 + std::abs(rounded)) ||
            std::abs(ratio.imag()) > 1e-9)
            throw alignment_error(std::string("star_pair: ") + which +
                                  " factor shift does not land on the lattice");
        return static_cast<int>(rounded);
    };

    PairingResult out{LatticeSeries(qp.w0, step, D, M), LatticeSeries(qp.w0, step, D, M)};
    for (int d = 0; d <= D; ++d) {
        int rlo = -M, rhi = M;
        for (int l = -Kp - 1; l <= Kp; ++l) {
            const int tri = l * (l + 1) / 2;
            if (tri > d) continue;
            const int rem = d - tri;
            if (A.lattice()) {
                const int off = site_shift(shiftA(l), "left");
                for (int dA = 0; dA <= std::min(rem, A.max_order()); ++dA) {
                    rlo = std::max(rlo, A.series()->lo(dA) - off);
                    rhi = std::min(rhi, A.series()->hi(dA) - off);
                }
            }
            if (B.lattice()) {
                const int off = site_shift(shiftB(l), "right");
                for (int dB = 0; dB <= std::min(rem, B.max_order()); ++dB) {
                    rlo = std::max(rlo, B.series()->lo(dB) - off);
                    rhi = std::min(rhi, B.series()->hi(dB) - off);
                }
            }
        }
        out.residual.set_range(d, rlo, rhi);
        out.scale.set_range(d, rlo, rhi);
        for (int m = rlo; m <= rhi; ++m) {
            const cplx w = qp.w0 + static_cast<double>(m) * step;
            cplx acc{0.0, 0.0}, comp{0.0, 0.0};
            double mag = 0.0;
            for (int l = -Kp - 1; l <= Kp; ++l) {
                const int tri = l * (l + 1) / 2;
                if (tri > d) continue;
                const int rem = d - tri;
                const double sign = (((l % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
                for (int dA = 0; dA <= std::min(rem, A.max_order()); ++dA) {
                    const int dB = rem - dA;
                    if (dB > B.max_order()) continue;
                    const cplx term = sign * A.value(dA, w + shiftA(l)) * B.value(dB, w + shiftB(l));
                    const cplx y = term - comp;
                    const cplx t = acc + y;
                    comp = (t - acc) - y;
                    acc = t;
                    mag += std::abs(term);
                }
            }
            out.residual.set(d, m, acc);
            out.scale.set(d, m, {mag, 0.0});
        }
    }
    return out;
}

/// Order-0-only series q0 with q0(w + hbar) = Y(w) q0(w) on every chain of
/// the refined lattice, unit-seeded. All product-identity order-0 solutions
/// are ratios of this one function, which makes their order-0 pairing
/// telescope exactly regardless of the seeds.
inline LatticeSeries reference_product(const QCurveParams& qp) {
    qp.validate();
    const int r = qp.refinement;
    const int M = qp.half_window;
    LatticeSeries q0(qp.w0, qp.step(), 0, M);
    q0.set_range(0, -M, M);
    for (int c = 0; c < r; ++c) {
        const int m0 = detail::first_site_at_or_above(-M, c, r);
        if (m0 > M) continue;
        q0.set(0, m0, {1.0, 0.0});
        for (int m = m0; m + r <= M; m += r) q0.set(0, m + r, q0.at(0, m) * qp.Y(q0.w_at(m)));
    }
    return q0;
}

/// The two product-identity solutions with coherent order-0 data
/// X0(w) = q0(w - hbar n)/q0(w), Z0(w) = q0(w + hbar (n-1))/q0(w) and
/// zero-seeded higher orders from their respective recursions.
struct BilinearPair {
    LatticeSeries X;
    LatticeSeries Z;
};

inline BilinearPair solve_bilinear_pair(const QCurveParams& qp) {
    const int p = qp.rational_shift_sites();
    const int r = qp.refinement;
    const int M = qp.half_window;
    const LatticeSeries q0 = reference_product(qp);

    auto ratio_series = [&](int offset_sites) {
        LatticeSeries s(qp.w0, qp.step(), 0, M);
        const int lo = std::max(-M, -M - offset_sites);
        const int hi = std::min(M, M - offset_sites);
        s.set_range(0, lo, hi);
        for (int m = lo; m <= hi; ++m) s.set(0, m, q0.at(0, m + offset_sites) / q0.at(0, m));
        return s;
    };

    const LatticeSeries x0 = ratio_series(-p);
    const LatticeSeries z0 = ratio_series(p - r);

    detail::SolveOptions optx;
    optx.order0 = &x0;
    detail::SolveOptions optz;
    optz.order0 = &z0;
    return {detail::solve_curve_series(detail::x_form(qp), qp, optx),
            detail::solve_curve_series(detail::z_form(qp), qp, optz)};
}

namespace detail {

// Response of the solution to a unit seed at (order e, chain c): zero below
// order e, the chain-restricted homogeneous ratio solution at order e, and
// the recursion images above. The full solution is affine in its seeds with
// these responses as the linear part.
inline LatticeSeries homogeneous_response(const CurveForm& form, const QCurveParams& qp,
                                          const LatticeSeries& base, int e, int chain) {
    const int r = qp.refinement;
    LatticeSeries h(qp.w0, qp.step(), base.order(), base.half_window());
    for (int d = 0; d <= base.order(); ++d) h.set_range(d, base.lo(d), base.hi(d));

    // order e: homogeneous march on one chain
    {
        const int lo = h.lo(e), hi = h.hi(e);
        if (form.dir > 0) {
            const int m0 = first_site_at_or_above(lo, chain, r);
            if (m0 <= hi) {
                h.set(e, m0, {1.0, 0.0});
                for (int m = m0; m + r <= hi; m += r) {
                    const cplx w = h.w_at(m);
                    h.set(e, m + r, h.at(e, m) * form.Y(w) / form.Y(w - form.slope));
                }
            }
        } else {
            const int m0 = last_site_at_or_below(hi, chain, r);
            if (m0 >= lo) {
                h.set(e, m0, {1.0, 0.0});
                for (int m = m0; m - r >= lo; m -= r) {
                    const cplx w = h.w_at(m);
                    h.set(e, m - r, h.at(e, m) * form.Y(w) / form.Y(w - form.slope));
                }
            }
        }
    }

    // orders above e: zero-seeded recursion driven by the lower orders of h
    for (int d = e + 1; d <= base.order(); ++d) {
        const int vlo = h.lo(d), vhi = h.hi(d);
        for (int c = 0; c < r; ++c) {
            if (form.dir > 0) {
                const int m0 = first_site_at_or_above(vlo, c, r);
                if (m0 > vhi) continue;
                h.set(d, m0, {0.0, 0.0});
                for (int m = m0; m + r <= vhi; m += r) {
                    const cplx w = h.w_at(m);
                    const cplx g = order_inhomogeneity(form, qp, h, d, m);
                    h.set(d, m + r, (form.Y(w) * h.at(d, m) + g) / form.Y(w - form.slope));
                }
            } else {
                const int m0 = last_site_at_or_below(vhi, c, r);
                if (m0 < vlo) continue;
                h.set(d, m0, {0.0, 0.0});
                for (int m = m0; m - r >= vlo; m -= r) {
                    const cplx w = h.w_at(m);
                    const cplx g = order_inhomogeneity(form, qp, h, d, m);
                    h.set(d, m - r, (form.Y(w) * h.at(d, m) + g) / form.Y(w - form.slope));
                }
            }
        }
    }
    return h;
}

}  // namespace detail

/// Per-order record of the sequential least-squares normalization fit.
/// Residuals are normalized by the fixed term-magnitude scale of the
/// initial pairing at that order, so pre and post are directly comparable
/// and cannot be masked by large fitted constants.
struct MatchOrderRecord {
    int order = 0;
    int equations = 0;
    int constants = 0;
    int rank = 0;
    double pre_residual = 0;   // max pairing residual / initial scale
    double post_residual = 0;  // after the fit, same normalization
    double condition_number = 0;
    bool rank_deficient = false;
};

struct MatchReport {
    double order0_residual = 0;
    std::vector<MatchOrderRecord> orders;
    bool degeneracy_warning = false;
    LatticeSeries X;  // matched pair
    LatticeSeries Z;
};

/// Fixes the per-order, per-chain normalization constants of the two
/// product-identity solutions by sequential linear least squares on the
/// product pairing residual over the whole valid window. The constants
/// multiply each chain's order-0 solution; the matched series remain exact
/// solutions of their own recursions.
inline MatchReport match_normalization(const LatticeSeries& x_in, const LatticeSeries& z_in,
                                       const QCurveParams& qp) {
    qp.rational_shift_sites();
    const int r = qp.refinement;
    const int D = qp.order;
    MatchReport rep;
    rep.X = x_in;
    rep.Z = z_in;

    const detail::CurveForm fx = detail::x_form(qp);
    const detail::CurveForm fz = detail::z_form(qp);

    // fixed normalization per order, from the initial pairing
    std::vector<double> scale0(static_cast<std::size_t>(D) + 1, 0.0);
    {
        const auto p0 = star_pair(StarKind::XZ, rep.X, rep.Z, qp);
        rep.order0_residual = p0.max_relative(0);
        for (int d = 0; d <= D; ++d) {
            double s = 0.0;
            for (int m = p0.scale.lo(d); m <= p0.scale.hi(d); ++m)
                s = std::max(s, p0.scale.at(d, m).real());
            scale0[static_cast<std::size_t>(d)] = std::max(s, 1e-300);
        }
    }
    auto normalized_max = [&](const PairingResult& pr, int d) {
        double worst = 0.0;
        for (int m = pr.residual.lo(d); m <= pr.residual.hi(d); ++m)
            worst = std::max(worst, std::abs(pr.residual.at(d, m)));
        return worst / scale0[static_cast<std::size_t>(d)];
    };

    for (int e = 1; e <= D; ++e) {
        std::vector<LatticeSeries> basis;
        basis.reserve(2 * static_cast<std::size_t>(r));
        for (int c = 0; c < r; ++c)
            basis.push_back(detail::homogeneous_response(fx, qp, rep.X, e, c));
        for (int c = 0; c < r; ++c)
            basis.push_back(detail::homogeneous_response(fz, qp, rep.Z, e, c));

        const auto base_pair = star_pair(StarKind::XZ, rep.X, rep.Z, qp);

        // columns: the pairing is bilinear, so the order-e dependence on each
        // constant is the pairing of its response against the other side
        std::vector<PairingResult> cols;
        cols.reserve(basis.size());
        int rlo = base_pair.residual.lo(e), rhi = base_pair.residual.hi(e);
        for (std::size_t u = 0; u < basis.size(); ++u) {
            const bool xside = u < static_cast<std::size_t>(r);
            PairingResult pr = xside ? star_pair(StarKind::XZ, basis[u], rep.Z, qp)
                                     : star_pair(StarKind::XZ, rep.X, basis[u], qp);
            rlo = std::max(rlo, pr.residual.lo(e));
            rhi = std::min(rhi, pr.residual.hi(e));
            cols.push_back(std::move(pr));
        }

        MatchOrderRecord rec;
        rec.order = e;
        rec.constants = static_cast<int>(basis.size());
        rec.equations = std::max(0, rhi - rlo + 1);
        rec.pre_residual = normalized_max(base_pair, e);

        if (rec.equations == 0) {
            rec.rank_deficient = true;
            rep.degeneracy_warning = true;
            rec.post_residual = rec.pre_residual;
            rep.orders.push_back(rec);
            continue;
        }

        // rows weighted by the local term scale: the fit minimizes the
        // relative pairing residual across the window
        CMatrix a(static_cast<std::size_t>(rec.equations), std::vector<cplx>(basis.size()));
        std::vector<cplx> b(static_cast<std::size_t>(rec.equations));
        for (int m = rlo; m <= rhi; ++m) {
            const std::size_t row = static_cast<std::size_t>(m - rlo);
            const double wgt = 1.0 / std::max(base_pair.scale.at(e, m).real(), 1e-300);
            b[row] = -base_pair.residual.at(e, m) * wgt;
            for (std::size_t u = 0; u < basis.size(); ++u)
                a[row][u] = cols[u].residual.at(e, m) * wgt;
        }
        const LLSResult fit = solve_least_squares(std::move(a), std::move(b));
        rec.condition_number = fit.cond_estimate;
        rec.rank = fit.rank;
        rec.rank_deficient = fit.rank_deficient;
        if (fit.rank_deficient) rep.degeneracy_warning = true;
        for (std::size_t u = 0; u < basis.size(); ++u) {
            if (u < static_cast<std::size_t>(r))
                rep.X.add_scaled(basis[u], fit.x[u]);
            else
                rep.Z.add_scaled(basis[u], fit.x[u]);
        }
        const auto post_pair = star_pair(StarKind::XZ, rep.X, rep.Z, qp);
        rec.post_residual = normalized_max(post_pair, e);
        rep.orders.push_back(rec);
    }
    return rep;
}

/// Fourier partial sum of a solved series over a lattice ray
/// w in alpha + hbar {k_min..k_max}:
///   sum_k exp(+-2 pi i w u / hbar) Psi(w), with the series summed at the
/// configured nome. Divergence is diagnosed through the edge-term ratio,
/// never thrown.
struct ChiResult {
    cplx value{0.0, 0.0};
    double tail_ratio = 0;  // max |edge term| / |partial sum|
};

inline ChiResult chi_transform(const LatticeSeries& psi, const QCurveParams& qp, cplx alpha,
                               cplx u, int k_min, int k_max, bool dual = false) {
    if (k_min > k_max) throw parameter_error("chi_transform: empty window");
    const int base = psi.resolve_site(alpha);
    const int r = qp.refinement;
    const cplx expo_sign = dual ? -two_pi_i : two_pi_i;
    ChiResult out;
    cplx first{0.0, 0.0}, last{0.0, 0.0};
    for (int k = k_min; k <= k_max; ++k) {
        const int site = base + k * r;
        const cplx w = psi.w_at(site);
        const cplx term = std::exp(expo_sign * w * u / qp.hbar) * psi.eval(qp.qe, site);
        if (k == k_min) first = term;
        last = term;
        out.value += term;
    }
    out.tail_ratio = std::max(std::abs(first), std::abs(last)) / (std::abs(out.value) + 1e-300);
    return out;
}

}  // namespace ecm

#endif  // ECM_QUANTUM_CURVE_HPP
