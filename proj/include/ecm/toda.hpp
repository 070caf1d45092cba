// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// The closed periodic-chain limit: a Baxter function solving the three-term
// functional equation as a truncated series in the flux parameter, its dual
// companion via an explicit reciprocal-product sum, residual checks of the
// functional equation and of the exact telescoping determinant identity,
// and root finding for the limit form of the Bethe condition.

#ifndef ECM_TODA_HPP
#define ECM_TODA_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "ecm/errors.hpp"
#include "ecm/special_functions.hpp"

namespace ecm {

/// Problem data: degree N, the step hbar, the flux parameter Lambda (the
/// expansion variable is Lambda^{2N}), the N curve roots a, the series
/// truncation order P, the tail length J (0 = choose from the decay model),
/// and an evaluation window.
struct TodaParams {
    int N = 1;
    cplx hbar{1.0, 0.0};
    cplx Lambda{0.1, 0.0};
    std::vector<cplx> a;
    int P = 4;
    long J = 0;  // 0: auto from the j^{-sigma} decay model
    cplx window_base{1.5, 0.2};
    cplx window_step{0.35, 0.0};
    int window_count = 8;

    cplx lambda2n() const {
        cplx acc{1.0, 0.0};
        for (int i = 0; i < 2 * N; ++i) acc *= Lambda;
        return acc;
    }

    /// The monic curve polynomial prod (w - a_alpha).
    cplx curve_poly(cplx w) const {
        cplx acc{1.0, 0.0};
        for (const auto& root : a) acc *= (w - root);
        return acc;
    }

    std::vector<cplx> window_points() const {
        std::vector<cplx> pts;
        pts.reserve(static_cast<std::size_t>(window_count));
        for (int i = 0; i < window_count; ++i)
            pts.push_back(window_base + static_cast<double>(i) * window_step);
        return pts;
    }

    void validate() const {
        if (N < 1 || N > 8) throw parameter_error("TodaParams: N must be in 1..8");
        if (static_cast<int>(a.size()) != N)
            throw parameter_error("TodaParams: a must have N entries");
        if (hbar == cplx{0.0, 0.0}) throw parameter_error("TodaParams: hbar must be nonzero");
        if (Lambda == cplx{0.0, 0.0}) throw parameter_error("TodaParams: Lambda must be nonzero");
        if (P < 0 || window_count < 1) throw parameter_error("TodaParams: bad truncation/window");
        check_point_clear(window_points(), -2, P + 6);
    }

    /// Distance guard against the factorial-function pole images a - k hbar.
    void check_point_clear(const std::vector<cplx>& pts, int jlo, int jhi) const {
        for (const auto& w0 : pts)
            for (int j = jlo; j <= jhi; ++j) {
                const cplx w = w0 + static_cast<double>(j) * hbar;
                for (const auto& root : a)
                    for (int k = 0; k <= 64; ++k) {
                        const cplx pole = root - static_cast<double>(k) * hbar;
                        if (std::abs(w - pole) < 1e-6)
                            throw parameter_error(
                                "TodaParams: window point within 1e-6 of a pole image a - k hbar");
                    }
            }
    }
};

/// The flux power Lambda^{2N w / hbar} with the branch fixed once per run as
/// exp((2N w / hbar) log Lambda), principal logarithm.
inline cplx lambda_flux(const TodaParams& tp, cplx w) {
    return std::exp(2.0 * static_cast<double>(tp.N) * w / tp.hbar * std::log(tp.Lambda));
}

/// Baxter function Q(w) = Q0(w) (1 + sum_{p=1}^{P} Lambda^{2Np} r_p(w)) with
/// Q0(w) = prod_alpha hbar^{(w-a)/hbar} Gamma((w-a)/hbar), so that
/// Q0(w+hbar) = curve_poly(w) Q0(w) exactly. The corrections solve
///   r_p(w+hbar) - r_p(w) = -Q0(w-hbar) r_{p-1}(w-hbar) / Q0(w+hbar)
/// by convergent tail sums along the ray w + hbar Z>=0; the summand decays
/// like j^{-sigma_p} with sigma_p = 2N + (2N-1)(p-1), and one Richardson
/// step against that model removes the leading truncation error.
class TodaQ {
  public:
    explicit TodaQ(TodaParams tp) : tp_(std::move(tp)) {
        tp_.validate();
        // expansion-control warning: order-P term vs order 0 on the window
        if (tp_.P > 0) {
            const cplx mid = tp_.window_base +
                             0.5 * static_cast<double>(tp_.window_count - 1) * tp_.window_step;
            cplx lp{1.0, 0.0};
            for (int p = 0; p < tp_.P; ++p) lp *= tp_.lambda2n();
            if (std::abs(lp * r(tp_.P, mid)) > 1e-3) expansion_warning_ = true;
        }
    }

    const TodaParams& params() const { return tp_; }
    bool expansion_warning() const { return expansion_warning_; }

    /// The bare product of factorial factors.
    cplx q0(cplx w) const {
        const cplx logh = std::log(tp_.hbar);
        cplx acc{0.0, 0.0};
        for (const auto& root : tp_.a) {
            const cplx x = (w - root) / tp_.hbar;
            acc += x * logh + log_gamma(x);
        }
        return std::exp(acc);
    }

    /// The series factor S(w) = 1 + sum_p Lambda^{2Np} r_p(w).
    cplx series_factor(cplx w) const {
        cplx acc{1.0, 0.0};
        cplx lp{1.0, 0.0};
        for (int p = 1; p <= tp_.P; ++p) {
            lp *= tp_.lambda2n();
            acc += lp * r(p, w);
        }
        return acc;
    }

    cplx operator()(cplx w) const { return q0(w) * series_factor(w); }

    /// Correction r_p at an arbitrary point (p = 0 gives 1).
    cplx r(int p, cplx w) const {
        if (p < 0 || p > tp_.P) throw parameter_error("TodaQ: correction index out of range");
        if (p == 0) return {1.0, 0.0};
        const Ray& ray = ray_for(w);
        const auto idx = static_cast<std::size_t>(std::llround(((w - ray.base) / tp_.hbar).real()));
        return ray.r[static_cast<std::size_t>(p - 1)][idx];
    }

  private:
    // r_p values kept on ray indices [p-1, keep_p]; entries below p-1 are
    // never consumed (level p's summand needs r_{p-1} one step to the left).
    struct Ray {
        cplx base;  // index-0 point
        std::vector<std::vector<cplx>> r;
    };

    // ratio Q0(t - hbar)/Q0(t + hbar) = prod_a 1/((t - a - hbar)(t - a)),
    // in closed form so the ray never touches Gamma overflow
    cplx q0_ratio(cplx t) const {
        cplx acc{1.0, 0.0};
        for (const auto& root : tp_.a) acc *= (t - root - tp_.hbar) * (t - root);
        return 1.0 / acc;
    }

    long level_tail_length(int p) const {
        if (tp_.J > 0) return tp_.J;
        const double sigma = 2.0 * tp_.N + (2.0 * tp_.N - 1.0) * (p - 1);
        const double est = std::pow(10.0, 10.0 / sigma);
        return std::max<long>(64, static_cast<long>(est) + 32);
    }

    static constexpr long ray_cover = 24;      // top-level offsets one ray serves
    static constexpr long ray_anchor = 6;      // base sits this far left of the request

    Ray build_ray(cplx base) const {
        std::vector<long> J(static_cast<std::size_t>(tp_.P) + 1, 0);
        for (int p = 1; p <= tp_.P; ++p) J[static_cast<std::size_t>(p)] = level_tail_length(p);
        const long cap = 1L << 22;

        for (;;) {
            // keep_p: last index at which r_p is needed
            std::vector<long> keep(static_cast<std::size_t>(tp_.P) + 1, 0);
            if (tp_.P > 0) keep[static_cast<std::size_t>(tp_.P)] = ray_cover;
            for (int p = tp_.P; p >= 2; --p)
                keep[static_cast<std::size_t>(p - 1)] =
                    keep[static_cast<std::size_t>(p)] + 2 * J[static_cast<std::size_t>(p)];

            Ray ray;
            ray.base = base;
            ray.r.assign(static_cast<std::size_t>(tp_.P), {});
            std::vector<cplx> prev;  // r_{p-1} on its kept range
            bool redo = false;
            for (int p = 1; p <= tp_.P && !redo; ++p) {
                const long Jp = J[static_cast<std::size_t>(p)];
                const long keepP = keep[static_cast<std::size_t>(p)];
                const long lo = p - 1;
                const long hlen = keepP + 2 * Jp;  // summand needed on [lo, hlen]
                std::vector<cplx> h(static_cast<std::size_t>(hlen) + 1, cplx{0.0, 0.0});
                for (long k = lo; k <= hlen; ++k) {
                    const cplx t = base + static_cast<double>(k) * tp_.hbar;
                    const cplx rprev =
                        (p == 1) ? cplx{1.0, 0.0} : prev[static_cast<std::size_t>(k - 1)];
                    h[static_cast<std::size_t>(k)] = q0_ratio(t) * rprev;
                }
                // reverse cumulative sums and the per-point Richardson tail
                std::vector<cplx> cum(static_cast<std::size_t>(hlen) + 2, cplx{0.0, 0.0});
                for (long k = hlen; k >= lo; --k)
                    cum[static_cast<std::size_t>(k)] =
                        cum[static_cast<std::size_t>(k + 1)] + h[static_cast<std::size_t>(k)];
                const double sigma = 2.0 * tp_.N + (2.0 * tp_.N - 1.0) * (p - 1);
                std::vector<cplx> rcur(static_cast<std::size_t>(keepP) + 1, cplx{0.0, 0.0});
                for (long k = lo; k <= keepP; ++k) {
                    const cplx sJ = cum[static_cast<std::size_t>(k)] -
                                    cum[static_cast<std::size_t>(k + Jp)];
                    const cplx s2J = cum[static_cast<std::size_t>(k)] -
                                     cum[static_cast<std::size_t>(k + 2 * Jp)];
                    const double rho =
                        std::pow(static_cast<double>(k + 2 * Jp) / static_cast<double>(k + Jp),
                                 1.0 - sigma);
                    rcur[static_cast<std::size_t>(k)] = (s2J - rho * sJ) / (1.0 - rho);
                }
                // truncation control at the anchor: compare against the
                // half-length Richardson value; their gap bounds the error
                const long kref = std::max(lo, std::min(ray_anchor, keepP));
                const long Jh = Jp / 2;
                const cplx sJh = cum[static_cast<std::size_t>(kref)] -
                                 cum[static_cast<std::size_t>(kref + Jh)];
                const cplx sJf = cum[static_cast<std::size_t>(kref)] -
                                 cum[static_cast<std::size_t>(kref + Jp)];
                const double rho_h =
                    std::pow(static_cast<double>(kref + Jp) / static_cast<double>(kref + Jh),
                             1.0 - sigma);
                const cplx half = (sJf - rho_h * sJh) / (1.0 - rho_h);
                const double est = std::abs(rcur[static_cast<std::size_t>(kref)] - half) / 3.0;
                const double accum = std::abs(rcur[static_cast<std::size_t>(kref)]);
                if (est > 1e-10 * std::max(accum, 1e-300)) {
                    if (2 * J[static_cast<std::size_t>(p)] > cap)
                        throw convergence_error(
                            "TodaQ: tail sum did not reach 1e-10 before the length cap");
                    J[static_cast<std::size_t>(p)] *= 2;
                    redo = true;
                    break;
                }
                prev = rcur;
                ray.r[static_cast<std::size_t>(p - 1)] = std::move(rcur);
            }
            if (!redo) return ray;
        }
    }

    const Ray& ray_for(cplx w) const {
        const std::lock_guard<std::mutex> lock(mutex_);
        const long lo_serve = std::max<long>(0, tp_.P - 1);
        for (const auto& ray : cache_) {
            const cplx ratio = (w - ray.base) / tp_.hbar;
            const double rounded = std::round(ratio.real());
            if (std::abs(ratio.real() - rounded) < 1e-9 && std::abs(ratio.imag()) < 1e-9 &&
                rounded >= static_cast<double>(lo_serve) &&
                rounded <= static_cast<double>(ray_cover))
                return ray;
        }
        // anchor left of the request so neighbouring shifts share the ray
        const cplx base = w - static_cast<double>(ray_anchor) * tp_.hbar;
        if (cache_.size() > 64) cache_.erase(cache_.begin());
        cache_.push_back(build_ray(base));
        return cache_.back();
    }

    TodaParams tp_;
    bool expansion_warning_ = false;
    mutable std::vector<Ray> cache_;
    mutable std::mutex mutex_;
};

/// Spec-facing constructor name.
inline TodaQ build_Q(TodaParams tp) { return TodaQ(std::move(tp)); }

/// Dual companion: Qd(w) = Lambda^{2Nw/hbar} Q(w)
///   sum_{p=0}^{Pprime} Lambda^{2Np} / (Q(w + hbar p) Q(w + hbar (p+1))).
struct DualQ {
    const TodaQ* Q;
    int Pprime = 4;

    cplx operator()(cplx w) const {
        const TodaParams& tp = Q->params();
        cplx sum{0.0, 0.0};
        cplx lp{1.0, 0.0};
        for (int p = 0; p <= Pprime; ++p) {
            sum += lp / ((*Q)(w + static_cast<double>(p) * tp.hbar) *
                         (*Q)(w + static_cast<double>(p + 1) * tp.hbar));
            lp *= tp.lambda2n();
        }
        return lambda_flux(tp, w) * (*Q)(w)*sum;
    }
};

inline DualQ build_Qtilde(const TodaQ& q, int Pprime) {
    if (Pprime < 0) throw parameter_error("build_Qtilde: negative truncation");
    return DualQ{&q, Pprime};
}

/// F(w + hbar) + Lambda^{2N} F(w - hbar) - curve_poly(w) F(w).
template <typename F>
cplx tq_residual(F&& f, const TodaParams& tp, cplx w) {
    tp.check_point_clear({w}, -1, 1);
    return f(w + tp.hbar) + tp.lambda2n() * f(w - tp.hbar) - tp.curve_poly(w) * f(w);
}

/// (Qd(w) Q(w+hbar) - Q(w) Qd(w+hbar)) / Lambda^{2Nw/hbar} - 1. The
/// reciprocal-product sum telescopes, so this vanishes up to the truncation
/// tail Lambda^{2N(Pprime+1)} for any input Q, solving or not.
template <typename FQ, typename FD>
cplx wronskian_residual(FQ&& q, FD&& qd, const TodaParams& tp, cplx w) {
    const cplx lhs = qd(w) * q(w + tp.hbar) - q(w) * qd(w + tp.hbar);
    return lhs / lambda_flux(tp, w) - 1.0;
}

/// One Newton search per seed; non-convergence is a reported outcome.
struct BetheRoot {
    cplx seed;
    cplx root;
    bool converged = false;
    int iterations = 0;
    cplx ratio_residual;  // Q(root+hbar)/Q(root-hbar) + Lambda^{2N}
};

inline std::vector<BetheRoot> find_bethe_roots(const TodaQ& q, const std::vector<cplx>& seeds) {
    const TodaParams& tp = q.params();
    std::vector<BetheRoot> out;
    for (const cplx& seed : seeds) {
        BetheRoot rec;
        rec.seed = seed;
        cplx w = seed;
        for (int it = 0; it < 50; ++it) {
            rec.iterations = it + 1;
            bool clear = true;
            try {
                tp.check_point_clear({w}, -1, 1);
            } catch (const parameter_error&) {
                clear = false;
            }
            if (!clear) break;
            const cplx qw = q(w);
            const double scale = 1.0 + std::abs(q(w + tp.hbar));
            if (std::abs(qw) < 1e-10 * scale) {
                rec.converged = true;
                rec.root = w;
                rec.ratio_residual = q(w + tp.hbar) / q(w - tp.hbar) + tp.lambda2n();
                break;
            }
            const double h = 1e-6 * (1.0 + std::abs(w));
            const cplx dq = (q(w + cplx{h, 0.0}) - q(w - cplx{h, 0.0})) / cplx{2.0 * h, 0.0};
            if (dq == cplx{0.0, 0.0}) break;
            // damped step: backtrack until |Q| strictly decreases
            const cplx step = -qw / dq;
            bool accepted = false;
            double t = 1.0;
            for (int half = 0; half < 20; ++half, t *= 0.5) {
                const cplx trial = w + t * step;
                bool trial_clear = true;
                try {
                    tp.check_point_clear({trial}, -1, 1);
                } catch (const parameter_error&) {
                    trial_clear = false;
                }
                if (!trial_clear) continue;
                if (std::abs(q(trial)) < std::abs(qw)) {
                    w = trial;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace ecm

#endif  // ECM_TODA_HPP
