// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Ratio observables of a Q-function, the Bethe-equation residual, and the
// partition-sum series that dress the ratios into curve data.

#ifndef ECM_OBSERVABLES_HPP
#define ECM_OBSERVABLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ecm/errors.hpp"
#include "ecm/parallel.hpp"
#include "ecm/partitions.hpp"
#include "ecm/special_functions.hpp"

namespace ecm {

/// Deterministic evaluator of a candidate Q-function at arbitrary complex
/// arguments. Discriminated by how the function is represented: a monic
/// polynomial given by its roots, a product of gamma factors, a handle to a
/// difference-equation series, or an injected callable.
class QOracle {
  public:
    enum class Kind { polynomial_roots, gamma_product, toda_series, external };

    static QOracle polynomial_roots(std::vector<cplx> roots) {
        QOracle q;
        q.kind_ = Kind::polynomial_roots;
        q.roots_ = std::move(roots);
        q.logfn_ = [roots = q.roots_](cplx w) {
            cplx acc{0.0, 0.0};
            for (const auto& r : roots) acc += std::log(w - r);
            return acc;
        };
        return q;
    }

    /// prod_a base^{(w - a_a)/base} Gamma((w - a_a)/base). Log-evaluated, so
    /// ratios stay finite far beyond the overflow range of Gamma itself.
    static QOracle gamma_product(cplx base, std::vector<cplx> offsets) {
        QOracle q;
        q.kind_ = Kind::gamma_product;
        const cplx logbase = std::log(base);
        q.logfn_ = [base, logbase, offsets = std::move(offsets)](cplx w) {
            cplx acc{0.0, 0.0};
            for (const auto& a : offsets) {
                const cplx x = (w - a) / base;
                acc += x * logbase + log_gamma(x);
            }
            return acc;
        };
        return q;
    }

    static QOracle toda_series(std::function<cplx(cplx)> f) {
        QOracle q;
        q.kind_ = Kind::toda_series;
        q.fn_ = std::move(f);
        return q;
    }

    static QOracle external(std::function<cplx(cplx)> f) {
        QOracle q;
        q.kind_ = Kind::external;
        q.fn_ = std::move(f);
        return q;
    }

    Kind kind() const { return kind_; }
    const std::vector<cplx>& roots() const { return roots_; }

    /// True when a logarithmic evaluation channel exists; ratios of such
    /// oracles are formed in log space and never overflow.
    bool has_log() const { return static_cast<bool>(logfn_); }

    cplx log_value(cplx w) const {
        if (!logfn_) throw parameter_error("QOracle: no logarithmic channel");
        return logfn_(w);
    }

    cplx operator()(cplx w) const {
        if (kind_ == Kind::polynomial_roots) {
            cplx acc{1.0, 0.0};
            for (const auto& r : roots_) acc *= (w - r);
            return acc;
        }
        if (fn_) return fn_(w);
        return std::exp(logfn_(w));
    }

  private:
    QOracle() = default;
    Kind kind_ = Kind::external;
    std::vector<cplx> roots_;
    std::function<cplx(cplx)> fn_;
    std::function<cplx(cplx)> logfn_;
};

enum class RatioKind { X, Y, Z };

namespace detail {

inline cplx ratio_denominator_shift(RatioKind kind, cplx hbar, cplx n) {
    switch (kind) {
        case RatioKind::X: return hbar * n;
        case RatioKind::Y: return -hbar;
        case RatioKind::Z: return hbar * (cplx{1.0, 0.0} - n);
    }
    return {};
}

}  // namespace detail

namespace detail {

[[noreturn]] inline void throw_ratio_pole(const QOracle& q, cplx arg) {
    std::string hint;
    if (q.kind() == QOracle::Kind::polynomial_roots && !q.roots().empty()) {
        double best = std::numeric_limits<double>::infinity();
        cplx root{};
        for (const auto& r : q.roots()) {
            const double dist = std::abs(arg - r);
            if (dist < best) {
                best = dist;
                root = r;
            }
        }
        hint = "; nearest root (" + std::to_string(root.real()) + ", " +
               std::to_string(root.imag()) + ")";
    }
    throw pole_error("ratio: denominator Q vanishes at (" + std::to_string(arg.real()) + ", " +
                     std::to_string(arg.imag()) + ")" + hint);
}

}  // namespace detail

/// X(w) = Q(w)/Q(w + hbar n), Y(w) = Q(w)/Q(w - hbar),
/// Z(w) = Q(w)/Q(w + hbar (1-n)).
///
/// Near-zero denominators are trapped against a per-kind local scale: the
/// generic polynomial magnitude prod max(1, |arg - root|) for root-listed
/// oracles, the numerator magnitude otherwise. The gamma-product oracle is
/// zero-free; its ratios are formed in log space and never overflow.
inline cplx ratio(RatioKind kind, const QOracle& q, cplx w, cplx hbar, cplx n) {
    const cplx arg = w + detail::ratio_denominator_shift(kind, hbar, n);
    if (q.kind() == QOracle::Kind::polynomial_roots) {
        const cplx den = q(arg);
        double scale = 1.0;
        for (const auto& r : q.roots()) scale *= std::max(1.0, std::abs(arg - r));
        if (std::abs(den) <= 1e-12 * scale) detail::throw_ratio_pole(q, arg);
        return q(w) / den;
    }
    if (q.has_log()) return std::exp(q.log_value(w) - q.log_value(arg));
    const cplx den = q(arg);
    const cplx num = q(w);
    if (std::abs(den) <= 1e-12 * (1.0 + std::abs(num))) detail::throw_ratio_pole(q, arg);
    return num / den;
}

/// Product of the six Q-shifts plus the nome, evaluated at a root of Q;
/// zero exactly when the Bethe condition holds there.
inline cplx bethe_residual(const QOracle& q, cplx root, cplx hbar, cplx n, cplx qe) {
    const double scale = 1.0 + std::abs(q(root + hbar));
    if (std::abs(q(root)) > 1e-8 * scale)
        throw domain_error("bethe_residual: the argument is not a root of Q");
    const cplx num = q(root + hbar) * q(root - hbar * n) * q(root + hbar * (n - 1.0));
    const cplx den = q(root - hbar) * q(root + hbar * n) * q(root + hbar * (1.0 - n));
    return num / den + qe;
}

/// Truncated nome expansion of a partition-dressed observable at one point.
struct SeriesValue {
    std::vector<cplx> coeff;  // c_0 .. c_D

    cplx eval(cplx qe) const {
        cplx acc{0.0, 0.0}, qp{1.0, 0.0};
        for (const auto& c : coeff) {
            acc += qp * c;
            qp *= qe;
        }
        return acc;
    }
};

/// Partition series: order d sums over all diagrams of size d the boundary
/// products of shifted ratios,
///   X-kind: prod_{add} X(w - hbar n + xi) / prod_{rem} X(w + xi),
///   Y-kind: prod_{add} Y(w + hbar + upsilon) / prod_{rem} Y(w + upsilon),
///   Z-kind: prod_{add} Z(w + hbar (n-1) + zeta) / prod_{rem} Z(w + zeta),
/// with the cell contents evaluated on the corner cells.
inline SeriesValue script_series(RatioKind kind, const QOracle& q, cplx w, int order, cplx hbar,
                                 cplx n, unsigned threads = 1) {
    if (order < 0) throw parameter_error("script_series: negative order");
    SeriesValue out;
    out.coeff.assign(static_cast<std::size_t>(order) + 1, cplx{0.0, 0.0});

    const cplx top_shift = [&]() -> cplx {
        switch (kind) {
            case RatioKind::X: return -hbar * n;
            case RatioKind::Y: return hbar;
            case RatioKind::Z: return hbar * (n - 1.0);
        }
        return {};
    }();

    auto cell_content = [&](Cell c) -> cplx {
        const CellContents cc = contents(c, hbar, n);
        switch (kind) {
            case RatioKind::X: return cc.xi;
            case RatioKind::Y: return cc.upsilon;
            case RatioKind::Z: return cc.zeta;
        }
        return {};
    };

    for (int d = 0; d <= order; ++d) {
        const auto parts = enumerate_partitions(d);
        std::vector<cplx> chunk_sums(parallel_chunk_count, cplx{0.0, 0.0});
        parallel_chunks(parts.size(), threads, [&](std::size_t chunk, std::size_t lo,
                                                   std::size_t hi) {
            cplx acc{0.0, 0.0};
            for (std::size_t i = lo; i < hi; ++i) {
                const BoundarySets b = boundary_sets(parts[i]);
                auto annotated_ratio = [&](const Cell& c, cplx arg) {
                    try {
                        return ratio(kind, q, arg, hbar, n);
                    } catch (const pole_error& e) {
                        throw pole_error(std::string(e.what()) + " [partition " +
                                         parts[i].str() + ", cell (" + std::to_string(c.i) +
                                         "," + std::to_string(c.j) + ")]");
                    }
                };
                cplx term{1.0, 0.0};
                for (const Cell& c : b.addable)
                    term *= annotated_ratio(c, w + top_shift + cell_content(c));
                for (const Cell& c : b.removable)
                    term /= annotated_ratio(c, w + cell_content(c));
                acc += term;
            }
            chunk_sums[chunk] = acc;
        });
        cplx total{0.0, 0.0};
        for (const auto& s : chunk_sums) total += s;
        out.coeff[static_cast<std::size_t>(d)] = total;
    }
    return out;
}

}  // namespace ecm

#endif  // ECM_OBSERVABLES_HPP
