// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_LATTICE_SERIES_HPP
#define ECM_LATTICE_SERIES_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ecm/errors.hpp"

namespace ecm {

/// Truncated power series in the nome whose order-d coefficient is a
/// complex-valued function sampled on the arithmetic lattice
/// w0 + step * {-M..M}. Each order carries its own valid site range;
/// access outside the range is an error, never a silent zero.
class LatticeSeries {
  public:
    LatticeSeries() = default;

    LatticeSeries(std::complex<double> w0, std::complex<double> step, int order, int half_window)
        : w0_(w0), step_(step), order_(order), half_window_(half_window) {
        if (order < 0 || half_window < 1)
            throw parameter_error("LatticeSeries: order >= 0 and half_window >= 1 required");
        data_.assign(static_cast<std::size_t>(order) + 1,
                     std::vector<std::complex<double>>(
                         2 * static_cast<std::size_t>(half_window) + 1, {0.0, 0.0}));
        range_.assign(static_cast<std::size_t>(order) + 1, {half_window, -half_window});
    }

    std::complex<double> w0() const { return w0_; }
    std::complex<double> step() const { return step_; }
    int order() const { return order_; }
    int half_window() const { return half_window_; }

    std::complex<double> w_at(int site) const {
        return w0_ + static_cast<double>(site) * step_;
    }

    /// Site index of a point, required to sit on the lattice.
    int resolve_site(std::complex<double> w) const {
        const std::complex<double> ratio = (w - w0_) / step_;
        const double rounded = std::round(ratio.real());
        if (std::abs(ratio.real() - rounded) > 1e-9 * (1.0 + std::abs(rounded)) ||
            std::abs(ratio.imag()) > 1e-9 * (1.0 + std::abs(rounded)))
            throw alignment_error("LatticeSeries: point is not on the lattice");
        return static_cast<int>(rounded);
    }

    int lo(int d) const { return range_at(d).first; }
    int hi(int d) const { return range_at(d).second; }
    bool range_empty(int d) const { return lo(d) > hi(d); }

    void set_range(int d, int lo, int hi) {
        if (lo < -half_window_ || hi > half_window_)
            throw window_error("LatticeSeries: range exceeds the allocated window");
        range_[checked_order(d)] = {lo, hi};
    }

    std::complex<double> at(int d, int site) const {
        const auto [l, h] = range_at(d);
        if (site < l || site > h)
            throw window_error("LatticeSeries: site " + std::to_string(site) +
                               " outside the valid range [" + std::to_string(l) + ", " +
                               std::to_string(h) + "] of order " + std::to_string(d));
        return data_[static_cast<std::size_t>(d)][static_cast<std::size_t>(site + half_window_)];
    }

    void set(int d, int site, std::complex<double> v) {
        checked_order(d);
        if (site < -half_window_ || site > half_window_)
            throw window_error("LatticeSeries: site outside the allocated window");
        data_[static_cast<std::size_t>(d)][static_cast<std::size_t>(site + half_window_)] = v;
    }

    /// Numeric value of the truncated series at a site.
    std::complex<double> eval(std::complex<double> qe, int site) const {
        std::complex<double> acc{0.0, 0.0};
        std::complex<double> qp{1.0, 0.0};
        for (int d = 0; d <= order_; ++d) {
            acc += qp * at(d, site);
            qp *= qe;
        }
        return acc;
    }

    double max_abs(int d) const {
        double m = 0.0;
        for (int s = lo(d); s <= hi(d); ++s) m = std::max(m, std::abs(at(d, s)));
        return m;
    }

    /// The argument-shifted function w -> this(w + delta * step), sampled on
    /// the same lattice; ranges move accordingly and clamp to the window.
    LatticeSeries shifted_sites(int delta) const {
        LatticeSeries out(w0_, step_, order_, half_window_);
        for (int d = 0; d <= order_; ++d) {
            const int l = std::max(-half_window_, lo(d) - delta);
            const int h = std::min(half_window_, hi(d) - delta);
            out.set_range(d, l, h);
            for (int m = l; m <= h; ++m) out.set(d, m, at(d, m + delta));
        }
        return out;
    }

    /// this += c * other on every order, shrinking ranges to the overlap.
    void add_scaled(const LatticeSeries& other, std::complex<double> c) {
        if (order_ != other.order_ || half_window_ != other.half_window_)
            throw parameter_error("LatticeSeries: incompatible shapes in add_scaled");
        for (int d = 0; d <= order_; ++d) {
            const int l = std::max(lo(d), other.lo(d));
            const int h = std::min(hi(d), other.hi(d));
            for (int s = l; s <= h; ++s) set(d, s, at(d, s) + c * other.at(d, s));
            set_range(d, l, h);
        }
    }

  private:
    std::size_t checked_order(int d) const {
        if (d < 0 || d > order_)
            throw window_error("LatticeSeries: order index out of range");
        return static_cast<std::size_t>(d);
    }
    const std::pair<int, int>& range_at(int d) const { return range_[checked_order(d)]; }

    std::complex<double> w0_{0.0, 0.0};
    std::complex<double> step_{1.0, 0.0};
    int order_ = 0;
    int half_window_ = 1;
    std::vector<std::vector<std::complex<double>>> data_;
    std::vector<std::pair<int, int>> range_;
};

}  // namespace ecm

#endif  // ECM_LATTICE_SERIES_HPP
