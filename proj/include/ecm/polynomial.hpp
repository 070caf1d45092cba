// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_POLYNOMIAL_HPP
#define ECM_POLYNOMIAL_HPP

#include <complex>
#include <vector>

#include "ecm/errors.hpp"

namespace ecm {

/// Monic polynomial in one complex variable. Only the coefficients below the
/// leading term are stored; the leading coefficient is 1 by construction.
class MonicPoly {
  public:
    /// Coefficients c[0..N-1] of w^0 .. w^{N-1}; degree is c.size().
    explicit MonicPoly(std::vector<std::complex<double>> coeffs) : c_(std::move(coeffs)) {}

    MonicPoly() = default;  // the constant polynomial 1

    static MonicPoly from_roots(const std::vector<std::complex<double>>& roots) {
        std::vector<std::complex<double>> full(roots.size() + 1, {0.0, 0.0});
        full[0] = {1.0, 0.0};  // running product, low degree first
        std::size_t deg = 0;
        for (const auto& r : roots) {
            for (std::size_t j = deg + 1; j-- > 0;) {
                full[j + 1] += full[j];
                full[j] *= -r;
            }
            ++deg;
        }
        full.pop_back();
        return MonicPoly(std::move(full));
    }

    int degree() const { return static_cast<int>(c_.size()); }
    const std::vector<std::complex<double>>& coefficients() const { return c_; }

    std::complex<double> operator()(std::complex<double> w) const {
        std::complex<double> acc{1.0, 0.0};
        for (std::size_t j = c_.size(); j-- > 0;) acc = acc * w + c_[j];
        return acc;
    }

    /// P(w + delta) as a monic polynomial in w.
    MonicPoly shifted(std::complex<double> delta) const {
        std::vector<std::complex<double>> a(c_);
        a.push_back({1.0, 0.0});
        const std::size_t n = a.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;) a[j] += delta * a[j + 1];
        a.pop_back();
        return MonicPoly(std::move(a));
    }

    friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

  private:
    std::vector<std::complex<double>> c_;
};

}  // namespace ecm

#endif  // ECM_POLYNOMIAL_HPP
