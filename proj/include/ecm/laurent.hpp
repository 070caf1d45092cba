// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_LAURENT_HPP
#define ECM_LAURENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "ecm/errors.hpp"

namespace ecm {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("LaurentPoly2: 64-bit coefficient overflow in addition");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("LaurentPoly2: 64-bit coefficient overflow in multiplication");
    return r;
}

}  // namespace detail

/// Exact integer Laurent polynomial in the two formal variables q1 and q4.
/// The third variable q3 of the ambient algebra is always eliminated through
/// q3 = q1^{-1} q4^{-1} before storage. Coefficients are 64-bit integers
/// with overflow detection; zero coefficients are never stored.
class LaurentPoly2 {
  public:
    using Exponent = std::pair<int, int>;  // (e1, e4)

    LaurentPoly2() = default;

    static LaurentPoly2 zero() { return {}; }
    static LaurentPoly2 constant(std::int64_t c) { return monomial(0, 0, c); }
    static LaurentPoly2 one() { return constant(1); }

    static LaurentPoly2 monomial(int e1, int e4, std::int64_t c) {
        LaurentPoly2 p;
        if (c != 0) p.terms_[{e1, e4}] = c;
        return p;
    }

    static LaurentPoly2 q1(int power = 1) { return monomial(power, 0, 1); }
    static LaurentPoly2 q4(int power = 1) { return monomial(0, power, 1); }
    /// q3^power with the substitution q3 = q1^{-1} q4^{-1} applied.
    static LaurentPoly2 q3(int power = 1) { return monomial(-power, -power, 1); }

    const std::map<Exponent, std::int64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::int64_t coeff(int e1, int e4) const {
        const auto it = terms_.find({e1, e4});
        return it == terms_.end() ? 0 : it->second;
    }

    LaurentPoly2& operator+=(const LaurentPoly2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly2& operator-=(const LaurentPoly2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, detail::checked_mul(c, -1));
        return *this;
    }

    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator-(const LaurentPoly2& a) {
        LaurentPoly2 r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = detail::checked_mul(c, -1);
        return r;
    }

    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.first + eb.first, ea.second + eb.second},
                           detail::checked_mul(ca, cb));
        return r;
    }

    friend LaurentPoly2 operator*(std::int64_t s, const LaurentPoly2& a) {
        LaurentPoly2 r;
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = detail::checked_mul(s, c);
        return r;
    }

    friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += std::to_string(c);
            if (e.first != 0) s += "*q1^" + std::to_string(e.first);
            if (e.second != 0) s += "*q4^" + std::to_string(e.second);
        }
        return s;
    }

  private:
    void add_term(Exponent e, std::int64_t c) {
        if (c == 0) return;
        const auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
            return;
        }
        it->second = detail::checked_add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Exponent, std::int64_t> terms_;
};

}  // namespace ecm

#endif  // ECM_LAURENT_HPP
