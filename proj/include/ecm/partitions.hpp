// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_PARTITIONS_HPP
#define ECM_PARTITIONS_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecm/errors.hpp"

namespace ecm {

/// Cell of a Young diagram, 1-based (row i, column j).
struct Cell {
    int i = 1;
    int j = 1;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Non-increasing list of positive integers; the empty list is the empty
/// diagram. Trailing zeros are stripped on construction.
class Partition {
  public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw parameter_error("Partition: parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw parameter_error("Partition: parts must be non-increasing");
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    long long size() const {
        long long s = 0;
        for (int p : parts_) s += p;
        return s;
    }
    bool empty() const { return parts_.empty(); }

    /// 1-based row length; zero beyond the last row.
    int part(int i) const {
        return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }

    std::vector<Cell> cells() const {
        std::vector<Cell> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (int i = 1; i <= length(); ++i)
            for (int j = 1; j <= part(i); ++j) out.push_back({i, j});
        return out;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

  private:
    std::vector<int> parts_;
};

/// All partitions of exactly d, in descending lexicographic order.
inline std::vector<Partition> enumerate_partitions(int d) {
    if (d < 0) throw parameter_error("enumerate_partitions: negative size");
    if (d > 60) throw capacity_error("enumerate_partitions: size cap is 60");
    std::vector<Partition> out;
    std::vector<int> stack;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.emplace_back(stack);
            return;
        }
        for (int first = std::min(rest, maxpart); first >= 1; --first) {
            stack.push_back(first);
            self(self, rest - first, first);
            stack.pop_back();
        }
    };
    rec(rec, d, d == 0 ? 1 : d);
    return out;
}

/// Reflected diagram: row lengths become column lengths.
inline Partition transpose(const Partition& p) {
    std::vector<int> t;
    t.reserve(static_cast<std::size_t>(p.part(1)));
    for (int j = 1; j <= p.part(1); ++j) {
        int count = 0;
        for (int i = 1; i <= p.length(); ++i)
            if (p.part(i) >= j) ++count;
        t.push_back(count);
    }
    return Partition(std::move(t));
}

/// The three equivariant cell weights attached to a diagram cell.
struct CellContents {
    std::complex<double> xi;
    std::complex<double> upsilon;
    std::complex<double> zeta;
};

/// xi = hbar (i - j + n (j-1)), upsilon = hbar (n (j-i) + 1 - j),
/// zeta = hbar (i - 1 - n (j-1)).
inline CellContents contents(Cell c, std::complex<double> hbar, std::complex<double> n) {
    const double i = static_cast<double>(c.i);
    const double j = static_cast<double>(c.j);
    return {hbar * ((i - j) + n * (j - 1.0)),
            hbar * (n * (j - i) + (1.0 - j)),
            hbar * ((i - 1.0) - n * (j - 1.0))};
}

/// Addable corners (cells whose addition keeps a valid diagram) and
/// removable corners. Always |addable| = |removable| + 1.
struct BoundarySets {
    std::vector<Cell> addable;    // Gamma^+
    std::vector<Cell> removable;  // Gamma^-
};

inline BoundarySets boundary_sets(const Partition& p) {
    BoundarySets out;
    const int len = p.length();
    for (int i = 1; i <= len; ++i) {
        if (i == 1 || p.part(i) < p.part(i - 1)) out.addable.push_back({i, p.part(i) + 1});
        if (p.part(i) > p.part(i + 1)) out.removable.push_back({i, p.part(i)});
    }
    out.addable.push_back({len + 1, 1});
    return out;
}

}  // namespace ecm

#endif  // ECM_PARTITIONS_HPP
