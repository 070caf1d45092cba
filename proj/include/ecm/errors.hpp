// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_ERRORS_HPP
#define ECM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecm {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent parameters (e.g. |qe| >= 1, mismatched sizes).
struct parameter_error : error {
    using error::error;
};

/// Non-finite or out-of-domain argument.
struct domain_error : error {
    using error::error;
};

/// Argument too close to a pole or a lattice point.
struct pole_error : error {
    using error::error;
};

/// Evaluation requested inside a numerically indeterminate zone.
struct evaluation_zone_error : error {
    using error::error;
};

/// Enumeration or truncation request beyond the supported cap.
struct capacity_error : error {
    using error::error;
};

/// Exact integer arithmetic exceeded 64-bit range.
struct overflow_error : error {
    using error::error;
};

/// Lattice access outside the valid per-order window.
struct window_error : error {
    using error::error;
};

/// A requested shift does not land on the lattice.
struct alignment_error : error {
    using error::error;
};

/// A tail sum or iteration failed to converge within its cap.
struct convergence_error : error {
    using error::error;
};

/// A structural property expected of the data failed to hold.
struct structure_error : error {
    using error::error;
};

/// Malformed or inconsistent configuration input.
struct config_error : error {
    using error::error;
};

}  // namespace ecm

#endif  // ECM_ERRORS_HPP
