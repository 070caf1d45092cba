// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_VERSION_HPP
#define ECM_VERSION_HPP

namespace ecm {

inline constexpr const char* version = "1.0.0";

}  // namespace ecm

#endif  // ECM_VERSION_HPP
