// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_ERRORS_HPP
#define LFGC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lfgc {

// Bad input data: unreadable files, malformed streams, inconsistent grids.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A violated internal invariant; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace lfgc

#endif
