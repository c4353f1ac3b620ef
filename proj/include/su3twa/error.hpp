// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace su3twa {

enum class ErrorCode {
  InvalidArgument,
  NotPositiveSemidefinite,
  Unsupported,
  CapExceeded,
  Numerical,
  Config,
  Validation,
};

/// Exception carrying a machine-readable category; translated to status
/// codes at the C boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace su3twa
