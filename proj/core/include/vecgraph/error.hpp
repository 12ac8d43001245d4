// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace vecgraph {

enum class ErrorCode {
  Parse,
  InvalidKernel,
  OutOfBounds,
  Unsupported,
  Precondition,
  StaleHandle,
  InvariantViolation,
  OracleMismatch,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type thrown by every vecgraph component.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace vecgraph
