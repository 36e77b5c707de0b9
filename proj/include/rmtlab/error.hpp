// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rmt {

/// Failure categories surfaced by the library. Values are stable: the C API
/// reports them verbatim as status codes.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kNonConvergence = 2,     // eigen/SVD iteration failed
  kSingularMatrix = 3,
  kDegenerateLaw = 4,
  kZeroAtom = 5,
  kPoleHit = 6,
  kNoConvergence = 7,      // fixed-point iteration ran out of budget
  kBranchViolation = 8,
  kMassDeficit = 9,
  kInsufficientGrid = 10,
  kPipelineFailure = 11,
  kHypothesisViolation = 12,
  kConfig = 13,
  kIo = 14,
  kInternal = 15,
};

std::string_view to_string(ErrorCode code) noexcept;

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

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace rmt
