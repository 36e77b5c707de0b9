// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/error.hpp"

namespace rmt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kDegenerateLaw: return "DegenerateLaw";
    case ErrorCode::kZeroAtom: return "ZeroAtom";
    case ErrorCode::kPoleHit: return "PoleHit";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kBranchViolation: return "BranchViolation";
    case ErrorCode::kMassDeficit: return "MassDeficit";
    case ErrorCode::kInsufficientGrid: return "InsufficientGrid";
    case ErrorCode::kPipelineFailure: return "PipelineFailure";
    case ErrorCode::kHypothesisViolation: return "HypothesisViolation";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "unknown";
}

}  // namespace rmt
