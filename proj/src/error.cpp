// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/error.hpp"

namespace starlike {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionExhausted: return "DimensionExhausted";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyNet: return "EmptyNet";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::InvalidTile: return "InvalidTile";
    case ErrorCode::OutOfHorizon: return "OutOfHorizon";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace starlike
