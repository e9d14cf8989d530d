// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_ERROR_HPP
#define STARLIKE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace starlike {

enum class ErrorCode {
  HypothesisViolated,
  Infeasible,
  ZeroVector,
  DimensionExhausted,
  DimensionMismatch,
  EmptyNet,
  EmptySystem,
  InvalidTile,
  OutOfHorizon,
  SamplingFailed,
  IterationCapExceeded,
  ConstructionFailed,
  InvalidArgument,
  Config,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace starlike

#endif  // STARLIKE_ERROR_HPP
