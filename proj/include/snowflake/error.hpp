// Copyright 2026 The snowflake-embed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace snowflake {

enum class ErrorCode {
  // metric_core
  NotSquare,
  NotSymmetric,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TriangleViolation,
  DuplicatePoints,
  NonFiniteValue,
  // shared
  DimensionMismatch,
  DomainError,
  TooLarge,
  // negative_type
  NotStrict,
  BadPartition,
  BadWeights,
  // embedding
  NotEmbeddable,
  TheoremViolation,
  ResidualExceeded,
  // schoenberg_integral
  QuadratureNonconvergence,
  // group_quotient
  InvalidGroup,
  NotOrthogonal,
  OrderExceeded,
  NumericalAmbiguity,
  NotClosed,
  NonFreeOrbit,
  OrbitCollision,
  InvarianceViolation,
  VerificationFailure,
};

std::string_view to_string(ErrorCode code);

/// Base of every error raised by the library. Subclasses carry the
/// diagnostic payload (offending indices, spectra, witnesses).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace snowflake
