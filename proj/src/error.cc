// Copyright 2026 The bellcert Authors
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

#include "bellcert/error.h"

namespace bellcert {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kNormalization:
      return "normalization";
    case ErrorCode::kNegativeProbability:
      return "negative_probability";
    case ErrorCode::kOutOfRange:
      return "out_of_range";
    case ErrorCode::kCapExceeded:
      return "cap_exceeded";
    case ErrorCode::kNotASymmetry:
      return "not_a_symmetry";
    case ErrorCode::kUnsupported:
      return "unsupported";
    case ErrorCode::kParse:
      return "parse_error";
    case ErrorCode::kUnknownFunctional:
      return "unknown_functional";
    case ErrorCode::kOverflow:
      return "overflow";
    case ErrorCode::kInvalidModel:
      return "invalid_model";
  }
  return "unknown";
}

}  // namespace bellcert
