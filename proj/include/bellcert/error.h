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

#ifndef BELLCERT_ERROR_H_
#define BELLCERT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bellcert {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNormalization,
  kNegativeProbability,
  kOutOfRange,
  kCapExceeded,
  kNotASymmetry,
  kUnsupported,
  kParse,
  kUnknownFunctional,
  kOverflow,
  kInvalidModel,
};

/// Stable snake_case name, used as the "code" field of CLI error objects.
std::string_view error_code_name(ErrorCode code);

/// All library failures are reported with this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bellcert

#endif  // BELLCERT_ERROR_H_
