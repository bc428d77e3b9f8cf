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

#include "bellcert/dyadic.h"

#include <cmath>
#include <limits>

#include "bellcert/error.h"

namespace bellcert {
namespace {

constexpr int kMaxLog2Den = 1100;

[[noreturn]] void overflow(const char* what) {
  throw Error(ErrorCode::kOverflow, std::string("dyadic overflow in ") + what);
}

std::int64_t shift_left_checked(std::int64_t value, int shift) {
  if (value == 0) return 0;
  if (shift >= 63) overflow("shift");
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() >> shift;
  if (value > limit || value < -limit) overflow("shift");
  return value * (std::int64_t{1} << shift);
}

}  // namespace

Dyadic::Dyadic(std::int64_t num, int log2_den) : num_(num), log2_den_(log2_den) {
  if (log2_den_ < 0) {
    num_ = shift_left_checked(num_, -log2_den_);
    log2_den_ = 0;
  }
  if (log2_den_ > kMaxLog2Den) overflow("denominator");
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  while (log2_den_ > 0 && (num_ % 2) == 0) {
    num_ /= 2;
    --log2_den_;
  }
}

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient must be finite");
  }
  if (value == 0.0) return Dyadic();
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);  // value = m * 2^e
  // 53-bit integer mantissa; value = int_mantissa * 2^(e - 53).
  const auto int_mantissa = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  return Dyadic(int_mantissa, 53 - exponent);
}

double Dyadic::to_double() const {
  return std::ldexp(static_cast<double>(num_), -log2_den_);
}

std::string Dyadic::to_string() const {
  if (log2_den_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/2^" + std::to_string(log2_den_);
}

std::int64_t Dyadic::scaled_numerator(int log2_den) const {
  if (log2_den < log2_den_) {
    throw Error(ErrorCode::kInvalidArgument, "common denominator too small");
  }
  return shift_left_checked(num_, log2_den - log2_den_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const int den = std::max(a.log2_den_, b.log2_den_);
  std::int64_t sum = 0;
  if (__builtin_add_overflow(a.scaled_numerator(den), b.scaled_numerator(den), &sum)) {
    overflow("add");
  }
  return Dyadic(sum, den);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  std::int64_t product = 0;
  if (__builtin_mul_overflow(a.num_, b.num_, &product)) overflow("multiply");
  return Dyadic(product, a.log2_den_ + b.log2_den_);
}

bool operator<(const Dyadic& a, const Dyadic& b) {
  const int den = std::max(a.log2_den_, b.log2_den_);
  return a.scaled_numerator(den) < b.scaled_numerator(den);
}

}  // namespace bellcert
