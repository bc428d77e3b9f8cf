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

#ifndef BELLCERT_DYADIC_H_
#define BELLCERT_DYADIC_H_

#include <cstdint>
#include <string>

namespace bellcert {

/// Exact rational of the form num / 2^log2_den.
///
/// Kept in lowest terms (num odd, or log2_den == 0), so two values are equal
/// iff their fields are equal. Every finite double is representable, which is
/// what makes coefficient comparison in the symmetry search exact. Arithmetic
/// that would overflow the 64-bit numerator throws Error(kOverflow).
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT
  Dyadic(std::int64_t num, int log2_den);

  /// Exact conversion; throws for non-finite input.
  static Dyadic from_double(double value);

  std::int64_t num() const { return num_; }
  int log2_den() const { return log2_den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const;
  std::string to_string() const;

  /// Numerator over the common denominator 2^log2_den (which must be at
  /// least this value's own denominator exponent).
  std::int64_t scaled_numerator(int log2_den) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.num_, a.log2_den_); }
  Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }
  Dyadic& operator-=(const Dyadic& other) { return *this = *this - other; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend bool operator<(const Dyadic& a, const Dyadic& b);
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }

  /// 2^-k.
  static Dyadic half_power(int k) { return Dyadic(1, k); }

 private:
  void normalize();

  std::int64_t num_ = 0;
  int log2_den_ = 0;
};

}  // namespace bellcert

#endif  // BELLCERT_DYADIC_H_
