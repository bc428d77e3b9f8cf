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

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "bellcert/error.h"

namespace bellcert {
namespace {

TEST(DyadicTest, NormalizesToOddNumerator) {
  const Dyadic d(12, 4);
  EXPECT_EQ(d.num(), 3);
  EXPECT_EQ(d.log2_den(), 2);
  EXPECT_EQ(Dyadic(0, 7), Dyadic(0));
  EXPECT_EQ(Dyadic(4, 2), Dyadic(1));
  EXPECT_DOUBLE_EQ(Dyadic(-3, 3).to_double(), -0.375);
}

TEST(DyadicTest, ArithmeticIsExact) {
  const Dyadic half = Dyadic::half_power(1);
  EXPECT_EQ(half + half, Dyadic(1));
  EXPECT_EQ(half * half, Dyadic(1, 2));
  EXPECT_EQ(Dyadic(3, 2) - Dyadic(1, 1), Dyadic(1, 2));
  EXPECT_EQ(-Dyadic(5, 3), Dyadic(-5, 3));
  EXPECT_TRUE(Dyadic(1, 3) < Dyadic(1, 2));
  EXPECT_TRUE(Dyadic(-1) < Dyadic(-1, 1));
  EXPECT_EQ(Dyadic(3, 2).scaled_numerator(4), 12);
}

TEST(DyadicTest, FromDoubleRoundTripsDyadicValues) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const std::int64_t num = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const int den = static_cast<int>(rng() % 20);
    const Dyadic d(num, den);
    EXPECT_EQ(Dyadic::from_double(d.to_double()), d);
  }
  EXPECT_EQ(Dyadic::from_double(0.5), Dyadic(1, 1));
}

TEST(DyadicTest, NonDyadicOrNonFiniteInputsRejected) {
  EXPECT_THROW(Dyadic::from_double(std::numeric_limits<double>::quiet_NaN()), Error);
  EXPECT_THROW(Dyadic::from_double(std::numeric_limits<double>::infinity()), Error);
}

TEST(DyadicTest, OverflowIsReported) {
  const Dyadic big(std::int64_t{1} << 62);
  try {
    (void)(big * big);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
}

TEST(DyadicTest, ToStringShowsFraction) {
  EXPECT_EQ(Dyadic(3).to_string(), "3");
  EXPECT_EQ(Dyadic(-3, 2).to_string(), "-3/2^2");
}

}  // namespace
}  // namespace bellcert
