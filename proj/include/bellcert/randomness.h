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

// Randomness in bits. Observed reports read the guessing probability straight
// off a behavior; certified reports come from a symmetry certificate and hold
// only under its uniqueness assumption. Neither is the device-independent
// guessing probability optimized over all decompositions of the behavior.

#ifndef BELLCERT_RANDOMNESS_H_
#define BELLCERT_RANDOMNESS_H_

#include <optional>
#include <span>
#include <string>

#include "bellcert/scenario.h"
#include "bellcert/symmetry.h"

namespace bellcert {

enum class ReportKind { kObserved, kCertified };

struct RandomnessReport {
  Query query;
  double guessing_probability;
  double min_entropy_bits;
  ReportKind kind;
  /// Set for certified reports.
  std::optional<std::string> assumption;
};

/// max_a P(a|x).
double guessing_probability(const Behavior& behavior, std::span<const int> joint_input);

/// -log2 p; throws Error(kOutOfRange) unless 0 < p <= 1.
double min_entropy(double guessing_probability);

/// Joint queries use guessing_probability, local queries the marginal.
RandomnessReport observed_report(const Behavior& behavior, const Query& query);

/// p_guess = 1 / s_min from the certificate's orbits at the query.
RandomnessReport certified_report(const UniformityCertificate& certificate, const Query& query);

}  // namespace bellcert

#endif  // BELLCERT_RANDOMNESS_H_
