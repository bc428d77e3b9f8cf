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

#include "bellcert/randomness.h"

#include <algorithm>
#include <cmath>

#include "bellcert/error.h"

namespace bellcert {

double guessing_probability(const Behavior& behavior, std::span<const int> joint_input) {
  const auto row = behavior.row(behavior.scenario().input_index(joint_input));
  return *std::max_element(row.begin(), row.end());
}

double min_entropy(double p) {
  if (!(p > 0.0) || p > 1.0 + kNormalizationTol) {
    throw Error(ErrorCode::kOutOfRange, "guessing probability must lie in (0, 1]");
  }
  return p >= 1.0 ? 0.0 : -std::log2(p);
}

RandomnessReport observed_report(const Behavior& behavior, const Query& query) {
  validate_query(behavior.scenario(), query);
  double p = 0.0;
  if (const auto* joint = std::get_if<JointQuery>(&query)) {
    p = guessing_probability(behavior, joint->settings);
  } else {
    const auto& local = std::get<LocalQuery>(query);
    const int party[1] = {local.party};
    const int setting[1] = {local.setting};
    const auto m = marginal(behavior, party, setting);
    p = *std::max_element(m.probs.begin(), m.probs.end());
  }
  return {query, p, min_entropy(p), ReportKind::kObserved, std::nullopt};
}

RandomnessReport certified_report(const UniformityCertificate& certificate, const Query& query) {
  const double bits = certified_bits(certificate, query);
  return {query, std::exp2(-bits), bits, ReportKind::kCertified, certificate.assumption};
}

}  // namespace bellcert
