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

#include "bellcert/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bellcert/error.h"

namespace bellcert {
namespace {

constexpr std::size_t kMaxEvents = std::size_t{1} << 26;

std::size_t checked_mul(std::size_t a, std::size_t b) {
  std::size_t out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out > kMaxEvents) {
    throw Error(ErrorCode::kCapExceeded, "scenario is too large to tabulate");
  }
  return out;
}

std::string tuple_string(std::span<const int> values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << values[i];
  }
  return out.str();
}

}  // namespace

Scenario::Scenario(int parties, std::vector<int> settings, int outcomes)
    : parties_(parties), settings_(std::move(settings)), outcomes_(outcomes) {
  if (parties_ < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one party");
  if (static_cast<int>(settings_.size()) != parties_) {
    throw Error(ErrorCode::kInvalidArgument, "settings list length must equal party count");
  }
  for (int m : settings_) {
    if (m < 1) throw Error(ErrorCode::kInvalidArgument, "every party needs a setting");
  }
  if (outcomes_ < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two outcomes");

  input_strides_.assign(parties_, 1);
  outcome_strides_.assign(parties_, 1);
  correlator_strides_.assign(parties_, 1);
  for (int i = parties_ - 1; i >= 0; --i) {
    input_strides_[i] = num_inputs_;
    outcome_strides_[i] = num_outcomes_;
    correlator_strides_[i] = num_correlator_terms_;
    num_inputs_ = checked_mul(num_inputs_, settings_[i]);
    num_outcomes_ = checked_mul(num_outcomes_, outcomes_);
    num_correlator_terms_ = checked_mul(num_correlator_terms_, settings_[i] + 1);
  }
  checked_mul(num_inputs_, num_outcomes_);
}

Scenario Scenario::uniform(int parties, int settings, int outcomes) {
  if (parties < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one party");
  return Scenario(parties, std::vector<int>(parties, settings), outcomes);
}

std::size_t Scenario::input_index(std::span<const int> settings) const {
  if (static_cast<int>(settings.size()) != parties_) {
    throw Error(ErrorCode::kDimensionMismatch, "input tuple has wrong length");
  }
  std::size_t index = 0;
  for (int i = 0; i < parties_; ++i) {
    if (settings[i] < 0 || settings[i] >= settings_[i]) {
      throw Error(ErrorCode::kOutOfRange, "setting out of range for party " + std::to_string(i));
    }
    index += settings[i] * input_strides_[i];
  }
  return index;
}

std::vector<int> Scenario::input_tuple(std::size_t index) const {
  if (index >= num_inputs_) throw Error(ErrorCode::kOutOfRange, "input index out of range");
  std::vector<int> out(parties_);
  for (int i = 0; i < parties_; ++i) {
    out[i] = static_cast<int>(index / input_strides_[i]);
    index %= input_strides_[i];
  }
  return out;
}

std::size_t Scenario::outcome_index(std::span<const int> outcomes) const {
  if (static_cast<int>(outcomes.size()) != parties_) {
    throw Error(ErrorCode::kDimensionMismatch, "outcome tuple has wrong length");
  }
  std::size_t index = 0;
  for (int i = 0; i < parties_; ++i) {
    if (outcomes[i] < 0 || outcomes[i] >= outcomes_) {
      throw Error(ErrorCode::kOutOfRange, "outcome out of range");
    }
    index += outcomes[i] * outcome_strides_[i];
  }
  return index;
}

std::vector<int> Scenario::outcome_tuple(std::size_t index) const {
  if (index >= num_outcomes_) throw Error(ErrorCode::kOutOfRange, "outcome index out of range");
  std::vector<int> out(parties_);
  for (int i = 0; i < parties_; ++i) {
    out[i] = static_cast<int>(index / outcome_strides_[i]);
    index %= outcome_strides_[i];
  }
  return out;
}

std::size_t Scenario::correlator_index(std::span<const int> term) const {
  if (static_cast<int>(term.size()) != parties_) {
    throw Error(ErrorCode::kDimensionMismatch, "correlator term has wrong length");
  }
  std::size_t index = 0;
  for (int i = 0; i < parties_; ++i) {
    if (term[i] < -1 || term[i] >= settings_[i]) {
      throw Error(ErrorCode::kOutOfRange, "correlator setting out of range");
    }
    index += (term[i] + 1) * correlator_strides_[i];
  }
  return index;
}

std::vector<int> Scenario::correlator_term(std::size_t index) const {
  if (index >= num_correlator_terms_) {
    throw Error(ErrorCode::kOutOfRange, "correlator index out of range");
  }
  std::vector<int> out(parties_);
  for (int i = 0; i < parties_; ++i) {
    out[i] = static_cast<int>(index / correlator_strides_[i]) - 1;
    index %= correlator_strides_[i];
  }
  return out;
}

std::string Scenario::to_string() const {
  return "(" + std::to_string(parties_) + ", [" + tuple_string(settings_) + "], " +
         std::to_string(outcomes_) + ")";
}

Behavior Behavior::uniform(const Scenario& scenario) {
  return Behavior(scenario, std::vector<double>(scenario.num_events(),
                                                1.0 / static_cast<double>(scenario.num_outcomes())));
}

Behavior Behavior::deterministic(const Scenario& scenario,
                                 const std::vector<std::vector<int>>& strategy) {
  if (static_cast<int>(strategy.size()) != scenario.parties()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy needs one entry per party");
  }
  for (int i = 0; i < scenario.parties(); ++i) {
    if (static_cast<int>(strategy[i].size()) != scenario.settings(i)) {
      throw Error(ErrorCode::kDimensionMismatch, "strategy needs one outcome per setting");
    }
  }
  std::vector<double> table(scenario.num_events(), 0.0);
  std::vector<int> outcomes(scenario.parties());
  for (std::size_t x = 0; x < scenario.num_inputs(); ++x) {
    const auto settings = scenario.input_tuple(x);
    for (int i = 0; i < scenario.parties(); ++i) outcomes[i] = strategy[i][settings[i]];
    table[x * scenario.num_outcomes() + scenario.outcome_index(outcomes)] = 1.0;
  }
  return Behavior(scenario, std::move(table));
}

Behavior behavior_from_table(const Scenario& scenario, std::vector<double> table) {
  if (table.size() != scenario.num_events()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "table has " + std::to_string(table.size()) + " entries, scenario needs " +
                    std::to_string(scenario.num_events()));
  }
  const std::size_t row_len = scenario.num_outcomes();
  for (std::size_t x = 0; x < scenario.num_inputs(); ++x) {
    double sum = 0.0;
    for (std::size_t a = 0; a < row_len; ++a) {
      double& p = table[x * row_len + a];
      if (!std::isfinite(p)) throw Error(ErrorCode::kInvalidArgument, "non-finite probability");
      if (p < -kNormalizationTol) {
        throw Error(ErrorCode::kNegativeProbability,
                    "negative probability at input " + std::to_string(x) + ", outcome " +
                        std::to_string(a));
      }
      if (p > 1.0 + kNormalizationTol) {
        throw Error(ErrorCode::kOutOfRange, "probability above 1 at input " + std::to_string(x));
      }
      if (p < 0.0) p = 0.0;
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol) {
      throw Error(ErrorCode::kNormalization,
                  "row for input " + std::to_string(x) + " sums to " + std::to_string(sum));
    }
  }
  return Behavior(scenario, std::move(table));
}

Behavior behavior_from_table(const Scenario& scenario,
                             const std::vector<std::vector<double>>& rows) {
  if (rows.size() != scenario.num_inputs()) {
    throw Error(ErrorCode::kDimensionMismatch, "table needs one row per joint input");
  }
  std::vector<double> flat;
  flat.reserve(scenario.num_events());
  for (const auto& row : rows) {
    if (row.size() != scenario.num_outcomes()) {
      throw Error(ErrorCode::kDimensionMismatch, "row needs one entry per joint outcome");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return behavior_from_table(scenario, std::move(flat));
}

CorrelatorForm::CorrelatorForm(Scenario scenario) : scenario_(std::move(scenario)) {
  if (scenario_.outcomes() != 2) {
    throw Error(ErrorCode::kUnsupported, "correlators are defined for two outcomes only");
  }
  values_.assign(scenario_.num_correlator_terms(), 0.0);
  values_[0] = 1.0;
}

double CorrelatorForm::get(std::span<const int> term) const {
  return values_[scenario_.correlator_index(term)];
}

void CorrelatorForm::set(std::span<const int> term, double value) {
  const std::size_t index = scenario_.correlator_index(term);
  if (index == 0) throw Error(ErrorCode::kInvalidArgument, "constant term is fixed at 1");
  values_[index] = value;
}

CorrelatorForm correlators_from_behavior(const Behavior& behavior) {
  const Scenario& s = behavior.scenario();
  CorrelatorForm form(s);
  if (s.outcomes() != 2) {
    throw Error(ErrorCode::kUnsupported, "correlators are defined for two outcomes only");
  }
  const int n = s.parties();
  std::vector<double> sums(s.num_correlator_terms(), 0.0);
  std::vector<double> counts(s.num_correlator_terms(), 0.0);
  std::vector<int> term(n);
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto settings = s.input_tuple(x);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i) term[i] = (mask >> i) & 1u ? settings[i] : -1;
      double value = 0.0;
      for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
        int sign = 1;
        for (int i = 0; i < n; ++i) {
          if ((mask >> i) & 1u) sign *= outcome_sign(static_cast<int>(a / s.outcome_stride(i)) % 2);
        }
        value += sign * behavior.prob(x, a);
      }
      const std::size_t index = s.correlator_index(term);
      sums[index] += value;
      counts[index] += 1.0;
    }
  }
  for (std::size_t k = 1; k < sums.size(); ++k) {
    form.set(s.correlator_term(k), sums[k] / counts[k]);
  }
  return form;
}

Behavior behavior_from_correlators(const CorrelatorForm& correlators) {
  const Scenario& s = correlators.scenario();
  const int n = s.parties();
  const double norm = std::ldexp(1.0, -n);
  std::vector<double> table(s.num_events());
  std::vector<int> term(n);
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto settings = s.input_tuple(x);
    for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
      const auto outcomes = s.outcome_tuple(a);
      double p = 0.0;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int sign = 1;
        for (int i = 0; i < n; ++i) {
          if ((mask >> i) & 1u) {
            term[i] = settings[i];
            sign *= outcome_sign(outcomes[i]);
          } else {
            term[i] = -1;
          }
        }
        p += sign * correlators.get(term);
      }
      p *= norm;
      if (p < -kNormalizationTol) {
        throw Error(ErrorCode::kNegativeProbability,
                    "correlators give P(a=" + tuple_string(outcomes) + "|x=" +
                        tuple_string(settings) + ") = " + std::to_string(p));
      }
      table[x * s.num_outcomes() + a] = p;
    }
  }
  return behavior_from_table(s, std::move(table));
}

namespace {

// Marginal of the parties in `mask` for every joint input, as a flat array
// indexed by (input, marginal outcome).
std::vector<double> subset_marginals(const Behavior& behavior, unsigned mask,
                                     std::size_t* marginal_outcomes) {
  const Scenario& s = behavior.scenario();
  const int n = s.parties();
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    if ((mask >> i) & 1u) count *= s.outcomes();
  }
  *marginal_outcomes = count;
  std::vector<double> out(s.num_inputs() * count, 0.0);
  for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
    std::size_t m = 0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) m = m * s.outcomes() + (a / s.outcome_stride(i)) % s.outcomes();
    }
    for (std::size_t x = 0; x < s.num_inputs(); ++x) out[x * count + m] += behavior.prob(x, a);
  }
  return out;
}

}  // namespace

NoSignalingReport is_no_signaling(const Behavior& behavior, double tol) {
  const Scenario& s = behavior.scenario();
  const int n = s.parties();
  double worst = 0.0;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::size_t count = 0;
    const auto marg = subset_marginals(behavior, mask, &count);
    // Group joint inputs by their restriction to the subset.
    std::size_t restricted_inputs = 1;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) restricted_inputs *= s.settings(i);
    }
    std::vector<double> lo(restricted_inputs * count, std::numeric_limits<double>::infinity());
    std::vector<double> hi(restricted_inputs * count, -std::numeric_limits<double>::infinity());
    for (std::size_t x = 0; x < s.num_inputs(); ++x) {
      std::size_t r = 0;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) r = r * s.settings(i) + (x / s.input_stride(i)) % s.settings(i);
      }
      for (std::size_t m = 0; m < count; ++m) {
        const double p = marg[x * count + m];
        lo[r * count + m] = std::min(lo[r * count + m], p);
        hi[r * count + m] = std::max(hi[r * count + m], p);
      }
    }
    for (std::size_t k = 0; k < lo.size(); ++k) worst = std::max(worst, hi[k] - lo[k]);
  }
  return {worst <= tol, worst};
}

MarginalResult marginal(const Behavior& behavior, std::span<const int> parties,
                        std::span<const int> settings) {
  const Scenario& s = behavior.scenario();
  const int n = s.parties();
  if (parties.empty()) throw Error(ErrorCode::kOutOfRange, "party subset is empty");
  if (parties.size() != settings.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "need one setting per listed party");
  }
  std::vector<int> fixed(n, -1);
  for (std::size_t k = 0; k < parties.size(); ++k) {
    const int p = parties[k];
    if (p < 0 || p >= n) throw Error(ErrorCode::kOutOfRange, "party out of range");
    if (fixed[p] != -1) throw Error(ErrorCode::kInvalidArgument, "party listed twice");
    if (settings[k] < 0 || settings[k] >= s.settings(p)) {
      throw Error(ErrorCode::kOutOfRange, "setting out of range");
    }
    fixed[p] = settings[k];
  }
  std::size_t count = 1;
  for (std::size_t k = 0; k < parties.size(); ++k) count *= s.outcomes();

  MarginalResult result;
  result.probs.assign(count, 0.0);
  std::vector<double> lo(count, std::numeric_limits<double>::infinity());
  std::vector<double> hi(count, -std::numeric_limits<double>::infinity());
  std::vector<double> local(count);
  int matching = 0;
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto tuple = s.input_tuple(x);
    bool match = true;
    for (int i = 0; i < n && match; ++i) match = fixed[i] == -1 || fixed[i] == tuple[i];
    if (!match) continue;
    ++matching;
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
      std::size_t m = 0;
      for (int p : parties) m = m * s.outcomes() + (a / s.outcome_stride(p)) % s.outcomes();
      local[m] += behavior.prob(x, a);
    }
    for (std::size_t m = 0; m < count; ++m) {
      result.probs[m] += local[m];
      lo[m] = std::min(lo[m], local[m]);
      hi[m] = std::max(hi[m], local[m]);
    }
  }
  for (std::size_t m = 0; m < count; ++m) {
    result.probs[m] /= matching;
    result.setting_spread = std::max(result.setting_spread, hi[m] - lo[m]);
  }
  result.setting_dependent = result.setting_spread > kNoSignalingTol;
  return result;
}

}  // namespace bellcert
