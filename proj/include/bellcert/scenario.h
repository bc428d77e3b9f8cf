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

// Bell scenarios, behaviors P(a|x), and the +-1 correlator parametrization.
//
// Indexing conventions used throughout the library:
//   * Joint inputs and joint outcomes are mixed-radix, row-major, with party 0
//     the most significant digit.
//   * A joint event is (input, outcome) with index input * d^N + outcome.
//   * For d = 2, outcome index 0 carries the label +1 and index 1 carries -1.
//   * A correlator term is a vector with one entry per party: -1 when the
//     party is absent, otherwise the party's setting.

#ifndef BELLCERT_SCENARIO_H_
#define BELLCERT_SCENARIO_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bellcert {

inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kNoSignalingTol = 1e-7;

/// The (N, M, d) frame: N parties, M_i settings for party i, d outcomes.
class Scenario {
 public:
  /// Throws Error(kInvalidArgument) unless N >= 1, every M_i >= 1, d >= 2 and
  /// settings.size() == N.
  Scenario(int parties, std::vector<int> settings, int outcomes);

  /// Same setting count for every party.
  static Scenario uniform(int parties, int settings, int outcomes);

  int parties() const { return parties_; }
  const std::vector<int>& settings() const { return settings_; }
  int settings(int party) const { return settings_.at(party); }
  int outcomes() const { return outcomes_; }

  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t num_outcomes() const { return num_outcomes_; }
  std::size_t num_events() const { return num_inputs_ * num_outcomes_; }

  std::size_t input_index(std::span<const int> settings) const;
  std::vector<int> input_tuple(std::size_t index) const;
  std::size_t outcome_index(std::span<const int> outcomes) const;
  std::vector<int> outcome_tuple(std::size_t index) const;

  std::size_t input_stride(int party) const { return input_strides_[party]; }
  std::size_t outcome_stride(int party) const { return outcome_strides_[party]; }

  /// Number of correlator terms including the empty (constant) one.
  std::size_t num_correlator_terms() const { return num_correlator_terms_; }
  std::size_t correlator_index(std::span<const int> term) const;
  std::vector<int> correlator_term(std::size_t index) const;

  /// "(N, [M_1,...], d)".
  std::string to_string() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  int parties_;
  std::vector<int> settings_;
  int outcomes_;
  std::size_t num_inputs_ = 1;
  std::size_t num_outcomes_ = 1;
  std::size_t num_correlator_terms_ = 1;
  std::vector<std::size_t> input_strides_;
  std::vector<std::size_t> outcome_strides_;
  std::vector<std::size_t> correlator_strides_;
};

/// +1 for outcome index 0, -1 for index 1 (d = 2 only).
inline int outcome_sign(int outcome) { return outcome == 0 ? 1 : -1; }

/// Full conditional probability table of a Bell experiment. Immutable; every
/// instance has passed validation. Signaling tables are representable.
class Behavior {
 public:
  static Behavior uniform(const Scenario& scenario);
  /// `strategy[party][setting]` is the outcome produced.
  static Behavior deterministic(const Scenario& scenario,
                                const std::vector<std::vector<int>>& strategy);

  const Scenario& scenario() const { return scenario_; }
  double prob(std::size_t input, std::size_t outcome) const {
    return table_[input * scenario_.num_outcomes() + outcome];
  }
  std::span<const double> row(std::size_t input) const {
    return {table_.data() + input * scenario_.num_outcomes(), scenario_.num_outcomes()};
  }
  /// Flat table indexed by joint event.
  const std::vector<double>& table() const { return table_; }

 private:
  friend Behavior behavior_from_table(const Scenario&, std::vector<double>);
  Behavior(Scenario scenario, std::vector<double> table)
      : scenario_(std::move(scenario)), table_(std::move(table)) {}

  Scenario scenario_;
  std::vector<double> table_;
};

/// Validates a flat table (indexed by joint event). Entries in [-1e-9, 0) are
/// clamped to 0; anything more negative, any entry above 1 + 1e-9, or any row
/// whose sum is off by more than 1e-9 is rejected.
Behavior behavior_from_table(const Scenario& scenario, std::vector<double> table);
/// Row-per-input variant.
Behavior behavior_from_table(const Scenario& scenario,
                             const std::vector<std::vector<double>>& rows);

/// Values of every correlator <prod_{i in S} A^{(i)}_{x_i}> for a d = 2
/// scenario. The constant (empty) term is fixed at 1.
class CorrelatorForm {
 public:
  explicit CorrelatorForm(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  double get(std::span<const int> term) const;
  void set(std::span<const int> term, double value);
  const std::vector<double>& values() const { return values_; }
  double at(std::size_t index) const { return values_[index]; }

 private:
  Scenario scenario_;
  std::vector<double> values_;
};

/// Lower-order correlators are averaged over the absent parties' settings,
/// which is exact for non-signaling behaviors.
CorrelatorForm correlators_from_behavior(const Behavior& behavior);

/// Inverse map; throws Error(kNegativeProbability) naming the offending
/// (input, outcome) when the correlators do not describe a behavior.
Behavior behavior_from_correlators(const CorrelatorForm& correlators);

struct NoSignalingReport {
  bool no_signaling;
  double worst_violation;
};

/// Checks, for every proper subset of parties, that its marginal does not
/// depend on the remaining parties' settings.
NoSignalingReport is_no_signaling(const Behavior& behavior, double tol = kNoSignalingTol);

struct MarginalResult {
  std::vector<double> probs;
  /// Largest spread of the marginal across the other parties' settings.
  double setting_spread = 0.0;
  bool setting_dependent = false;
};

/// Marginal distribution of `parties` (distinct, any order; the output is
/// indexed by their outcomes in that order) at `settings`, averaged over the
/// other parties' settings. Flags the result if that average was needed.
MarginalResult marginal(const Behavior& behavior, std::span<const int> parties,
                        std::span<const int> settings);

}  // namespace bellcert

#endif  // BELLCERT_SCENARIO_H_
