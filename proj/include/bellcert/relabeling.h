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

// Relabelings of a Bell scenario: permutations of each party's settings, of
// the outcomes of every setting, and optionally of the parties themselves.
//
// A relabeling g maps the local event (x, a) of party i to
//   (input_perm[x], output_perms[input_perm[x]][a])
// and then moves it to party slot party_perm[i]. Output permutations are
// indexed by the *image* setting. Composition compose(g, h) applies h first.

#ifndef BELLCERT_RELABELING_H_
#define BELLCERT_RELABELING_H_

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bellcert/functional.h"
#include "bellcert/local_bound.h"
#include "bellcert/scenario.h"

namespace bellcert {

struct PartyRelabeling {
  std::vector<int> input_perm;
  std::vector<std::vector<int>> output_perms;

  friend bool operator==(const PartyRelabeling&, const PartyRelabeling&) = default;
};

class Relabeling {
 public:
  /// Throws Error(kInvalidArgument) if any permutation is not a bijection on
  /// its domain, or a party permutation moves a party to a slot with a
  /// different setting count.
  Relabeling(Scenario scenario, std::vector<PartyRelabeling> parties,
             std::optional<std::vector<int>> party_perm = std::nullopt);

  static Relabeling identity(const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<PartyRelabeling>& parties() const { return parties_; }
  const std::optional<std::vector<int>>& party_perm() const { return party_perm_; }
  /// Slot the given party is moved to.
  int target_party(int party) const { return party_perm_ ? (*party_perm_)[party] : party; }

  /// Image of a joint event index.
  std::size_t map_event(std::size_t event) const;
  /// Image of every joint event, indexed by source event.
  std::vector<std::size_t> event_permutation() const;
  /// Image (party, setting, outcome) of a local event.
  std::tuple<int, int, int> map_local_event(int party, int setting, int outcome) const;

  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const Relabeling& a, const Relabeling& b);

 private:
  Scenario scenario_;
  std::vector<PartyRelabeling> parties_;
  std::optional<std::vector<int>> party_perm_;
};

/// g o h: first h, then g.
Relabeling compose(const Relabeling& g, const Relabeling& h);
Relabeling inverse(const Relabeling& g);

/// (g.P)(g e) = P(e).
Behavior apply_to_behavior(const Relabeling& g, const Behavior& behavior);

/// (g.F)(g e) = F(e), so evaluate(g.F, P) = evaluate(F, g^-1 . P).
BellFunctional pushforward_functional(const Relabeling& g, const BellFunctional& functional);

/// Image of a deterministic strategy; matches apply_to_behavior on the
/// corresponding deterministic behavior.
DeterministicStrategy apply_to_strategy(const Relabeling& g, const DeterministicStrategy& strategy);

/// Incremental construction of relabelings, starting from the identity.
class RelabelingBuilder {
 public:
  explicit RelabelingBuilder(Scenario scenario);

  RelabelingBuilder& input_perm(int party, std::vector<int> perm);
  RelabelingBuilder& swap_inputs(int party, int x, int y);
  /// Outcome permutation attached to the image setting `image_setting`.
  RelabelingBuilder& output_perm(int party, int image_setting, std::vector<int> perm);
  /// a -> a + shift (mod d) at `image_setting`. For d = 2 and shift 1 this is
  /// the sign flip a -> -a.
  RelabelingBuilder& shift_outcomes(int party, int image_setting, int shift = 1);
  /// Shift applied at every setting of every party.
  RelabelingBuilder& shift_all_outcomes(int shift = 1);
  RelabelingBuilder& party_perm(std::vector<int> perm);

  Relabeling build() const;

 private:
  Scenario scenario_;
  std::vector<PartyRelabeling> parties_;
  std::optional<std::vector<int>> party_perm_;
};

}  // namespace bellcert

#endif  // BELLCERT_RELABELING_H_
