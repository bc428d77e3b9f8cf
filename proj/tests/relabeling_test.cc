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

#include "bellcert/relabeling.h"

#include <gtest/gtest.h>

#include <numeric>

#include "bellcert/error.h"
#include "bellcert/quantum.h"
#include "bellcert/seesaw.h"
#include "support/generators.h"

namespace bellcert {
namespace {

using ::bellcert::testing::Rng;

Relabeling global_flip(const Scenario& s) { return RelabelingBuilder(s).shift_all_outcomes(1).build(); }

TEST(RelabelingTest, IdentityLeavesEverythingAlone) {
  const Scenario s(3, {2, 3, 2}, 3);
  const Relabeling id = Relabeling::identity(s);
  EXPECT_TRUE(id.is_identity());
  Rng rng(1);
  const Behavior b = testing::random_behavior(rng, s);
  EXPECT_EQ(apply_to_behavior(id, b).table(), b.table());
  const BellFunctional f = testing::random_functional(rng, s);
  EXPECT_TRUE(pushforward_functional(id, f).coefficients_equal(f));
  const auto perm = id.event_permutation();
  for (std::size_t e = 0; e < perm.size(); ++e) EXPECT_EQ(perm[e], e);
}

TEST(RelabelingTest, UniformBehaviorIsFixed) {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const Scenario s = testing::random_scenario(rng);
    const Behavior u = Behavior::uniform(s);
    EXPECT_EQ(apply_to_behavior(testing::random_relabeling(rng, s, true), u).table(), u.table());
  }
}

TEST(RelabelingTest, GlobalFlipFixesChshAndItsOptimum) {
  const BellFunctional f = chsh();
  const Relabeling t_s = global_flip(f.scenario());
  EXPECT_TRUE(pushforward_functional(t_s, f).coefficients_equal(f));
  const auto opt = optimize_violation(f, {.restarts = 4, .seed = 1});
  const Behavior image = apply_to_behavior(t_s, opt.behavior);
  for (std::size_t e = 0; e < image.table().size(); ++e) {
    EXPECT_NEAR(image.table()[e], opt.behavior.table()[e], 1e-8);
  }
}

TEST(RelabelingTest, InverseUndoesPushforward) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const Scenario s = testing::random_scenario(rng);
    const Relabeling g = testing::random_relabeling(rng, s, true);
    const BellFunctional f = testing::random_functional(rng, s);
    EXPECT_TRUE(pushforward_functional(inverse(g), pushforward_functional(g, f)).coefficients_equal(f));
    EXPECT_TRUE(compose(g, inverse(g)).is_identity());
  }
}

TEST(RelabelingTest, MapsEventsThroughImageSettings) {
  const Scenario s = Scenario::uniform(2, 2, 2);
  // Swap Alice's inputs, then flip her outcome at image setting 0.
  const Relabeling g = RelabelingBuilder(s).swap_inputs(0, 0, 1).shift_outcomes(0, 0).build();
  const auto [party, y, b] = g.map_local_event(0, 1, 0);
  EXPECT_EQ(party, 0);
  EXPECT_EQ(y, 0);
  EXPECT_EQ(b, 1);
  const auto [party2, y2, b2] = g.map_local_event(0, 0, 0);
  EXPECT_EQ(y2, 1);
  EXPECT_EQ(b2, 0);
  (void)party2;
  // Event (x=(1,0), a=(0,1)) goes to (x=(0,0), a=(1,1)).
  EXPECT_EQ(g.map_event(2 * 4 + 1), 0 * 4 + 3u);
}

TEST(RelabelingTest, PartyPermutationMovesSlots) {
  const Scenario s = Scenario::uniform(3, 2, 2);
  const Relabeling g = RelabelingBuilder(s).party_perm({1, 2, 0}).build();
  const Behavior det = Behavior::deterministic(s, {{0, 0}, {1, 1}, {0, 1}});
  const Behavior image = apply_to_behavior(g, det);
  // Party 0's strategy lands in slot 1, party 1's in slot 2, party 2's in slot 0.
  EXPECT_EQ(image.table(), Behavior::deterministic(s, {{0, 1}, {0, 0}, {1, 1}}).table());
  EXPECT_EQ(apply_to_strategy(g, {{0, 0}, {1, 1}, {0, 1}}), (DeterministicStrategy{{0, 1}, {0, 0}, {1, 1}}));
}

TEST(RelabelingTest, ValidationErrors) {
  const Scenario s(2, {2, 3}, 2);
  auto expect_invalid = [](const std::function<void()>& f) {
    try {
      f();
      ADD_FAILURE() << "expected invalid_argument";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  };
  expect_invalid([&] { RelabelingBuilder(s).input_perm(0, {0, 0}).build(); });
  expect_invalid([&] { RelabelingBuilder(s).output_perm(1, 2, {1, 1}).build(); });
  expect_invalid([&] { RelabelingBuilder(s).party_perm({1, 0}).build(); });
  expect_invalid([&] { Relabeling(s, {}); });
}

TEST(RelabelingTest, IdentityPartyPermutationIsDropped) {
  const Scenario s = Scenario::uniform(2, 2, 2);
  const Relabeling g = RelabelingBuilder(s).party_perm({0, 1}).build();
  EXPECT_FALSE(g.party_perm().has_value());
  EXPECT_TRUE(g.is_identity());
}

TEST(RelabelingTest, ToStringIsStable) {
  const Scenario s = Scenario::uniform(2, 2, 2);
  const Relabeling g = RelabelingBuilder(s).shift_outcomes(0, 1).swap_inputs(1, 0, 1).build();
  EXPECT_EQ(g.to_string(), "{p0: in=[0,1] out=[0,1][1,0] | p1: in=[1,0] out=[0,1][0,1]}");
}

}  // namespace
}  // namespace bellcert
