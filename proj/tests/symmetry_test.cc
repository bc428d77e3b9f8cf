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

#include "bellcert/symmetry.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bellcert/error.h"
#include "bellcert/functional.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace bellcert {
namespace {

namespace oracle = ::bellcert::testing::oracle;
using ::bellcert::testing::Rng;

bool contains(const std::vector<Relabeling>& list, const Relabeling& g) {
  return std::find(list.begin(), list.end(), g) != list.end();
}

std::vector<double> as_doubles(const BellFunctional& f) {
  std::vector<double> out;
  for (const auto& c : f.coefficients()) out.push_back(c.to_double());
  return out;
}

TEST(IsSymmetryTest, WorkedExamples) {
  const BellFunctional f = chsh();
  const Scenario& s = f.scenario();
  EXPECT_TRUE(is_symmetry(RelabelingBuilder(s).shift_all_outcomes(1).build(), f));
  EXPECT_FALSE(is_symmetry(RelabelingBuilder(s).shift_outcomes(0, 0).build(), f));
  const BellFunctional tilted = tilted_chsh(0.5);
  EXPECT_TRUE(is_symmetry(RelabelingBuilder(s).shift_outcomes(0, 1).swap_inputs(1, 0, 1).build(), tilted));
  EXPECT_FALSE(is_symmetry(RelabelingBuilder(s).shift_all_outcomes(1).build(), tilted));
}

TEST(FindSymmetriesTest, ChshMatchesBruteForce) {
  const BellFunctional f = chsh();
  const auto found = find_symmetries(f);
  EXPECT_EQ(found.size(), static_cast<std::size_t>(oracle::symmetry_count_222(as_doubles(f))));
  EXPECT_EQ(found.size(), 7u);
  EXPECT_TRUE(contains(found, RelabelingBuilder(f.scenario()).shift_all_outcomes(1).build()));
  for (const auto& g : found) EXPECT_FALSE(g.is_identity());
  EXPECT_EQ(relabeling_space_size(f.scenario(), false), 64u);
}

TEST(FindSymmetriesTest, GenericCoefficientsHaveNoSymmetry) {
  Rng rng(7);
  const Scenario s = Scenario::uniform(2, 2, 2);
  for (int k = 0; k < 20; ++k) {
    const BellFunctional f = testing::random_functional(rng, s);
    EXPECT_EQ(find_symmetries(f).size(), static_cast<std::size_t>(oracle::symmetry_count_222(as_doubles(f))));
  }
  // Distinct numerators everywhere rule out any coincidence.
  std::vector<Dyadic> coeffs;
  for (int e = 0; e < 16; ++e) coeffs.emplace_back(3 * e + 1);
  const BellFunctional generic(s, coeffs, Orientation::kMaximize, "generic");
  EXPECT_TRUE(find_symmetries(generic).empty());
  EXPECT_EQ(oracle::symmetry_count_222(as_doubles(generic)), 0);
}

TEST(FindSymmetriesTest, ResultsAreSymmetriesInDeterministicOrder) {
  const BellFunctional f = mermin(3);
  const auto a = find_symmetries(f);
  const auto b = find_symmetries(f);
  EXPECT_EQ(a, b);
  for (const auto& g : a) EXPECT_TRUE(is_symmetry(g, f));
}

TEST(FindSymmetriesTest, MerminContainsPerPartySignComposites) {
  // For an even-primed tuple X and party j: flip party j's outcome at X_j,
  // and every other party's outcome at the complementary setting.
  const BellFunctional f = mermin(3);
  const auto found = find_symmetries(f);
  int checked = 0;
  for (int code = 0; code < 8; ++code) {
    const std::vector<int> x = {(code >> 2) & 1, (code >> 1) & 1, code & 1};
    if ((x[0] + x[1] + x[2]) % 2 != 0) continue;
    for (int j = 0; j < 3; ++j) {
      RelabelingBuilder b(f.scenario());
      for (int i = 0; i < 3; ++i) b.shift_outcomes(i, i == j ? x[i] : 1 - x[i]);
      const Relabeling g = b.build();
      EXPECT_TRUE(is_symmetry(g, f)) << g.to_string();
      EXPECT_TRUE(contains(found, g)) << g.to_string();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 12);
}

TEST(FindSymmetriesTest, PartyPermutationsEnlargeTheSearch) {
  const BellFunctional f = chsh();
  const auto with = find_symmetries(f, {.include_party_perms = true});
  EXPECT_GT(with.size(), find_symmetries(f).size());
  EXPECT_EQ(relabeling_space_size(f.scenario(), true), 128u);
  for (const auto& g : with) EXPECT_TRUE(is_symmetry(g, f));
}

TEST(FindSymmetriesTest, CapIsEnforced) {
  try {
    find_symmetries(chsh(), {.cap = 10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(QueryTest, ParsesOneBasedText) {
  EXPECT_EQ(parse_query("joint:1,2"), Query(JointQuery{{0, 1}}));
  EXPECT_EQ(parse_query("local:2,1"), Query(LocalQuery{1, 0}));
  EXPECT_EQ(query_to_string(JointQuery{{0, 1, 1}}), "joint:1,2,2");
  EXPECT_THROW(parse_query("joint:0,1"), Error);
  EXPECT_THROW(parse_query("local:1"), Error);
  EXPECT_THROW(parse_query("global:1,1"), Error);
  EXPECT_THROW(validate_query(chsh().scenario(), LocalQuery{2, 0}), Error);
}

TEST(CertifyTest, ChshGlobalFlipCertifiesOneLocalBit) {
  const BellFunctional f = chsh();
  const std::vector<Relabeling> gens = {RelabelingBuilder(f.scenario()).shift_all_outcomes(1).build()};
  const auto local = certify_uniform(f, gens, LocalQuery{0, 0});
  EXPECT_DOUBLE_EQ(certified_bits(local, LocalQuery{0, 0}), 1.0);
  EXPECT_TRUE(local.assumes_unique_maximizer);
  EXPECT_EQ(local.assumption, kUniquenessAssumption);
  // Joint (A1,B1): orbits {++,--} and {+-,-+}.
  EXPECT_DOUBLE_EQ(certified_bits(local, JointQuery{{0, 0}}), 1.0);
}

TEST(CertifyTest, ChainedGlobalTransformationCertifiesTwoJointBits) {
  const BellFunctional f = chained_correlator(3);
  const Scenario& s = f.scenario();
  const Relabeling t_s = RelabelingBuilder(s).shift_all_outcomes(1).build();
  const Relabeling t = RelabelingBuilder(s).swap_inputs(0, 1, 2).shift_outcomes(0, 0).swap_inputs(1, 0, 2).build();
  ASSERT_TRUE(is_symmetry(t_s, f));
  ASSERT_TRUE(is_symmetry(t, f));
  const auto cert = certify_uniform(f, {t_s, t}, JointQuery{{0, 1}});
  EXPECT_DOUBLE_EQ(certified_bits(cert, JointQuery{{0, 1}}), 2.0);
  const auto all = certify_all(f, {t_s, t});
  for (const auto& x : {std::vector<int>{0, 0}, {1, 1}, {2, 2}, {1, 0}, {2, 1}, {0, 2}}) {
    EXPECT_LT(certified_bits(all, JointQuery{x}), 2.0);
  }
}

TEST(CertifyTest, MerminOddCertifiesFullJointRandomness) {
  const BellFunctional f = mermin(3);
  const auto cert = certify_all(f, find_symmetries(f));
  for (const auto& [query, bits] : cert.certified) {
    const auto* joint = std::get_if<JointQuery>(&query);
    if (joint == nullptr) continue;
    const int primes = static_cast<int>(std::count(joint->settings.begin(), joint->settings.end(), 1));
    if (primes % 2 == 0) {
      EXPECT_DOUBLE_EQ(bits, 3.0) << query_to_string(query);
    }
  }
  EXPECT_DOUBLE_EQ(certified_bits(cert, JointQuery{{0, 0, 0}}), 3.0);
}

TEST(CertifyTest, MerminFiveWithoutOptimizer) {
  const BellFunctional f = mermin(5);
  const auto cert = certify_all(f, find_symmetries(f));
  int even = 0;
  for (const auto& [query, bits] : cert.certified) {
    const auto* joint = std::get_if<JointQuery>(&query);
    if (joint == nullptr) continue;
    if (std::count(joint->settings.begin(), joint->settings.end(), 1) % 2 == 0) {
      EXPECT_DOUBLE_EQ(bits, 5.0) << query_to_string(query);
      ++even;
    }
  }
  EXPECT_EQ(even, 16);
}

TEST(CertifyTest, MerminEvenCapsAtNMinusOne) {
  const BellFunctional f = mermin(4);
  const auto cert = certify_all(f, find_symmetries(f));
  double best = 0.0;
  for (const auto& [query, bits] : cert.certified) {
    if (std::holds_alternative<JointQuery>(query)) best = std::max(best, bits);
  }
  EXPECT_DOUBLE_EQ(best, 3.0);
}

TEST(CertifyTest, ChainedShiftCertifiesLogDLocalBits) {
  for (const auto& [m, d] : {std::pair{2, 3}, {3, 2}, {4, 2}, {3, 3}}) {
    const BellFunctional f = chained_modular(m, d);
    const Relabeling shift = RelabelingBuilder(f.scenario()).shift_all_outcomes(1).build();
    ASSERT_TRUE(is_symmetry(shift, f));
    const auto cert = certify_all(f, {shift});
    for (const auto& [query, bits] : cert.certified) {
      if (std::holds_alternative<LocalQuery>(query)) {
        EXPECT_NEAR(bits, std::log2(d), 1e-15);
      }
    }
  }
}

TEST(CertifyTest, ChshFullGroupGivesOneBitEverywhere) {
  const BellFunctional f = chsh();
  const auto cert = certify_all(f, find_symmetries(f));
  EXPECT_EQ(cert.certified.size(), 4u + 4u);
  for (const auto& [query, bits] : cert.certified) EXPECT_DOUBLE_EQ(bits, 1.0) << query_to_string(query);
}

TEST(CertifyTest, TiltedCertifiesOnlyA2) {
  const BellFunctional f = tilted_chsh(0.5);
  const auto cert = certify_all(f, find_symmetries(f));
  EXPECT_DOUBLE_EQ(certified_bits(cert, LocalQuery{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(certified_bits(cert, LocalQuery{0, 1}), 1.0);
}

TEST(CertifyTest, EmptyGeneratorsCertifyNothing) {
  const auto cert = certify_all(chsh(), {});
  for (const auto& [query, bits] : cert.certified) EXPECT_EQ(bits, 0.0);
}

TEST(CertifyTest, BitsNeverExceedNLogD) {
  for (const BellFunctional& f : {chsh(), mermin(3), chained_modular(2, 3), lifted_chsh_c()}) {
    const Scenario& s = f.scenario();
    const auto cert = certify_all(f, find_symmetries(f, {.include_party_perms = true}));
    for (const auto& [query, bits] : cert.certified) {
      EXPECT_LE(bits, s.parties() * std::log2(s.outcomes()) + 1e-12);
    }
  }
}

TEST(CertifyTest, RejectsForeignGenerators) {
  const BellFunctional f = chsh();
  const Relabeling not_sym = RelabelingBuilder(f.scenario()).shift_outcomes(0, 0).build();
  try {
    certify_all(f, {not_sym});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotASymmetry);
  }
}

TEST(CertifyTest, ManyGeneratorsAreReducedWithoutChangingOrbits) {
  const BellFunctional f = mermin(4);
  const auto gens = find_symmetries(f);
  ASSERT_GT(gens.size(), 64u);
  const auto cert = certify_all(f, gens);
  EXPECT_EQ(cert.supplied_generators, gens.size());
  EXPECT_LT(cert.generators.size(), gens.size());
  const auto reduced = certify_all(f, cert.generators);
  EXPECT_EQ(orbit_classes(reduced.joint_orbit), orbit_classes(cert.joint_orbit));
  EXPECT_EQ(orbit_classes(reduced.local_orbit), orbit_classes(cert.local_orbit));
}

TEST(OrbitDeviationTest, UniformBehaviorSatisfiesEveryConstraint) {
  const BellFunctional f = mermin(3);
  const auto cert = certify_all(f, find_symmetries(f));
  EXPECT_EQ(max_orbit_deviation(cert, Behavior::uniform(f.scenario())), 0.0);
  const Behavior det = Behavior::deterministic(f.scenario(), {{0, 0}, {0, 0}, {0, 0}});
  EXPECT_DOUBLE_EQ(max_orbit_deviation(cert, det), 1.0);
}

}  // namespace
}  // namespace bellcert
