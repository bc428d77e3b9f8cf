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

#include "bellcert/json_io.h"

#include <gtest/gtest.h>

#include "bellcert/error.h"
#include "support/generators.h"

namespace bellcert {
namespace {

using ::bellcert::testing::Rng;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(JsonIoTest, FunctionalRoundTrip) {
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const Scenario s = testing::random_scenario(rng, 3, 3, 3, 512);
    const BellFunctional f =
        testing::random_functional(rng, s, k % 2 ? Orientation::kMinimize : Orientation::kMaximize);
    const BellFunctional back = functional_from_json(parse_json(functional_to_json(f).dump()));
    EXPECT_TRUE(back.coefficients_equal(f));
    EXPECT_EQ(back.orientation(), f.orientation());
    EXPECT_EQ(back.name(), f.name());
  }
  for (const BellFunctional& f : {chsh(), mermin(4), chained_modular(3, 3), lifted_chsh_c()}) {
    EXPECT_TRUE(functional_from_json(functional_to_json(f)).coefficients_equal(f));
  }
}

TEST(JsonIoTest, FunctionalSchema) {
  const Json doc = functional_to_json(tilted_chsh(0.5));
  EXPECT_EQ(doc["parties"], 2);
  EXPECT_EQ(doc["settings"], Json::array({2, 2}));
  EXPECT_EQ(doc["outcomes"], 2);
  EXPECT_EQ(doc["orientation"], "max");
  for (const auto& term : doc["terms"]) {
    for (const char* key : {"x", "a", "c_num", "c_log2_den"}) EXPECT_TRUE(term.contains(key));
  }
  // Hand-written: <A_1 B_1> only.
  const BellFunctional f = functional_from_json(parse_json(R"({"parties":2,"settings":[1,1],"outcomes":2,
      "orientation":"max","terms":[{"x":[0,0],"a":[0,0],"c_num":1},{"x":[0,0],"a":[1,1],"c_num":1},
      {"x":[0,0],"a":[0,1],"c_num":-1},{"x":[0,0],"a":[1,0],"c_num":-1}]})"));
  EXPECT_EQ(f.name(), "custom");
  EXPECT_DOUBLE_EQ(evaluate(f, Behavior::deterministic(f.scenario(), {{1}, {1}})), 1.0);
}

TEST(JsonIoTest, BehaviorRoundTrip) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const Scenario s = testing::random_scenario(rng, 3, 3, 3, 512);
    const Behavior b = testing::random_behavior(rng, s);
    const Behavior back = behavior_from_json(parse_json(behavior_to_json(b).dump()));
    EXPECT_EQ(back.table(), b.table());
  }
  const Json doc = behavior_to_json(Behavior::uniform(Scenario::uniform(2, 2, 2)));
  EXPECT_TRUE(doc["table"].contains("x=1,0"));
}

TEST(JsonIoTest, RelabelingRoundTrip) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const Scenario s = testing::random_scenario(rng);
    const Relabeling g = testing::random_relabeling(rng, s, true);
    EXPECT_EQ(relabeling_from_json(parse_json(relabeling_to_json(g).dump()), s), g);
  }
  const Json doc = relabeling_to_json(Relabeling::identity(Scenario::uniform(2, 2, 2)));
  EXPECT_TRUE(doc["party_perm"].is_null());
}

TEST(JsonIoTest, ModelRoundTrip) {
  const QuantumModel qubit = testing::canonical_chsh_model();
  const QuantumModel back = model_from_json(parse_json(model_to_json(qubit).dump()));
  EXPECT_EQ(behavior_from_model(back).table(), behavior_from_model(qubit).table());
  const QuantumModel qutrit = chained_fourier_model(2, 3);
  const Behavior expected = behavior_from_model(qutrit);
  const Behavior got = behavior_from_model(model_from_json(parse_json(model_to_json(qutrit).dump())));
  for (std::size_t e = 0; e < expected.table().size(); ++e) EXPECT_NEAR(got.table()[e], expected.table()[e], 1e-15);
}

TEST(JsonIoTest, ReportsCarryAssumptionFlag) {
  const BellFunctional f = chsh();
  const Relabeling t_s = RelabelingBuilder(f.scenario()).shift_all_outcomes(1).build();
  const auto cert = certify_all(f, {t_s});
  const Json c = certificate_to_json(cert);
  EXPECT_EQ(c["assumes_unique_maximizer"], true);
  EXPECT_EQ(c["status"], "conditional");
  EXPECT_EQ(c["generators"].size(), 1u);
  const Json r = report_to_json(certified_report(cert, LocalQuery{0, 0}));
  EXPECT_EQ(r["kind"], "certified");
  EXPECT_EQ(r["bits"], 1.0);
  EXPECT_EQ(r["p_guess"], 0.5);
  EXPECT_EQ(r["assumes_unique_maximizer"], true);
  const Json o = report_to_json(observed_report(Behavior::uniform(f.scenario()), JointQuery{{0, 1}}));
  EXPECT_EQ(o["kind"], "observed");
  EXPECT_EQ(o["bits"], 2.0);
  EXPECT_EQ(o["assumes_unique_maximizer"], false);
}

TEST(JsonIoTest, LocalBoundReport) {
  const Json doc = local_bound_to_json(local_bound(chsh()));
  EXPECT_EQ(doc["bound"], 2.0);
  EXPECT_EQ(doc["maximizer_count"], 8);
  EXPECT_EQ(doc["maximizers"].size(), 8u);
  EXPECT_EQ(doc["maximizers_truncated"], false);
}

TEST(JsonIoTest, RoundSignificant) {
  EXPECT_EQ(round_significant(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(round_significant(0.0), 0.0);
  EXPECT_EQ(round_significant(2.0), 2.0);
}

TEST(JsonIoTest, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_json("{not json"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { read_json_file("/nonexistent/bellcert.json"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { functional_from_json(parse_json(R"({"parties":2})")); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              functional_from_json(parse_json(
                  R"({"parties":1,"settings":[1],"outcomes":2,"orientation":"sideways","terms":[]})"));
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              functional_from_json(
                  parse_json(R"({"parties":1,"settings":[1],"outcomes":2,"orientation":"max","terms":[{"x":"0"}]})"));
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              behavior_from_json(parse_json(R"({"parties":1,"settings":[2],"outcomes":2,"table":{"x=0":[1,0]}})"));
            }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] {
              behavior_from_json(parse_json(R"({"parties":1,"settings":[1],"outcomes":2,"table":{"y=0":[1,0]}})"));
            }),
            ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              model_from_json(parse_json(R"({"parties":1,"settings":[1],"outcomes":2,"state":[1,0,0],
                                             "measurements":[[{"bloch":[0,0,1]}]]})"));
            }),
            ErrorCode::kParse);
}

}  // namespace
}  // namespace bellcert
