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

// JSON documents for the library types. All indices inside documents are
// 0-based; only the query strings ("joint:1,2") are 1-based. Readers throw
// Error(kParse) on malformed input and the usual validation errors on
// well-formed but invalid content.
//
//   Behavior:   {"parties", "settings", "outcomes",
//                "table": {"x=0,1": [p_0, ..., p_{d^N-1}], ...}}
//   Functional: {"name", "parties", "settings", "outcomes",
//                "orientation": "max"|"min",
//                "terms": [{"x": [...], "a": [...], "c_num", "c_log2_den"}]}
//   Relabeling: {"party_perm": [...]|null,
//                "parties": [{"input_perm": [...], "output_perms": [[...]]}]}
//   Model:      {"parties", "settings", "outcomes", "state": [re, im, ...],
//                "measurements": [[{"bloch": [x, y, z]} |
//                                  {"projectors": [[re, im, ...], ...]}]]}

#ifndef BELLCERT_JSON_IO_H_
#define BELLCERT_JSON_IO_H_

#include <string>

#include "bellcert/functional.h"
#include "bellcert/local_bound.h"
#include "bellcert/quantum.h"
#include "bellcert/randomness.h"
#include "bellcert/relabeling.h"
#include "bellcert/scenario.h"
#include "bellcert/seesaw.h"
#include "bellcert/symmetry.h"
#include "json.hpp"

namespace bellcert {

using Json = nlohmann::ordered_json;

Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& doc);

Json behavior_to_json(const Behavior& behavior);
Behavior behavior_from_json(const Json& doc);

Json functional_to_json(const BellFunctional& functional);
BellFunctional functional_from_json(const Json& doc);

Json relabeling_to_json(const Relabeling& relabeling);
Relabeling relabeling_from_json(const Json& doc, const Scenario& scenario);

Json model_to_json(const QuantumModel& model);
QuantumModel model_from_json(const Json& doc);

Json certificate_to_json(const UniformityCertificate& certificate);
Json report_to_json(const RandomnessReport& report);
Json local_bound_to_json(const LocalBoundReport& report);
Json optimization_to_json(const OptimizationResult& result);

/// Rounds to 12 significant digits (used for reported entropies).
double round_significant(double value, int digits = 12);

/// Parses text, mapping parser failures to Error(kParse).
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace bellcert

#endif  // BELLCERT_JSON_IO_H_
