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

// Symmetry search and orbit-based uniformity certificates.
//
// If g leaves F invariant and F has a unique maximizer P*, then g.P* also
// maximizes F, hence g.P* = P* and P*(e) = P*(g e) for every event e. All
// events in one orbit of the group generated by the symmetries are therefore
// equiprobable at P*. At a query input x, if every orbit meets the outcomes at
// x in at least s events, no outcome there has probability above 1/s.

#ifndef BELLCERT_SYMMETRY_H_
#define BELLCERT_SYMMETRY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bellcert/functional.h"
#include "bellcert/relabeling.h"
#include "bellcert/scenario.h"

namespace bellcert {

inline constexpr const char* kUniquenessAssumption =
    "valid only if the maximal violation is attained by a unique behavior";

/// Exact: pushforward_functional(g, F) has the same coefficient table as F.
bool is_symmetry(const Relabeling& g, const BellFunctional& functional);

struct SymmetrySearchOptions {
  bool include_party_perms = false;
  std::uint64_t cap = 100'000'000;
};

/// prod_i M_i! (d!)^{M_i}, times N! when party permutations are included
/// (saturating at UINT64_MAX).
std::uint64_t relabeling_space_size(const Scenario& scenario, bool include_party_perms);

/// Visits every relabeling of the scenario, identity first, in a fixed order:
/// party permutations (lexicographic) outermost, then party 0's local
/// relabeling, ..., party N-1's. A local relabeling enumerates the input
/// permutation lexicographically, then each image setting's outcome
/// permutation lexicographically. Returning false from `visit` stops early.
void for_each_relabeling(const Scenario& scenario, bool include_party_perms,
                         const std::function<bool(const Relabeling&)>& visit);

/// Every non-identity symmetry, in for_each_relabeling order. Throws
/// Error(kCapExceeded) when the search space exceeds the cap.
std::vector<Relabeling> find_symmetries(const BellFunctional& functional,
                                        const SymmetrySearchOptions& options = {});

/// Settings of a joint input, one per party.
struct JointQuery {
  std::vector<int> settings;
  friend bool operator==(const JointQuery&, const JointQuery&) = default;
};

/// One setting of one party.
struct LocalQuery {
  int party = 0;
  int setting = 0;
  friend bool operator==(const LocalQuery&, const LocalQuery&) = default;
};

using Query = std::variant<JointQuery, LocalQuery>;

/// 1-based text form, "joint:1,2" or "local:1,2" (party 1, setting 2).
std::string query_to_string(const Query& query);
/// Parses the 1-based text form into 0-based indices. Throws Error(kParse).
Query parse_query(const std::string& text);
/// Throws Error(kOutOfRange) if the query does not fit the scenario.
void validate_query(const Scenario& scenario, const Query& query);

struct UniformityCertificate {
  std::string functional_name;
  Scenario scenario;
  /// Verified generators actually used for the orbit closure.
  std::vector<Relabeling> generators;
  std::size_t supplied_generators = 0;
  /// Orbit label of every joint event (index as in Scenario).
  std::vector<std::size_t> joint_orbit;
  /// Orbit label of every local event; see local_event_index.
  std::vector<std::size_t> local_orbit;
  std::vector<std::pair<Query, double>> certified;
  bool assumes_unique_maximizer = true;
  std::string assumption = kUniquenessAssumption;
};

/// Flat index of local event (party, setting, outcome).
std::size_t local_event_index(const Scenario& scenario, int party, int setting, int outcome);
std::size_t num_local_events(const Scenario& scenario);

/// log2 of the smallest number of same-orbit events among the query's
/// outcomes.
double certified_bits(const UniformityCertificate& certificate, const Query& query);

/// Verifies every generator and computes the orbit partition by breadth-first
/// closure. Throws Error(kNotASymmetry) for a generator that fails
/// is_symmetry.
UniformityCertificate certify_uniform(const BellFunctional& functional,
                                      const std::vector<Relabeling>& generators,
                                      const Query& query);

/// Certificate plus certified bits for every joint input (in input order)
/// followed by every (party, setting).
UniformityCertificate certify_all(const BellFunctional& functional,
                                  const std::vector<Relabeling>& generators);

/// Orbits as lists of event indices, ordered by smallest member.
std::vector<std::vector<std::size_t>> orbit_classes(const std::vector<std::size_t>& labels);

/// Largest gap between the probabilities of two events in one orbit (joint
/// events, and local events through marginals). Zero for a behavior that
/// satisfies every equality the certificate relies on.
double max_orbit_deviation(const UniformityCertificate& certificate, const Behavior& behavior);

}  // namespace bellcert

#endif  // BELLCERT_SYMMETRY_H_
