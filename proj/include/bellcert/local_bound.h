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

#ifndef BELLCERT_LOCAL_BOUND_H_
#define BELLCERT_LOCAL_BOUND_H_

#include <cstdint>
#include <vector>

#include "bellcert/dyadic.h"
#include "bellcert/functional.h"

namespace bellcert {

/// strategy[party][setting] = outcome.
using DeterministicStrategy = std::vector<std::vector<int>>;

struct LocalBoundOptions {
  std::uint64_t strategy_cap = 10'000'000;
  std::size_t listing_cap = 10'000;
};

struct LocalBoundReport {
  Dyadic bound;
  /// Exact, even when `maximizers` is truncated.
  std::uint64_t maximizer_count = 0;
  /// Optimal strategies in enumeration order, at most listing_cap of them.
  std::vector<DeterministicStrategy> maximizers;
};

/// Optimum of the functional (in its orientation) over deterministic local
/// strategies, by exhaustive enumeration in exact arithmetic. Throws
/// Error(kCapExceeded) when prod_i d^{M_i} exceeds the cap.
LocalBoundReport local_bound(const BellFunctional& functional,
                             const LocalBoundOptions& options = {});

/// Number of joint deterministic strategies, saturating at UINT64_MAX.
std::uint64_t deterministic_strategy_count(const Scenario& scenario);

/// Exact value of the functional on a deterministic strategy.
Dyadic evaluate_strategy(const BellFunctional& functional, const DeterministicStrategy& strategy);

}  // namespace bellcert

#endif  // BELLCERT_LOCAL_BOUND_H_
