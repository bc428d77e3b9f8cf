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

#include "bellcert/local_bound.h"

#include <algorithm>
#include <limits>

#include "bellcert/error.h"
#include "bellcert/parallel.h"

namespace bellcert {
namespace {

using Int = __int128;

std::uint64_t saturating_pow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int k = 0; k < exponent; ++k) {
    if (__builtin_mul_overflow(out, base, &out)) return std::numeric_limits<std::uint64_t>::max();
  }
  return out;
}

struct ChunkResult {
  Int best = 0;
  bool any = false;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> listed;
};

}  // namespace

std::uint64_t deterministic_strategy_count(const Scenario& scenario) {
  std::uint64_t total = 1;
  for (int m : scenario.settings()) {
    const std::uint64_t per_party = saturating_pow(scenario.outcomes(), m);
    if (__builtin_mul_overflow(total, per_party, &total)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return total;
}

Dyadic evaluate_strategy(const BellFunctional& functional, const DeterministicStrategy& strategy) {
  const Scenario& s = functional.scenario();
  const Behavior behavior = Behavior::deterministic(s, strategy);  // validates shape
  Dyadic value;
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto settings = s.input_tuple(x);
    std::vector<int> outcomes(s.parties());
    for (int i = 0; i < s.parties(); ++i) outcomes[i] = strategy[i][settings[i]];
    value += functional.coefficient(x, s.outcome_index(outcomes));
  }
  return value;
}

LocalBoundReport local_bound(const BellFunctional& functional, const LocalBoundOptions& options) {
  const Scenario& s = functional.scenario();
  const int n = s.parties();
  const int d = s.outcomes();
  const std::uint64_t total = deterministic_strategy_count(s);
  if (total > options.strategy_cap) {
    throw Error(ErrorCode::kCapExceeded,
                "local bound needs " + std::to_string(total) + " strategies, cap is " +
                    std::to_string(options.strategy_cap));
  }

  const int den = functional.max_log2_den();
  std::vector<std::int64_t> scaled(s.num_events());
  for (std::size_t e = 0; e < scaled.size(); ++e) {
    scaled[e] = functional.coefficients()[e].scaled_numerator(den);
  }
  const Int sign = functional.orientation() == Orientation::kMaximize ? 1 : -1;

  // outcome_table[i][p * M_i + x]: party i's outcome at setting x under its
  // p-th local strategy, setting 0 being the most significant digit.
  std::vector<std::uint64_t> per_party(n);
  std::vector<std::vector<int>> outcome_table(n);
  for (int i = 0; i < n; ++i) {
    const int m = s.settings(i);
    per_party[i] = saturating_pow(d, m);
    outcome_table[i].resize(per_party[i] * m);
    for (std::uint64_t p = 0; p < per_party[i]; ++p) {
      std::uint64_t rest = p;
      for (int x = m - 1; x >= 0; --x) {
        outcome_table[i][p * m + x] = static_cast<int>(rest % d);
        rest /= d;
      }
    }
  }
  std::vector<std::vector<int>> input_tuples(s.num_inputs());
  for (std::size_t x = 0; x < s.num_inputs(); ++x) input_tuples[x] = s.input_tuple(x);

  auto decode = [&](std::uint64_t index, std::vector<std::uint64_t>& local) {
    for (int i = n - 1; i >= 0; --i) {
      local[i] = index % per_party[i];
      index /= per_party[i];
    }
  };
  auto value_of = [&](const std::vector<std::uint64_t>& local) {
    Int value = 0;
    for (std::size_t x = 0; x < s.num_inputs(); ++x) {
      std::size_t a = 0;
      for (int i = 0; i < n; ++i) {
        a += outcome_table[i][local[i] * s.settings(i) + input_tuples[x][i]] * s.outcome_stride(i);
      }
      value += scaled[x * s.num_outcomes() + a];
    }
    return value;
  };

  const std::size_t num_chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 64));
  std::vector<ChunkResult> chunks(num_chunks);
  parallel_chunks(num_chunks, [&](std::size_t c) {
    const std::uint64_t begin = total * c / num_chunks;
    const std::uint64_t end = total * (c + 1) / num_chunks;
    ChunkResult& r = chunks[c];
    std::vector<std::uint64_t> local(n);
    for (std::uint64_t k = begin; k < end; ++k) {
      decode(k, local);
      const Int v = sign * value_of(local);
      if (!r.any || v > r.best) {
        r.any = true;
        r.best = v;
        r.count = 0;
        r.listed.clear();
      }
      if (v == r.best) {
        ++r.count;
        if (r.listed.size() < options.listing_cap) r.listed.push_back(k);
      }
    }
  });

  Int best = 0;
  bool any = false;
  for (const auto& r : chunks) {
    if (r.any && (!any || r.best > best)) {
      best = r.best;
      any = true;
    }
  }
  LocalBoundReport report;
  const Int bound_num = sign * best;
  if (bound_num > std::numeric_limits<std::int64_t>::max() ||
      bound_num < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::kOverflow, "local bound numerator overflows");
  }
  report.bound = Dyadic(static_cast<std::int64_t>(bound_num), den);
  std::vector<std::uint64_t> local(n);
  for (const auto& r : chunks) {
    if (!r.any || r.best != best) continue;
    report.maximizer_count += r.count;
    for (std::uint64_t k : r.listed) {
      if (report.maximizers.size() >= options.listing_cap) break;
      decode(k, local);
      DeterministicStrategy strategy(n);
      for (int i = 0; i < n; ++i) {
        const int m = s.settings(i);
        strategy[i].assign(outcome_table[i].begin() + local[i] * m,
                           outcome_table[i].begin() + (local[i] + 1) * m);
      }
      report.maximizers.push_back(std::move(strategy));
    }
  }
  return report;
}

}  // namespace bellcert
