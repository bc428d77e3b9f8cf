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

#include "bellcert/functional.h"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "bellcert/error.h"

namespace bellcert {

BellFunctional::BellFunctional(Scenario scenario, std::vector<Dyadic> coefficients,
                               Orientation orientation, std::string name)
    : scenario_(std::move(scenario)),
      coefficients_(std::move(coefficients)),
      orientation_(orientation),
      name_(std::move(name)) {
  if (coefficients_.size() != scenario_.num_events()) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficient table does not match scenario");
  }
}

bool BellFunctional::coefficients_equal(const BellFunctional& other) const {
  return scenario_ == other.scenario_ && coefficients_ == other.coefficients_;
}

int BellFunctional::max_log2_den() const {
  int den = 0;
  for (const auto& c : coefficients_) den = std::max(den, c.log2_den());
  return den;
}

double evaluate(const BellFunctional& functional, const Behavior& behavior) {
  if (!(functional.scenario() == behavior.scenario())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "functional scenario " + functional.scenario().to_string() +
                    " does not match behavior scenario " + behavior.scenario().to_string());
  }
  const auto& coefficients = functional.coefficients();
  const auto& table = behavior.table();
  double value = 0.0;
  for (std::size_t e = 0; e < table.size(); ++e) {
    if (!coefficients[e].is_zero()) value += coefficients[e].to_double() * table[e];
  }
  return value;
}

BellFunctional functional_from_correlators(const Scenario& scenario,
                                           std::span<const CorrelatorTerm> terms,
                                           Orientation orientation, std::string name) {
  if (scenario.outcomes() != 2) {
    throw Error(ErrorCode::kUnsupported, "correlator polynomials need two outcomes");
  }
  const int n = scenario.parties();
  std::vector<Dyadic> coefficients(scenario.num_events());
  for (const auto& term : terms) {
    scenario.correlator_index(term.settings);  // validates
    std::uint64_t spread = 1;
    for (int i = 0; i < n; ++i) {
      if (term.settings[i] == -1) spread *= scenario.settings(i);
    }
    if (!std::has_single_bit(spread)) {
      throw Error(ErrorCode::kUnsupported,
                  "lower-order term would need a non-dyadic spread over " + std::to_string(spread) +
                      " inputs");
    }
    const Dyadic weight = term.coefficient * Dyadic::half_power(std::countr_zero(spread));
    for (std::size_t x = 0; x < scenario.num_inputs(); ++x) {
      const auto settings = scenario.input_tuple(x);
      bool extends = true;
      for (int i = 0; i < n && extends; ++i) {
        extends = term.settings[i] == -1 || term.settings[i] == settings[i];
      }
      if (!extends) continue;
      for (std::size_t a = 0; a < scenario.num_outcomes(); ++a) {
        int sign = 1;
        for (int i = 0; i < n; ++i) {
          if (term.settings[i] != -1) {
            sign *= outcome_sign(static_cast<int>(a / scenario.outcome_stride(i)) % 2);
          }
        }
        auto& c = coefficients[x * scenario.num_outcomes() + a];
        c += sign > 0 ? weight : -weight;
      }
    }
  }
  return BellFunctional(scenario, std::move(coefficients), orientation, std::move(name));
}

std::vector<Dyadic> correlator_coefficients(const BellFunctional& functional) {
  const Scenario& s = functional.scenario();
  if (s.outcomes() != 2) {
    throw Error(ErrorCode::kUnsupported, "correlator view needs two outcomes");
  }
  const int n = s.parties();
  std::vector<Dyadic> out(s.num_correlator_terms());
  std::vector<int> term(n);
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto settings = s.input_tuple(x);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Dyadic sum;
      for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
        const Dyadic& c = functional.coefficient(x, a);
        if (c.is_zero()) continue;
        int sign = 1;
        for (int i = 0; i < n; ++i) {
          if ((mask >> i) & 1u) sign *= outcome_sign(static_cast<int>(a / s.outcome_stride(i)) % 2);
        }
        sum += sign > 0 ? c : -c;
      }
      if (sum.is_zero()) continue;
      for (int i = 0; i < n; ++i) term[i] = (mask >> i) & 1u ? settings[i] : -1;
      out[s.correlator_index(term)] += sum * Dyadic::half_power(n);
    }
  }
  return out;
}

namespace {

std::vector<CorrelatorTerm> chsh_terms() {
  return {{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, -1}};
}

}  // namespace

BellFunctional chsh() {
  const auto terms = chsh_terms();
  return functional_from_correlators(Scenario::uniform(2, 2, 2), terms, Orientation::kMaximize,
                                     "chsh");
}

BellFunctional tilted_chsh(double eta) {
  auto terms = chsh_terms();
  terms.push_back({{0, -1}, Dyadic::from_double(eta)});
  std::ostringstream name;
  name.precision(17);
  name << "tilted_chsh(" << eta << ")";
  return functional_from_correlators(Scenario::uniform(2, 2, 2), terms, Orientation::kMaximize,
                                     name.str());
}

BellFunctional chained_modular(int m, int d) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "chained inequality needs M >= 2");
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "chained inequality needs d >= 2");
  const Scenario scenario = Scenario::uniform(2, m, d);
  std::vector<Dyadic> coefficients(scenario.num_events());
  auto mod = [d](int v) { return ((v % d) + d) % d; };
  // `shift` is added to Alice's outcome before taking the residue.
  auto add_bracket = [&](int alice_setting, int bob_setting, bool alice_first, int shift) {
    const int settings[2] = {alice_setting, bob_setting};
    const std::size_t x = scenario.input_index(settings);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const int outcomes[2] = {a, b};
        const int residue = alice_first ? mod(a + shift - b) : mod(b - a - shift);
        coefficients[x * scenario.num_outcomes() + scenario.outcome_index(outcomes)] += residue;
      }
    }
  };
  for (int i = 0; i < m; ++i) {
    add_bracket(i, i, true, 0);                   // [A_i - B_i]
    if (i + 1 < m) add_bracket(i + 1, i, false, 0);  // [B_i - A_{i+1}]
  }
  add_bracket(0, m - 1, false, 1);  // [B_M - (A_1 + 1)]
  return BellFunctional(scenario, std::move(coefficients), Orientation::kMinimize,
                        "chained_modular(" + std::to_string(m) + "," + std::to_string(d) + ")");
}

BellFunctional chained_correlator(int m) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "chained inequality needs M >= 2");
  std::vector<CorrelatorTerm> terms;
  for (int i = 0; i < m; ++i) terms.push_back({{i, i}, 1});
  for (int i = 0; i + 1 < m; ++i) terms.push_back({{i + 1, i}, 1});
  terms.push_back({{0, m - 1}, -1});
  return functional_from_correlators(Scenario::uniform(2, m, 2), terms, Orientation::kMaximize,
                                     "chained_correlator(" + std::to_string(m) + ")");
}

std::vector<CorrelatorTerm> mermin_terms(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "Mermin polynomial needs N >= 2");
  std::map<std::vector<int>, Dyadic> poly;
  for (const auto& t : chsh_terms()) poly[t.settings] = t.coefficient;
  const Dyadic half = Dyadic::half_power(1);
  for (int k = 3; k <= n; ++k) {
    std::map<std::vector<int>, Dyadic> next;
    for (const auto& [settings, c] : poly) {
      auto primed = settings;
      for (int& s : primed) s = 1 - s;
      auto with = [](std::vector<int> v, int last) {
        v.push_back(last);
        return v;
      };
      next[with(settings, 0)] += half * c;
      next[with(settings, 1)] += half * c;
      next[with(primed, 0)] += half * c;
      next[with(primed, 1)] -= half * c;
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    poly = std::move(next);
  }
  if (n % 4 == 1) {
    std::map<std::vector<int>, Dyadic> mapped;
    for (const auto& [settings, c] : poly) {
      auto turned = settings;
      turned[0] = 1 - turned[0];
      mapped[turned] = turned[0] == 1 ? -c : c;
    }
    poly = std::move(mapped);
  }
  std::vector<CorrelatorTerm> terms;
  for (const auto& [settings, c] : poly) terms.push_back({settings, c});
  return terms;
}

BellFunctional mermin(int n) {
  const auto terms = mermin_terms(n);
  return functional_from_correlators(Scenario::uniform(n, 2, 2), terms, Orientation::kMaximize,
                                     "mermin(" + std::to_string(n) + ")");
}

BellFunctional lifted_chsh_c() {
  // (CHSH - 2) (1 + C) / 2 expanded into correlators.
  std::vector<CorrelatorTerm> terms;
  const Dyadic half = Dyadic::half_power(1);
  for (const auto& t : chsh_terms()) {
    terms.push_back({{t.settings[0], t.settings[1], -1}, half * t.coefficient});
    terms.push_back({{t.settings[0], t.settings[1], 0}, half * t.coefficient});
  }
  terms.push_back({{-1, -1, -1}, -1});
  terms.push_back({{-1, -1, 0}, -1});
  return functional_from_correlators(Scenario(3, {2, 2, 1}, 2), terms, Orientation::kMaximize,
                                     "lifted_chsh_c");
}

}  // namespace bellcert
