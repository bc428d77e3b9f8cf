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

#include <numeric>
#include <sstream>

#include "bellcert/error.h"

namespace bellcert {
namespace {

bool is_permutation_of_range(const std::vector<int>& perm, int size) {
  if (static_cast<int>(perm.size()) != size) return false;
  std::vector<bool> seen(size, false);
  for (int v : perm) {
    if (v < 0 || v >= size || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<int> iota_vector(int size) {
  std::vector<int> v(size);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> invert(const std::vector<int>& perm) {
  std::vector<int> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = static_cast<int>(i);
  return out;
}

void print_list(std::ostream& out, const std::vector<int>& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
}

}  // namespace

Relabeling::Relabeling(Scenario scenario, std::vector<PartyRelabeling> parties,
                       std::optional<std::vector<int>> party_perm)
    : scenario_(std::move(scenario)), parties_(std::move(parties)), party_perm_(std::move(party_perm)) {
  const int n = scenario_.parties();
  const int d = scenario_.outcomes();
  if (static_cast<int>(parties_.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "relabeling needs one entry per party");
  }
  for (int i = 0; i < n; ++i) {
    const int m = scenario_.settings(i);
    if (!is_permutation_of_range(parties_[i].input_perm, m)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid input permutation for party " + std::to_string(i));
    }
    if (static_cast<int>(parties_[i].output_perms.size()) != m) {
      throw Error(ErrorCode::kInvalidArgument, "need one output permutation per setting");
    }
    for (const auto& perm : parties_[i].output_perms) {
      if (!is_permutation_of_range(perm, d)) {
        throw Error(ErrorCode::kInvalidArgument, "invalid output permutation for party " + std::to_string(i));
      }
    }
  }
  if (party_perm_) {
    if (!is_permutation_of_range(*party_perm_, n)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid party permutation");
    }
    for (int i = 0; i < n; ++i) {
      if (scenario_.settings(i) != scenario_.settings((*party_perm_)[i])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "party permutation must preserve setting counts");
      }
    }
    if (*party_perm_ == iota_vector(n)) party_perm_.reset();
  }
}

Relabeling Relabeling::identity(const Scenario& scenario) {
  return RelabelingBuilder(scenario).build();
}

std::size_t Relabeling::map_event(std::size_t event) const {
  const std::size_t outcomes = scenario_.num_outcomes();
  std::size_t x = event / outcomes;
  std::size_t a = event % outcomes;
  std::size_t image_x = 0;
  std::size_t image_a = 0;
  const int d = scenario_.outcomes();
  for (int i = 0; i < scenario_.parties(); ++i) {
    const int xi = static_cast<int>(x / scenario_.input_stride(i)) % scenario_.settings(i);
    const int ai = static_cast<int>(a / scenario_.outcome_stride(i)) % d;
    const int yi = parties_[i].input_perm[xi];
    const int bi = parties_[i].output_perms[yi][ai];
    const int slot = target_party(i);
    image_x += yi * scenario_.input_stride(slot);
    image_a += bi * scenario_.outcome_stride(slot);
  }
  return image_x * outcomes + image_a;
}

std::vector<std::size_t> Relabeling::event_permutation() const {
  std::vector<std::size_t> out(scenario_.num_events());
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = map_event(e);
  return out;
}

std::tuple<int, int, int> Relabeling::map_local_event(int party, int setting, int outcome) const {
  const int y = parties_.at(party).input_perm.at(setting);
  return {target_party(party), y, parties_[party].output_perms[y].at(outcome)};
}

bool Relabeling::is_identity() const { return *this == identity(scenario_); }

std::string Relabeling::to_string() const {
  std::ostringstream out;
  out << '{';
  if (party_perm_) {
    out << "party_perm=";
    print_list(out, *party_perm_);
    out << ' ';
  }
  for (int i = 0; i < scenario_.parties(); ++i) {
    out << (i ? " | " : "") << "p" << i << ": in=";
    print_list(out, parties_[i].input_perm);
    out << " out=";
    for (const auto& perm : parties_[i].output_perms) print_list(out, perm);
  }
  out << '}';
  return out.str();
}

bool operator==(const Relabeling& a, const Relabeling& b) {
  return a.scenario_ == b.scenario_ && a.parties_ == b.parties_ && a.party_perm_ == b.party_perm_;
}

Relabeling compose(const Relabeling& g, const Relabeling& h) {
  if (!(g.scenario() == h.scenario())) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot compose relabelings of different scenarios");
  }
  const Scenario& s = g.scenario();
  const int n = s.parties();
  std::vector<PartyRelabeling> parties(n);
  std::vector<int> party_perm(n);
  for (int i = 0; i < n; ++i) {
    const int j = h.target_party(i);
    party_perm[i] = g.target_party(j);
    const auto& hp = h.parties()[i];
    const auto& gp = g.parties()[j];
    const int m = s.settings(i);
    parties[i].input_perm.resize(m);
    parties[i].output_perms.resize(m);
    for (int x = 0; x < m; ++x) {
      const int mid = hp.input_perm[x];
      const int image = gp.input_perm[mid];
      parties[i].input_perm[x] = image;
      auto& out = parties[i].output_perms[image];
      out.resize(s.outcomes());
      for (int a = 0; a < s.outcomes(); ++a) out[a] = gp.output_perms[image][hp.output_perms[mid][a]];
    }
  }
  return Relabeling(s, std::move(parties), std::move(party_perm));
}

Relabeling inverse(const Relabeling& g) {
  const Scenario& s = g.scenario();
  const int n = s.parties();
  std::vector<PartyRelabeling> parties(n);
  std::vector<int> party_perm(n);
  for (int i = 0; i < n; ++i) {
    const int j = g.target_party(i);
    party_perm[j] = i;
    const auto& gp = g.parties()[i];
    auto& inv = parties[j];
    inv.input_perm = invert(gp.input_perm);
    inv.output_perms.resize(s.settings(i));
    // g sends (x, a) to (y, sigma_y(a)); the inverse sends (y, b) to
    // (x, sigma_y^-1(b)) with its output permutation stored at image x.
    for (int x = 0; x < s.settings(i); ++x) {
      inv.output_perms[x] = invert(gp.output_perms[gp.input_perm[x]]);
    }
  }
  return Relabeling(s, std::move(parties), std::move(party_perm));
}

Behavior apply_to_behavior(const Relabeling& g, const Behavior& behavior) {
  if (!(g.scenario() == behavior.scenario())) {
    throw Error(ErrorCode::kDimensionMismatch, "relabeling and behavior scenarios differ");
  }
  const auto& table = behavior.table();
  std::vector<double> out(table.size());
  for (std::size_t e = 0; e < table.size(); ++e) out[g.map_event(e)] = table[e];
  return behavior_from_table(behavior.scenario(), std::move(out));
}

BellFunctional pushforward_functional(const Relabeling& g, const BellFunctional& functional) {
  if (!(g.scenario() == functional.scenario())) {
    throw Error(ErrorCode::kDimensionMismatch, "relabeling and functional scenarios differ");
  }
  const auto& c = functional.coefficients();
  std::vector<Dyadic> out(c.size());
  for (std::size_t e = 0; e < c.size(); ++e) out[g.map_event(e)] = c[e];
  return BellFunctional(functional.scenario(), std::move(out), functional.orientation(),
                        functional.name());
}

DeterministicStrategy apply_to_strategy(const Relabeling& g, const DeterministicStrategy& strategy) {
  const Scenario& s = g.scenario();
  if (static_cast<int>(strategy.size()) != s.parties()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy needs one entry per party");
  }
  DeterministicStrategy out(s.parties());
  for (int i = 0; i < s.parties(); ++i) {
    if (static_cast<int>(strategy[i].size()) != s.settings(i)) {
      throw Error(ErrorCode::kDimensionMismatch, "strategy needs one outcome per setting");
    }
    out[g.target_party(i)].resize(s.settings(i));
  }
  for (int i = 0; i < s.parties(); ++i) {
    for (int x = 0; x < s.settings(i); ++x) {
      const auto [slot, y, b] = g.map_local_event(i, x, strategy[i][x]);
      out[slot][y] = b;
    }
  }
  return out;
}

RelabelingBuilder::RelabelingBuilder(Scenario scenario) : scenario_(std::move(scenario)) {
  for (int i = 0; i < scenario_.parties(); ++i) {
    const int m = scenario_.settings(i);
    parties_.push_back({iota_vector(m), std::vector<std::vector<int>>(m, iota_vector(scenario_.outcomes()))});
  }
}

RelabelingBuilder& RelabelingBuilder::input_perm(int party, std::vector<int> perm) {
  parties_.at(party).input_perm = std::move(perm);
  return *this;
}

RelabelingBuilder& RelabelingBuilder::swap_inputs(int party, int x, int y) {
  auto& perm = parties_.at(party).input_perm;
  std::swap(perm.at(x), perm.at(y));
  return *this;
}

RelabelingBuilder& RelabelingBuilder::output_perm(int party, int image_setting, std::vector<int> perm) {
  parties_.at(party).output_perms.at(image_setting) = std::move(perm);
  return *this;
}

RelabelingBuilder& RelabelingBuilder::shift_outcomes(int party, int image_setting, int shift) {
  const int d = scenario_.outcomes();
  auto& perm = parties_.at(party).output_perms.at(image_setting);
  for (int& v : perm) v = ((v + shift) % d + d) % d;
  return *this;
}

RelabelingBuilder& RelabelingBuilder::shift_all_outcomes(int shift) {
  for (int i = 0; i < scenario_.parties(); ++i) {
    for (int x = 0; x < scenario_.settings(i); ++x) shift_outcomes(i, x, shift);
  }
  return *this;
}

RelabelingBuilder& RelabelingBuilder::party_perm(std::vector<int> perm) {
  party_perm_ = std::move(perm);
  return *this;
}

Relabeling RelabelingBuilder::build() const { return Relabeling(scenario_, parties_, party_perm_); }

}  // namespace bellcert
