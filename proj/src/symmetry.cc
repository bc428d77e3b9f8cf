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

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "bellcert/error.h"
#include "bellcert/parallel.h"

namespace bellcert {
namespace {

constexpr std::size_t kUnlabeled = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxClosureGenerators = 64;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t out = 1;
  for (int k = 2; k <= n; ++k) out = saturating_mul(out, k);
  return out;
}

std::vector<std::vector<int>> all_permutations(int size) {
  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Local relabelings of one party in enumeration order (identity first).
std::vector<PartyRelabeling> local_relabelings(int settings, int outcomes) {
  const auto input_perms = all_permutations(settings);
  const auto output_perms = all_permutations(outcomes);
  std::vector<PartyRelabeling> out;
  std::vector<std::size_t> digits(settings, 0);
  for (const auto& in : input_perms) {
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      PartyRelabeling r;
      r.input_perm = in;
      for (int y = 0; y < settings; ++y) r.output_perms.push_back(output_perms[digits[y]]);
      out.push_back(std::move(r));
      int pos = settings - 1;
      while (pos >= 0 && ++digits[pos] == output_perms.size()) digits[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

std::vector<std::vector<int>> valid_party_perms(const Scenario& s, bool include) {
  if (!include) {
    std::vector<int> id(s.parties());
    std::iota(id.begin(), id.end(), 0);
    return {id};
  }
  std::vector<std::vector<int>> out;
  for (auto& perm : all_permutations(s.parties())) {
    bool ok = true;
    for (int i = 0; i < s.parties() && ok; ++i) ok = s.settings(i) == s.settings(perm[i]);
    if (ok) out.push_back(std::move(perm));
  }
  return out;
}

class OrbitBuilder {
 public:
  explicit OrbitBuilder(std::size_t size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::size_t> local_event_map(const Relabeling& g) {
  const Scenario& s = g.scenario();
  std::vector<std::size_t> out(num_local_events(s));
  for (int i = 0; i < s.parties(); ++i) {
    for (int x = 0; x < s.settings(i); ++x) {
      for (int a = 0; a < s.outcomes(); ++a) {
        const auto [p, y, b] = g.map_local_event(i, x, a);
        out[local_event_index(s, i, x, a)] = local_event_index(s, p, y, b);
      }
    }
  }
  return out;
}

// Breadth-first orbit labelling; the label of an orbit is its smallest event.
std::vector<std::size_t> bfs_orbits(std::size_t size, const std::vector<std::vector<std::size_t>>& maps) {
  std::vector<std::size_t> label(size, kUnlabeled);
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < size; ++start) {
    if (label[start] != kUnlabeled) continue;
    label[start] = start;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (const auto& map : maps) {
        const std::size_t next = map[cur];
        if (label[next] == kUnlabeled) {
          label[next] = start;
          queue.push_back(next);
        }
      }
    }
  }
  return label;
}

}  // namespace

bool is_symmetry(const Relabeling& g, const BellFunctional& functional) {
  if (!(g.scenario() == functional.scenario())) return false;
  const auto& c = functional.coefficients();
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (!(c[g.map_event(e)] == c[e])) return false;
  }
  return true;
}

std::uint64_t relabeling_space_size(const Scenario& scenario, bool include_party_perms) {
  std::uint64_t total = 1;
  const std::uint64_t outcome_perms = factorial(scenario.outcomes());
  for (int m : scenario.settings()) {
    std::uint64_t local = factorial(m);
    for (int x = 0; x < m; ++x) local = saturating_mul(local, outcome_perms);
    total = saturating_mul(total, local);
  }
  if (include_party_perms) {
    total = saturating_mul(total, valid_party_perms(scenario, true).size());
  }
  return total;
}

void for_each_relabeling(const Scenario& scenario, bool include_party_perms,
                         const std::function<bool(const Relabeling&)>& visit) {
  const int n = scenario.parties();
  std::vector<std::vector<PartyRelabeling>> locals(n);
  for (int i = 0; i < n; ++i) locals[i] = local_relabelings(scenario.settings(i), scenario.outcomes());
  for (const auto& pp : valid_party_perms(scenario, include_party_perms)) {
    std::vector<std::size_t> digits(n, 0);
    while (true) {
      std::vector<PartyRelabeling> parties(n);
      for (int i = 0; i < n; ++i) parties[i] = locals[i][digits[i]];
      if (!visit(Relabeling(scenario, std::move(parties), pp))) return;
      int pos = n - 1;
      while (pos >= 0 && ++digits[pos] == locals[pos].size()) digits[pos--] = 0;
      if (pos < 0) break;
    }
  }
}

std::vector<Relabeling> find_symmetries(const BellFunctional& functional,
                                        const SymmetrySearchOptions& options) {
  const Scenario& s = functional.scenario();
  const std::uint64_t space = relabeling_space_size(s, options.include_party_perms);
  if (space > options.cap) {
    throw Error(ErrorCode::kCapExceeded, "symmetry search space " + std::to_string(space) +
                                             " exceeds cap " + std::to_string(options.cap));
  }
  const int n = s.parties();
  const int d = s.outcomes();
  const std::size_t num_outcomes = s.num_outcomes();
  const auto party_perms = valid_party_perms(s, options.include_party_perms);
  std::vector<std::vector<PartyRelabeling>> locals(n);
  for (int i = 0; i < n; ++i) locals[i] = local_relabelings(s.settings(i), d);

  // local_image[i][k][x * d + a] = (y, b) packed as y * d + b.
  std::vector<std::vector<std::vector<int>>> local_image(n);
  for (int i = 0; i < n; ++i) {
    const int m = s.settings(i);
    for (const auto& r : locals[i]) {
      std::vector<int> image(m * d);
      for (int x = 0; x < m; ++x) {
        const int y = r.input_perm[x];
        for (int a = 0; a < d; ++a) image[x * d + a] = y * d + r.output_perms[y][a];
      }
      local_image[i].push_back(std::move(image));
    }
  }
  // Per event, the (x_i * d + a_i) of every party.
  const auto& coefficients = functional.coefficients();
  std::vector<int> event_local(coefficients.size() * n);
  for (std::size_t e = 0; e < coefficients.size(); ++e) {
    const std::size_t x = e / num_outcomes;
    const std::size_t a = e % num_outcomes;
    for (int i = 0; i < n; ++i) {
      const int xi = static_cast<int>(x / s.input_stride(i)) % s.settings(i);
      const int ai = static_cast<int>(a / s.outcome_stride(i)) % d;
      event_local[e * n + i] = xi * d + ai;
    }
  }

  std::uint64_t per_perm = 1;
  for (int i = 0; i < n; ++i) per_perm *= locals[i].size();
  const std::uint64_t total = per_perm * party_perms.size();
  const std::size_t num_chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 256));
  std::vector<std::vector<std::uint64_t>> found(num_chunks);

  parallel_chunks(num_chunks, [&](std::size_t c) {
    const std::uint64_t begin = total * c / num_chunks;
    const std::uint64_t end = total * (c + 1) / num_chunks;
    std::vector<std::size_t> digits(n);
    std::vector<std::size_t> in_stride(n), out_stride(n);
    for (std::uint64_t k = begin; k < end; ++k) {
      if (k == 0) continue;  // identity
      const auto& pp = party_perms[k / per_perm];
      std::uint64_t rest = k % per_perm;
      for (int i = n - 1; i >= 0; --i) {
        digits[i] = rest % locals[i].size();
        rest /= locals[i].size();
      }
      for (int i = 0; i < n; ++i) {
        in_stride[i] = s.input_stride(pp[i]) * num_outcomes;
        out_stride[i] = s.outcome_stride(pp[i]);
      }
      bool ok = true;
      for (std::size_t e = 0; e < coefficients.size() && ok; ++e) {
        std::size_t image = 0;
        for (int i = 0; i < n; ++i) {
          const int packed = local_image[i][digits[i]][event_local[e * n + i]];
          image += (packed / d) * in_stride[i] + (packed % d) * out_stride[i];
        }
        ok = coefficients[image] == coefficients[e];
      }
      if (ok) found[c].push_back(k);
    }
  });

  std::vector<Relabeling> out;
  for (const auto& chunk : found) {
    for (std::uint64_t k : chunk) {
      const auto& pp = party_perms[k / per_perm];
      std::uint64_t rest = k % per_perm;
      std::vector<PartyRelabeling> parties(n);
      for (int i = n - 1; i >= 0; --i) {
        parties[i] = locals[i][rest % locals[i].size()];
        rest /= locals[i].size();
      }
      out.emplace_back(s, std::move(parties), pp);
    }
  }
  return out;
}

std::string query_to_string(const Query& query) {
  std::ostringstream out;
  if (const auto* joint = std::get_if<JointQuery>(&query)) {
    out << "joint:";
    for (std::size_t i = 0; i < joint->settings.size(); ++i) {
      out << (i ? "," : "") << joint->settings[i] + 1;
    }
  } else {
    const auto& local = std::get<LocalQuery>(query);
    out << "local:" << local.party + 1 << ',' << local.setting + 1;
  }
  return out.str();
}

Query parse_query(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kParse, "query must look like joint:1,2 or local:1,1");
  }
  const std::string kind = text.substr(0, colon);
  std::vector<int> values;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 1) {
      throw Error(ErrorCode::kParse, "query indices are positive integers (1-based): " + text);
    }
    values.push_back(v - 1);
  }
  if (values.empty()) throw Error(ErrorCode::kParse, "query has no indices: " + text);
  if (kind == "joint") return JointQuery{values};
  if (kind == "local") {
    if (values.size() != 2) throw Error(ErrorCode::kParse, "local query is local:<party>,<setting>");
    return LocalQuery{values[0], values[1]};
  }
  throw Error(ErrorCode::kParse, "unknown query kind '" + kind + "'");
}

void validate_query(const Scenario& scenario, const Query& query) {
  if (const auto* joint = std::get_if<JointQuery>(&query)) {
    scenario.input_index(joint->settings);  // throws on mismatch
    return;
  }
  const auto& local = std::get<LocalQuery>(query);
  if (local.party < 0 || local.party >= scenario.parties() || local.setting < 0 ||
      local.setting >= scenario.settings(local.party)) {
    throw Error(ErrorCode::kOutOfRange, "query " + query_to_string(query) + " is outside scenario " +
                                            scenario.to_string());
  }
}

std::size_t num_local_events(const Scenario& scenario) {
  std::size_t total = 0;
  for (int m : scenario.settings()) total += static_cast<std::size_t>(m) * scenario.outcomes();
  return total;
}

std::size_t local_event_index(const Scenario& scenario, int party, int setting, int outcome) {
  std::size_t offset = 0;
  for (int i = 0; i < party; ++i) offset += static_cast<std::size_t>(scenario.settings(i)) * scenario.outcomes();
  return offset + static_cast<std::size_t>(setting) * scenario.outcomes() + outcome;
}

double certified_bits(const UniformityCertificate& certificate, const Query& query) {
  const Scenario& s = certificate.scenario;
  validate_query(s, query);
  std::map<std::size_t, std::size_t> class_sizes;
  if (const auto* joint = std::get_if<JointQuery>(&query)) {
    const std::size_t x = s.input_index(joint->settings);
    for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
      ++class_sizes[certificate.joint_orbit.at(x * s.num_outcomes() + a)];
    }
  } else {
    const auto& local = std::get<LocalQuery>(query);
    for (int a = 0; a < s.outcomes(); ++a) {
      ++class_sizes[certificate.local_orbit.at(local_event_index(s, local.party, local.setting, a))];
    }
  }
  std::size_t smallest = std::numeric_limits<std::size_t>::max();
  for (const auto& [label, size] : class_sizes) smallest = std::min(smallest, size);
  return std::log2(static_cast<double>(smallest));
}

namespace {

UniformityCertificate build_certificate(const BellFunctional& functional,
                                        const std::vector<Relabeling>& generators) {
  const Scenario& s = functional.scenario();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (!is_symmetry(generators[k], functional)) {
      throw Error(ErrorCode::kNotASymmetry, "generator " + std::to_string(k) + " " +
                                                generators[k].to_string() +
                                                " is not a symmetry of " + functional.name());
    }
  }
  std::vector<std::vector<std::size_t>> joint_maps;
  std::vector<std::vector<std::size_t>> local_maps;
  for (const auto& g : generators) {
    joint_maps.push_back(g.event_permutation());
    local_maps.push_back(local_event_map(g));
  }

  UniformityCertificate cert{functional.name(), s, {}, generators.size(), {}, {}, {}};
  if (generators.size() > kMaxClosureGenerators) {
    // Keep only generators that merge orbits; the partition is unchanged.
    OrbitBuilder joint(s.num_events());
    OrbitBuilder local(num_local_events(s));
    std::vector<std::vector<std::size_t>> kept_joint, kept_local;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      bool merges = false;
      for (std::size_t e = 0; e < joint_maps[k].size(); ++e) merges |= joint.unite(e, joint_maps[k][e]);
      for (std::size_t e = 0; e < local_maps[k].size(); ++e) merges |= local.unite(e, local_maps[k][e]);
      if (merges) {
        cert.generators.push_back(generators[k]);
        kept_joint.push_back(std::move(joint_maps[k]));
        kept_local.push_back(std::move(local_maps[k]));
      }
    }
    joint_maps = std::move(kept_joint);
    local_maps = std::move(kept_local);
  } else {
    cert.generators = generators;
  }
  cert.joint_orbit = bfs_orbits(s.num_events(), joint_maps);
  cert.local_orbit = bfs_orbits(num_local_events(s), local_maps);
  return cert;
}

}  // namespace

UniformityCertificate certify_uniform(const BellFunctional& functional,
                                      const std::vector<Relabeling>& generators,
                                      const Query& query) {
  validate_query(functional.scenario(), query);
  auto cert = build_certificate(functional, generators);
  cert.certified.emplace_back(query, certified_bits(cert, query));
  return cert;
}

UniformityCertificate certify_all(const BellFunctional& functional,
                                  const std::vector<Relabeling>& generators) {
  auto cert = build_certificate(functional, generators);
  const Scenario& s = functional.scenario();
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const Query q = JointQuery{s.input_tuple(x)};
    cert.certified.emplace_back(q, certified_bits(cert, q));
  }
  for (int i = 0; i < s.parties(); ++i) {
    for (int x = 0; x < s.settings(i); ++x) {
      const Query q = LocalQuery{i, x};
      cert.certified.emplace_back(q, certified_bits(cert, q));
    }
  }
  return cert;
}

std::vector<std::vector<std::size_t>> orbit_classes(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::vector<std::size_t>> by_label;
  for (std::size_t e = 0; e < labels.size(); ++e) by_label[labels[e]].push_back(e);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [label, members] : by_label) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

double max_orbit_deviation(const UniformityCertificate& certificate, const Behavior& behavior) {
  const Scenario& s = certificate.scenario;
  if (!(s == behavior.scenario())) {
    throw Error(ErrorCode::kDimensionMismatch, "certificate and behavior scenarios differ");
  }
  double worst = 0.0;
  auto spread = [&worst](const std::vector<std::size_t>& labels, const std::vector<double>& probs) {
    std::map<std::size_t, std::pair<double, double>> range;
    for (std::size_t e = 0; e < labels.size(); ++e) {
      auto [it, inserted] = range.try_emplace(labels[e], probs[e], probs[e]);
      if (!inserted) {
        it->second.first = std::min(it->second.first, probs[e]);
        it->second.second = std::max(it->second.second, probs[e]);
      }
    }
    for (const auto& [label, r] : range) worst = std::max(worst, r.second - r.first);
  };
  spread(certificate.joint_orbit, behavior.table());
  std::vector<double> local(num_local_events(s));
  for (int i = 0; i < s.parties(); ++i) {
    for (int x = 0; x < s.settings(i); ++x) {
      const int party[1] = {i};
      const int setting[1] = {x};
      const auto m = marginal(behavior, party, setting);
      for (int a = 0; a < s.outcomes(); ++a) local[local_event_index(s, i, x, a)] = m.probs[a];
    }
  }
  spread(certificate.local_orbit, local);
  return worst;
}

}  // namespace bellcert
