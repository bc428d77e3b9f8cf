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

#include "demo.h"

#include <algorithm>
#include <cmath>

#include "bellcert/error.h"

namespace bellcert::cli {
namespace {

// Slack allowed between certified bits and bits observed at an optimizer.
constexpr double kCrossCheckTol = 2e-4;

Json functional_summary(const BellFunctional& f) {
  Json out;
  out["name"] = f.name();
  out["scenario"] = scenario_to_json(f.scenario());
  out["orientation"] = f.orientation() == Orientation::kMaximize ? "max" : "min";
  return out;
}

Json symmetry_summary(const std::vector<Relabeling>& generators) {
  Json out;
  out["count"] = generators.size();
  Json list = Json::array();
  for (const auto& g : generators) list.push_back(g.to_string());
  out["relabelings"] = std::move(list);
  return out;
}

Json bits_list(const UniformityCertificate& cert, bool joint) {
  Json out = Json::array();
  for (const auto& [query, bits] : cert.certified) {
    if (std::holds_alternative<JointQuery>(query) != joint) continue;
    out.push_back({{"query", query_to_string(query)}, {"bits", round_significant(bits)}});
  }
  return out;
}

// Orbit-equality deviation plus certified-vs-observed bits for every query
// the certificate covers.
Json cross_check(const UniformityCertificate& cert, const Behavior& behavior) {
  Json out;
  const double deviation = max_orbit_deviation(cert, behavior);
  out["max_orbit_deviation"] = deviation;
  out["orbit_constraints_hold"] = deviation <= kCrossCheckTol;
  Json queries = Json::array();
  bool all_ok = true;
  for (const auto& [query, bits] : cert.certified) {
    const double observed = observed_report(behavior, query).min_entropy_bits;
    const bool ok = bits <= observed + kCrossCheckTol;
    all_ok = all_ok && ok;
    queries.push_back({{"query", query_to_string(query)},
                       {"certified", round_significant(bits)},
                       {"observed", round_significant(observed)}});
  }
  out["queries"] = std::move(queries);
  out["certified_le_observed"] = all_ok;
  return out;
}

Json optimization_summary(const OptimizationResult& r) {
  Json out;
  out["value"] = r.value;
  out["label"] = "best found";
  out["converged"] = r.converged;
  out["seed"] = r.seed;
  out["best_restart"] = r.best_restart;
  out["restart_values"] = r.restart_values;
  if (r.classical_start_value) out["classical_start_value"] = *r.classical_start_value;
  out["model"] = model_to_json(r.model);
  return out;
}

double one_body(const Behavior& b, int party, int setting) {
  std::vector<int> term(b.scenario().parties(), -1);
  term[party] = setting;
  return correlators_from_behavior(b).get(term);
}

bool contains(const std::vector<Relabeling>& list, const Relabeling& g) {
  return std::find(list.begin(), list.end(), g) != list.end();
}

// Shared pipeline for the single-functional demos.
struct Pipeline {
  Json transcript;
  std::vector<Relabeling> symmetries;
  UniformityCertificate certificate;
  OptimizationResult optimum;
};

Pipeline run_pipeline(const std::string& demo, const BellFunctional& f, const DemoOptions& options) {
  Json t;
  t["demo"] = demo;
  t["functional"] = functional_summary(f);
  t["local_bound"] = local_bound_to_json(local_bound(f));
  auto symmetries = find_symmetries(f);
  t["symmetries"] = symmetry_summary(symmetries);
  auto cert = certify_all(f, symmetries);
  t["certificate"] = certificate_to_json(cert);
  auto opt = optimize_violation(f, {options.restarts, options.seed});
  t["optimization"] = optimization_summary(opt);
  t["cross_check"] = cross_check(cert, opt.behavior);
  return {std::move(t), std::move(symmetries), std::move(cert), std::move(opt)};
}

Json demo_chsh(const DemoOptions& options) {
  auto p = run_pipeline("chsh", chsh(), options);
  Json one_body_terms = Json::array();
  for (int party = 0; party < 2; ++party) {
    for (int x = 0; x < 2; ++x) one_body_terms.push_back(one_body(p.optimum.behavior, party, x));
  }
  p.transcript["one_body_correlators"] = std::move(one_body_terms);
  p.transcript["conclusion"] = {{"local_bits", bits_list(p.certificate, false)}};
  return p.transcript;
}

Json demo_tilted(const DemoOptions& options) {
  const BellFunctional f = tilted_chsh(0.5);
  auto p = run_pipeline("tilted", f, options);
  // a2 -> -a2 together with B1 <-> B2.
  const Relabeling flip = RelabelingBuilder(f.scenario()).shift_outcomes(0, 1).swap_inputs(1, 0, 1).build();
  p.transcript["highlighted_symmetry"] = {{"relabeling", flip.to_string()},
                                          {"is_symmetry", is_symmetry(flip, f)},
                                          {"found", contains(p.symmetries, flip)}};
  p.transcript["one_body_correlators"] = {{"A1", one_body(p.optimum.behavior, 0, 0)},
                                          {"A2", one_body(p.optimum.behavior, 0, 1)}};
  Json alice = Json::array();
  Json certified_settings = Json::array();
  for (int x = 0; x < 2; ++x) {
    const Query q = LocalQuery{0, x};
    const double bits = certified_bits(p.certificate, q);
    alice.push_back({{"query", query_to_string(q)}, {"bits", round_significant(bits)}});
    if (bits > 0.0) certified_settings.push_back("A" + std::to_string(x + 1));
  }
  p.transcript["conclusion"] = {{"alice_local_bits", std::move(alice)},
                                {"certified_settings", std::move(certified_settings)}};
  return p.transcript;
}

Json demo_chained_local(const DemoOptions& options) {
  Json t;
  t["demo"] = "chained-local";
  Json sections = Json::array();
  Json conclusion = Json::array();
  for (const auto& [m, d] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 2}}) {
    const BellFunctional f = chained_modular(m, d);
    Json section;
    section["functional"] = functional_summary(f);
    const auto bound = local_bound(f);
    section["local_bound"] = local_bound_to_json(bound);
    const Relabeling shift = RelabelingBuilder(f.scenario()).shift_all_outcomes(1).build();
    const auto symmetries = find_symmetries(f);
    section["shift_symmetry"] = {{"is_symmetry", is_symmetry(shift, f)}, {"found", contains(symmetries, shift)}};
    section["symmetries"] = symmetry_summary(symmetries);
    const auto cert = certify_all(f, symmetries);
    section["certificate"] = certificate_to_json(cert);
    std::optional<Behavior> behavior;
    if (d == 2) {
      const auto opt = optimize_violation(f, {options.restarts, options.seed});
      section["optimization"] = optimization_summary(opt);
      behavior = opt.behavior;
    } else {
      // No qudit optimizer; evaluate a fixed maximally entangled model.
      const QuantumModel model = chained_fourier_model(m, d);
      behavior = behavior_from_model(model);
      section["qudit_model"] = {{"value", evaluate(f, *behavior)}, {"model", model_to_json(model)}};
    }
    section["violates_local_bound"] = evaluate(f, *behavior) < bound.bound.to_double();
    section["cross_check"] = cross_check(cert, *behavior);
    sections.push_back(std::move(section));
    conclusion.push_back({{"m", m}, {"d", d}, {"expected_bits", std::log2(d)},
                          {"local_bits", bits_list(cert, false)}});
  }
  t["sections"] = std::move(sections);
  t["conclusion"] = std::move(conclusion);
  return t;
}

Json demo_chained_global(const DemoOptions& options) {
  const BellFunctional f = chained_correlator(3);
  const Scenario& s = f.scenario();
  Json t;
  t["demo"] = "chained-global";
  t["functional"] = functional_summary(f);
  t["local_bound"] = local_bound_to_json(local_bound(f));
  // T_s flips every outcome; T flips a1 and swaps B1 <-> B3, A2 <-> A3.
  const Relabeling t_s = RelabelingBuilder(s).shift_all_outcomes(1).build();
  const Relabeling t_g = RelabelingBuilder(s).swap_inputs(0, 1, 2).shift_outcomes(0, 0).swap_inputs(1, 0, 2).build();
  const std::vector<Relabeling> generators = {t_s, t_g};
  Json gens = Json::array();
  for (const auto& g : generators) {
    gens.push_back({{"relabeling", g.to_string()}, {"is_symmetry", is_symmetry(g, f)}});
  }
  t["generators"] = std::move(gens);
  const auto found = find_symmetries(f);
  t["symmetries"] = {{"count", found.size()},
                     {"contains_generators", contains(found, t_s) && contains(found, t_g)}};
  const Query query = JointQuery{{0, 1}};
  const auto cert = certify_all(f, generators);
  t["certificate"] = certificate_to_json(cert);
  Json in_inequality = Json::array();
  for (const auto& x : {std::vector<int>{0, 0}, {1, 1}, {2, 2}, {1, 0}, {2, 1}, {0, 2}}) {
    const Query q = JointQuery{x};
    in_inequality.push_back({{"query", query_to_string(q)}, {"bits", round_significant(certified_bits(cert, q))}});
  }
  t["inequality_inputs"] = std::move(in_inequality);
  const auto opt = optimize_violation(f, {options.restarts, options.seed});
  t["optimization"] = optimization_summary(opt);
  t["cross_check"] = cross_check(cert, opt.behavior);
  t["cross_check_found_group"] = cross_check(certify_all(f, found), opt.behavior);
  const auto observed = observed_report(opt.behavior, query);
  t["conclusion"] = {{"query", query_to_string(query)},
                     {"certified_bits", round_significant(certified_bits(cert, query))},
                     {"observed_bits", round_significant(observed.min_entropy_bits)}};
  return t;
}

Json mermin_conclusion(const UniformityCertificate& cert, int n) {
  Json even = Json::array();
  double max_bits = 0.0;
  for (const auto& [query, bits] : cert.certified) {
    const auto* joint = std::get_if<JointQuery>(&query);
    if (joint == nullptr) continue;
    max_bits = std::max(max_bits, bits);
    if (std::count(joint->settings.begin(), joint->settings.end(), 1) % 2 == 0) {
      even.push_back({{"query", query_to_string(query)}, {"bits", round_significant(bits)}});
    }
  }
  return {{"parties", n}, {"max_joint_bits", round_significant(max_bits)}, {"even_primed_joint_bits", even}};
}

Json demo_mermin(const std::string& name, int n, const DemoOptions& options) {
  auto p = run_pipeline(name, mermin(n), options);
  p.transcript["conclusion"] = mermin_conclusion(p.certificate, n);
  return p.transcript;
}

Json demo_lifted(const DemoOptions& options) {
  const BellFunctional f = lifted_chsh_c();
  auto p = run_pipeline("lifted", f, options);
  // Optimizer outputs across seeds; differences are reported, not judged.
  Json runs = Json::array();
  double widest = 0.0;
  for (std::uint64_t k = 1; k <= 3; ++k) {
    const auto other = optimize_violation(f, {options.restarts, options.seed + k});
    double diff = 0.0;
    for (std::size_t e = 0; e < other.behavior.table().size(); ++e) {
      diff = std::max(diff, std::abs(other.behavior.table()[e] - p.optimum.behavior.table()[e]));
    }
    widest = std::max(widest, diff);
    runs.push_back({{"seed", options.seed + k}, {"value", other.value}, {"max_table_difference", diff}});
  }
  p.transcript["uniqueness_probe"] = {{"runs", std::move(runs)}, {"max_table_difference", widest}};
  p.transcript["conclusion"] = {{"local_bits", bits_list(p.certificate, false)},
                                {"joint_bits", bits_list(p.certificate, true)}};
  return p.transcript;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"chsh",       "tilted",      "chained-local", "chained-global",
                                                 "mermin-odd", "mermin-even", "lifted"};
  return names;
}

Json run_demo(const std::string& name, const DemoOptions& options) {
  if (name == "chsh") return demo_chsh(options);
  if (name == "tilted") return demo_tilted(options);
  if (name == "chained-local") return demo_chained_local(options);
  if (name == "chained-global") return demo_chained_global(options);
  if (name == "mermin-odd") return demo_mermin(name, 3, options);
  if (name == "mermin-even") return demo_mermin(name, 4, options);
  if (name == "lifted") return demo_lifted(options);
  throw Error(ErrorCode::kInvalidArgument, "unknown demo: " + name);
}

}  // namespace bellcert::cli
