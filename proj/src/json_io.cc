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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bellcert/error.h"

namespace bellcert {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) parse_error(std::string("missing field '") + name + "'");
  return doc.at(name);
}

template <typename T>
T get_as(const Json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    parse_error(std::string("field '") + what + "' has the wrong type");
  }
}

std::string input_key(const std::vector<int>& settings) {
  std::string key = "x=";
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(settings[i]);
  }
  return key;
}

std::vector<int> parse_input_key(const std::string& key) {
  if (key.rfind("x=", 0) != 0) parse_error("table keys look like x=0,1 (got '" + key + "')");
  std::vector<int> out;
  std::stringstream rest(key.substr(2));
  std::string item;
  while (std::getline(rest, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      parse_error("bad table key '" + key + "'");
    }
    if (used != item.size()) parse_error("bad table key '" + key + "'");
  }
  return out;
}

Json complex_array(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.push_back(v(k).real());
    out.push_back(v(k).imag());
  }
  return out;
}

Json query_json(const Query& query) { return query_to_string(query); }

}  // namespace

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

Json scenario_to_json(const Scenario& scenario) {
  Json out;
  out["parties"] = scenario.parties();
  out["settings"] = scenario.settings();
  out["outcomes"] = scenario.outcomes();
  return out;
}

Scenario scenario_from_json(const Json& doc) {
  return Scenario(get_as<int>(field(doc, "parties"), "parties"),
                  get_as<std::vector<int>>(field(doc, "settings"), "settings"),
                  get_as<int>(field(doc, "outcomes"), "outcomes"));
}

Json behavior_to_json(const Behavior& behavior) {
  const Scenario& s = behavior.scenario();
  Json out = scenario_to_json(s);
  Json table = Json::object();
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto row = behavior.row(x);
    table[input_key(s.input_tuple(x))] = std::vector<double>(row.begin(), row.end());
  }
  out["table"] = std::move(table);
  return out;
}

Behavior behavior_from_json(const Json& doc) {
  const Scenario s = scenario_from_json(doc);
  const Json& table = field(doc, "table");
  if (!table.is_object()) parse_error("'table' must be an object");
  std::vector<std::vector<double>> rows(s.num_inputs());
  std::vector<bool> seen(s.num_inputs(), false);
  for (const auto& [key, value] : table.items()) {
    const std::size_t x = s.input_index(parse_input_key(key));
    if (seen[x]) parse_error("duplicate table key " + key);
    seen[x] = true;
    rows[x] = get_as<std::vector<double>>(value, "table");
  }
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    if (!seen[x]) throw Error(ErrorCode::kDimensionMismatch, "table misses input " + input_key(s.input_tuple(x)));
  }
  return behavior_from_table(s, rows);
}

Json functional_to_json(const BellFunctional& functional) {
  const Scenario& s = functional.scenario();
  Json out;
  out["name"] = functional.name();
  out["parties"] = s.parties();
  out["settings"] = s.settings();
  out["outcomes"] = s.outcomes();
  out["orientation"] = functional.orientation() == Orientation::kMaximize ? "max" : "min";
  Json terms = Json::array();
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
      const Dyadic& c = functional.coefficient(x, a);
      if (c.is_zero()) continue;
      Json term;
      term["x"] = s.input_tuple(x);
      term["a"] = s.outcome_tuple(a);
      term["c_num"] = c.num();
      term["c_log2_den"] = c.log2_den();
      terms.push_back(std::move(term));
    }
  }
  out["terms"] = std::move(terms);
  return out;
}

BellFunctional functional_from_json(const Json& doc) {
  const Scenario s = scenario_from_json(doc);
  const std::string orientation = get_as<std::string>(field(doc, "orientation"), "orientation");
  if (orientation != "max" && orientation != "min") parse_error("orientation must be \"max\" or \"min\"");
  std::vector<Dyadic> coefficients(s.num_events());
  const Json& terms = field(doc, "terms");
  if (!terms.is_array()) parse_error("'terms' must be an array");
  for (const auto& term : terms) {
    const auto x = get_as<std::vector<int>>(field(term, "x"), "x");
    const auto a = get_as<std::vector<int>>(field(term, "a"), "a");
    const int den = term.contains("c_log2_den") ? get_as<int>(term.at("c_log2_den"), "c_log2_den") : 0;
    if (den < 0) parse_error("c_log2_den must be nonnegative");
    const Dyadic c(get_as<std::int64_t>(field(term, "c_num"), "c_num"), den);
    coefficients[s.input_index(x) * s.num_outcomes() + s.outcome_index(a)] += c;
  }
  const std::string name = doc.contains("name") ? get_as<std::string>(doc.at("name"), "name") : "custom";
  return BellFunctional(s, std::move(coefficients),
                        orientation == "max" ? Orientation::kMaximize : Orientation::kMinimize, name);
}

Json relabeling_to_json(const Relabeling& relabeling) {
  Json out;
  if (relabeling.party_perm()) {
    out["party_perm"] = *relabeling.party_perm();
  } else {
    out["party_perm"] = nullptr;
  }
  Json parties = Json::array();
  for (const auto& p : relabeling.parties()) {
    Json entry;
    entry["input_perm"] = p.input_perm;
    entry["output_perms"] = p.output_perms;
    parties.push_back(std::move(entry));
  }
  out["parties"] = std::move(parties);
  return out;
}

Relabeling relabeling_from_json(const Json& doc, const Scenario& scenario) {
  std::optional<std::vector<int>> party_perm;
  if (doc.contains("party_perm") && !doc.at("party_perm").is_null()) {
    party_perm = get_as<std::vector<int>>(doc.at("party_perm"), "party_perm");
  }
  const Json& parties = field(doc, "parties");
  if (!parties.is_array()) parse_error("'parties' must be an array");
  std::vector<PartyRelabeling> out;
  for (const auto& p : parties) {
    out.push_back({get_as<std::vector<int>>(field(p, "input_perm"), "input_perm"),
                   get_as<std::vector<std::vector<int>>>(field(p, "output_perms"), "output_perms")});
  }
  return Relabeling(scenario, std::move(out), std::move(party_perm));
}

Json model_to_json(const QuantumModel& model) {
  Json out = scenario_to_json(model.scenario());
  out["state"] = complex_array(model.state());
  Json parties = Json::array();
  for (const auto& settings : model.measurements()) {
    Json list = Json::array();
    for (const auto& m : settings) {
      Json entry;
      if (m.bloch) {
        entry["bloch"] = {m.bloch->x(), m.bloch->y(), m.bloch->z()};
      } else {
        Json projectors = Json::array();
        for (const auto& p : m.projectors) {
          const Eigen::MatrixXcd row_major = p.transpose();  // column-major storage of p^T is row-major p
          projectors.push_back(complex_array(Eigen::Map<const Eigen::VectorXcd>(row_major.data(), row_major.size())));
        }
        entry["projectors"] = std::move(projectors);
      }
      list.push_back(std::move(entry));
    }
    parties.push_back(std::move(list));
  }
  out["measurements"] = std::move(parties);
  return out;
}

QuantumModel model_from_json(const Json& doc) {
  const Scenario s = scenario_from_json(doc);
  const auto flat = get_as<std::vector<double>>(field(doc, "state"), "state");
  if (flat.size() % 2 != 0) parse_error("state must interleave real and imaginary parts");
  Eigen::VectorXcd state(static_cast<Eigen::Index>(flat.size() / 2));
  for (Eigen::Index k = 0; k < state.size(); ++k) state(k) = {flat[2 * k], flat[2 * k + 1]};
  const Json& parties = field(doc, "measurements");
  if (!parties.is_array()) parse_error("'measurements' must be an array");
  MeasurementSet measurements;
  const int d = s.outcomes();
  for (const auto& list : parties) {
    if (!list.is_array()) parse_error("each party's measurements must be an array");
    std::vector<Measurement> party;
    for (const auto& entry : list) {
      if (entry.contains("bloch")) {
        const auto v = get_as<std::vector<double>>(entry.at("bloch"), "bloch");
        if (v.size() != 3) parse_error("Bloch vectors have three components");
        if (d != 2) throw Error(ErrorCode::kInvalidModel, "Bloch vectors need d = 2");
        party.push_back(Measurement::qubit({v[0], v[1], v[2]}));
      } else {
        Measurement m;
        for (const auto& p : field(entry, "projectors")) {
          const auto values = get_as<std::vector<double>>(p, "projectors");
          if (values.size() != static_cast<std::size_t>(2 * d * d)) parse_error("projector must have 2 d^2 entries");
          Eigen::MatrixXcd op(d, d);
          for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) op(r, c) = {values[2 * (r * d + c)], values[2 * (r * d + c) + 1]};
          }
          m.projectors.push_back(std::move(op));
        }
        party.push_back(std::move(m));
      }
    }
    measurements.push_back(std::move(party));
  }
  return QuantumModel(s, std::move(state), std::move(measurements));
}

Json certificate_to_json(const UniformityCertificate& certificate) {
  Json out;
  out["functional"] = certificate.functional_name;
  out["scenario"] = scenario_to_json(certificate.scenario);
  out["status"] = "conditional";
  out["assumes_unique_maximizer"] = certificate.assumes_unique_maximizer;
  out["assumption"] = certificate.assumption;
  out["supplied_generators"] = certificate.supplied_generators;
  Json generators = Json::array();
  for (const auto& g : certificate.generators) generators.push_back(relabeling_to_json(g));
  out["generators"] = std::move(generators);
  Json bits = Json::array();
  for (const auto& [query, value] : certificate.certified) {
    bits.push_back({{"query", query_json(query)}, {"bits", round_significant(value)}});
  }
  out["certified"] = std::move(bits);
  out["joint_orbits"] = orbit_classes(certificate.joint_orbit);
  out["local_orbits"] = orbit_classes(certificate.local_orbit);
  return out;
}

Json report_to_json(const RandomnessReport& report) {
  Json out;
  out["query"] = query_json(report.query);
  out["kind"] = report.kind == ReportKind::kObserved ? "observed" : "certified";
  out["p_guess"] = report.guessing_probability;
  out["bits"] = round_significant(report.min_entropy_bits);
  out["assumes_unique_maximizer"] = report.kind == ReportKind::kCertified;
  if (report.assumption) out["assumption"] = *report.assumption;
  return out;
}

Json local_bound_to_json(const LocalBoundReport& report) {
  Json out;
  out["bound"] = report.bound.to_double();
  out["bound_exact"] = {{"c_num", report.bound.num()}, {"c_log2_den", report.bound.log2_den()}};
  out["maximizer_count"] = report.maximizer_count;
  out["maximizers"] = report.maximizers;
  out["maximizers_truncated"] = report.maximizers.size() < report.maximizer_count;
  return out;
}

Json optimization_to_json(const OptimizationResult& result) {
  Json out;
  out["value"] = result.value;
  out["label"] = "best found";
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  out["seed"] = result.seed;
  out["best_restart"] = result.best_restart;
  out["restart_values"] = result.restart_values;
  if (result.classical_start_value) out["classical_start_value"] = *result.classical_start_value;
  out["model"] = model_to_json(result.model);
  out["behavior"] = behavior_to_json(result.behavior);
  return out;
}

}  // namespace bellcert
