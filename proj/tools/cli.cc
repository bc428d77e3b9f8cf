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

#include "cli.h"

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "bellcert/error.h"
#include "bellcert/json_io.h"
#include "demo.h"

namespace bellcert::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FunctionalArgs {
  std::string name;
  std::string file;
  double eta = 0.0;
  int m = 0;
  int d = 0;
  int n = 0;
  CLI::Option* name_opt = nullptr;
  CLI::Option* file_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* d_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  bool given() const { return name_opt->count() > 0 || file_opt->count() > 0; }
};

struct OptimizerArgs {
  std::uint64_t seed = 0;
  int restarts = 20;
  double tol = 1e-10;
  int max_iters = 500;

  SeesawOptions options() const { return {restarts, seed, tol, max_iters}; }
};

struct SearchArgs {
  bool party_perms = false;
  std::uint64_t cap = SymmetrySearchOptions{}.cap;

  SymmetrySearchOptions options() const { return {party_perms, cap}; }
};

void add_functional_options(CLI::App* app, FunctionalArgs& f) {
  f.name_opt = app->add_option("--functional", f.name,
                               "chsh, tilted-chsh, chained-modular, chained-correlator, mermin, lifted-chsh-c");
  f.file_opt = app->add_option("--file", f.file, "functional JSON file")->excludes(f.name_opt);
  f.eta_opt = app->add_option("--eta", f.eta, "tilted-chsh marginal weight");
  f.m_opt = app->add_option("--m", f.m, "settings per party (chained)")->check(CLI::PositiveNumber);
  f.d_opt = app->add_option("--d", f.d, "outcomes (chained-modular)")->check(CLI::PositiveNumber);
  f.n_opt = app->add_option("--n", f.n, "parties (mermin)")->check(CLI::PositiveNumber);
}

void add_optimizer_options(CLI::App* app, OptimizerArgs& o) {
  app->add_option("--seed", o.seed, "see-saw seed");
  app->add_option("--restarts", o.restarts, "see-saw restarts")->check(CLI::PositiveNumber);
  app->add_option("--tol", o.tol, "see-saw convergence tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-iters", o.max_iters, "see-saw sweeps per restart")->check(CLI::PositiveNumber);
}

void add_search_options(CLI::App* app, SearchArgs& s) {
  app->add_flag("--party-perms", s.party_perms, "include party permutations");
  app->add_option("--cap", s.cap, "maximum relabelings to scan")->check(CLI::PositiveNumber);
}

void require(const CLI::Option* opt, const std::string& functional) {
  if (opt->count() == 0) {
    throw UsageError("functional " + functional + " requires " + opt->get_name());
  }
}

BellFunctional resolve_functional(const FunctionalArgs& f) {
  if (!f.given()) throw UsageError("exactly one of --functional or --file is required");
  if (f.file_opt->count() > 0) return functional_from_json(read_json_file(f.file));
  if (f.name == "chsh") return chsh();
  if (f.name == "tilted-chsh") {
    require(f.eta_opt, f.name);
    return tilted_chsh(f.eta);
  }
  if (f.name == "chained-modular") {
    require(f.m_opt, f.name);
    require(f.d_opt, f.name);
    return chained_modular(f.m, f.d);
  }
  if (f.name == "chained-correlator") {
    require(f.m_opt, f.name);
    return chained_correlator(f.m);
  }
  if (f.name == "mermin") {
    require(f.n_opt, f.name);
    return mermin(f.n);
  }
  if (f.name == "lifted-chsh-c") return lifted_chsh_c();
  throw Error(ErrorCode::kUnknownFunctional, "unknown functional: " + f.name);
}

std::vector<Relabeling> read_generators(const std::string& path, const Scenario& scenario) {
  Json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("generators")) doc = doc["generators"];
  if (!doc.is_array()) throw Error(ErrorCode::kParse, "generators file must hold a JSON array");
  std::vector<Relabeling> out;
  for (const auto& g : doc) out.push_back(relabeling_from_json(g, scenario));
  return out;
}

Query parse_query_arg(const std::string& text) {
  try {
    return parse_query(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Json error_json(std::string_view code, const std::string& message) {
  Json out;
  out["code"] = code;
  out["message"] = message;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-based randomness certification for Bell experiments", "bellcert"};
  app.require_subcommand(1);
  bool pretty = false;
  std::string output_path;
  app.add_flag("--pretty", pretty, "indent JSON output");
  app.add_option("--output", output_path, "write JSON to this file instead of standard output");
  app.fallthrough();

  // One set per subcommand so each keeps its own CLI::Option handles.
  FunctionalArgs f_lb, f_mx, f_sy, f_ce, f_ra;
  OptimizerArgs optimizer;
  SearchArgs search;
  std::uint64_t strategy_cap = LocalBoundOptions{}.strategy_cap;
  std::size_t listing_cap = LocalBoundOptions{}.listing_cap;
  std::string query_text;
  std::string generators_path;
  std::string behavior_path;
  std::string demo_name;

  auto* lb = app.add_subcommand("local-bound", "exact local bound by enumeration");
  add_functional_options(lb, f_lb);
  lb->add_option("--cap", strategy_cap, "maximum deterministic strategies")->check(CLI::PositiveNumber);
  lb->add_option("--listing-cap", listing_cap, "maximum maximizers listed");

  auto* mx = app.add_subcommand("maximize", "see-saw quantum optimization (qubits)");
  add_functional_options(mx, f_mx);
  add_optimizer_options(mx, optimizer);

  auto* sy = app.add_subcommand("symmetries", "relabelings leaving the functional invariant");
  add_functional_options(sy, f_sy);
  add_search_options(sy, search);

  auto* ce = app.add_subcommand("certify", "conditional uniformity certificate");
  add_functional_options(ce, f_ce);
  add_search_options(ce, search);
  ce->add_option("--query", query_text, "joint:x1,...,xN or local:party,setting (1-based)");
  ce->add_option("--generators", generators_path, "JSON array of relabelings to use instead of a search");

  auto* ra = app.add_subcommand("randomness", "certified and observed min-entropy at one query");
  add_functional_options(ra, f_ra);
  add_search_options(ra, search);
  add_optimizer_options(ra, optimizer);
  ra->add_option("--query", query_text, "joint:x1,...,xN or local:party,setting (1-based)")->required();
  ra->add_option("--generators", generators_path, "JSON array of relabelings to use instead of a search");
  ra->add_option("--behavior", behavior_path, "behavior JSON to report observed randomness on");

  auto* de = app.add_subcommand("demo", "end-to-end walkthrough");
  de->add_option("name", demo_name, "chsh, tilted, chained-local, chained-global, mermin-odd, mermin-even, lifted")
      ->required();
  add_optimizer_options(de, optimizer);

  for (auto* sub : {lb, mx, sy, ce, ra, de}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return kExitUsage;
  }

  Json result;
  try {
    if (lb->parsed()) {
      const BellFunctional f = resolve_functional(f_lb);
      result["functional"] = f.name();
      result["orientation"] = f.orientation() == Orientation::kMaximize ? "max" : "min";
      result.update(local_bound_to_json(local_bound(f, {strategy_cap, listing_cap})));
    } else if (mx->parsed()) {
      const BellFunctional f = resolve_functional(f_mx);
      result["functional"] = f.name();
      result.update(optimization_to_json(optimize_violation(f, optimizer.options())));
    } else if (sy->parsed()) {
      const BellFunctional f = resolve_functional(f_sy);
      const auto found = find_symmetries(f, search.options());
      result["functional"] = f.name();
      result["include_party_perms"] = search.party_perms;
      result["searched"] = relabeling_space_size(f.scenario(), search.party_perms);
      result["count"] = found.size();
      Json list = Json::array();
      for (const auto& g : found) {
        list.push_back({{"description", g.to_string()}, {"relabeling", relabeling_to_json(g)}});
      }
      result["symmetries"] = std::move(list);
    } else if (ce->parsed()) {
      const BellFunctional f = resolve_functional(f_ce);
      const auto generators = generators_path.empty() ? find_symmetries(f, search.options())
                                                      : read_generators(generators_path, f.scenario());
      if (ce->get_option("--query")->count() > 0) {
        const Query query = parse_query_arg(query_text);
        const auto cert = certify_uniform(f, generators, query);
        result["query"] = query_to_string(query);
        result["bits"] = round_significant(certified_bits(cert, query));
        result["assumes_unique_maximizer"] = cert.assumes_unique_maximizer;
        result["certificate"] = certificate_to_json(cert);
      } else {
        result = certificate_to_json(certify_all(f, generators));
      }
    } else if (ra->parsed()) {
      const Query query = parse_query_arg(query_text);
      result["query"] = query_to_string(query);
      std::optional<Behavior> observed_on;
      if (!behavior_path.empty()) observed_on = behavior_from_json(read_json_file(behavior_path));
      if (f_ra.given()) {
        const BellFunctional f = resolve_functional(f_ra);
        const auto generators = generators_path.empty() ? find_symmetries(f, search.options())
                                                        : read_generators(generators_path, f.scenario());
        result["functional"] = f.name();
        result["certified"] = report_to_json(certified_report(certify_uniform(f, generators, query), query));
        if (!observed_on) {
          const auto opt = optimize_violation(f, optimizer.options());
          result["optimizer_value"] = opt.value;
          observed_on = opt.behavior;
        }
      } else if (!observed_on) {
        throw UsageError("randomness needs --functional, --file or --behavior");
      }
      result["observed"] = report_to_json(observed_report(*observed_on, query));
    } else if (de->parsed()) {
      result = run_demo(demo_name, {optimizer.seed, optimizer.restarts});
    }
  } catch (const UsageError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << error_json(error_code_name(e.code()), e.what()).dump() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << "\n";
    return kExitFailure;
  }

  const std::string text = result.dump(pretty ? 2 : -1) + "\n";
  if (output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!(file << text)) {
      err << error_json("io_error", "cannot write " + output_path).dump() << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

}  // namespace bellcert::cli
