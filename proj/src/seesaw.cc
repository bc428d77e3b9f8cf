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

#include "bellcert/seesaw.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>

#include "bellcert/error.h"
#include "bellcert/local_bound.h"
#include "bellcert/parallel.h"

namespace bellcert {
namespace {

using cd = std::complex<double>;

constexpr double kDegenerateGradient = 1e-14;
constexpr double kEigenTieTol = 1e-12;

void check_supported(const Scenario& s) {
  if (s.outcomes() != 2) {
    throw Error(ErrorCode::kUnsupported,
                "see-saw optimization supports qubit (d = 2) scenarios only; use behavior_from_model "
                "to evaluate qudit models");
  }
  if (s.parties() > kMaxSeesawParties) {
    throw Error(ErrorCode::kCapExceeded, "see-saw is limited to " + std::to_string(kMaxSeesawParties) +
                                             " parties");
  }
}

const Eigen::Matrix2cd& pauli(int k) {
  static const Eigen::Matrix2cd kPaulis[3] = {
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return kPaulis[k];
}

MeasurementSet to_measurements(const BlochSet& bloch) {
  MeasurementSet out(bloch.size());
  for (std::size_t i = 0; i < bloch.size(); ++i) {
    for (const auto& n : bloch[i]) out[i].push_back(Measurement::qubit(n));
  }
  return out;
}

// Top eigenvector (lowest index among near-degenerate ones) of sign * B.
double extremal_state(const Eigen::MatrixXcd& bell, double sign, Eigen::VectorXcd* state) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sign * bell);
  const auto& values = solver.eigenvalues();
  const Eigen::Index last = values.size() - 1;
  Eigen::Index pick = last;
  while (pick > 0 && values(pick - 1) >= values(last) - kEigenTieTol) --pick;
  *state = solver.eigenvectors().col(pick).normalized();
  return values(pick);
}

double oriented_expectation(const Eigen::MatrixXcd& bell, double sign, const Eigen::VectorXcd& psi) {
  return sign * psi.dot(bell * psi).real();
}

// chi = sum over inputs with setting x at `party`, and over the other
// parties' outcomes, of w * (x)_{j != party} Pi^{a_j} psi, where
// w = sum_{a_party} c(a, x') sign(a_party) / 2.
void accumulate_gradient_vector(const BellFunctional& f, const MeasurementSet& m, int party,
                                const std::vector<int>& settings, std::size_t x, int depth,
                                std::size_t prefix, const Eigen::VectorXcd& partial, Eigen::VectorXcd* chi) {
  const Scenario& s = f.scenario();
  const int n = s.parties();
  if (depth == n) {
    // prefix encodes the outcomes of every party except `party` (which is
    // recorded as 0); recover both values of a_party.
    const std::size_t stride = s.outcome_stride(party);
    const double plus = f.coefficient(x, prefix).to_double();
    const double minus = f.coefficient(x, prefix + stride).to_double();
    const double w = 0.5 * (plus - minus);
    if (w != 0.0) *chi += w * partial;
    return;
  }
  if (depth == party) {
    accumulate_gradient_vector(f, m, party, settings, x, depth + 1, prefix, partial, chi);
    return;
  }
  for (int a = 0; a < 2; ++a) {
    const Eigen::VectorXcd next = apply_local(partial, depth, n, m[depth][settings[depth]].projectors[a]);
    accumulate_gradient_vector(f, m, party, settings, x, depth + 1, prefix + a * s.outcome_stride(depth),
                               next, chi);
  }
}

// Gradient of the (unoriented) objective with respect to the Bloch vector of
// (party, setting).
Eigen::Vector3d bloch_gradient(const BellFunctional& f, const MeasurementSet& m, int party, int setting,
                               const Eigen::VectorXcd& psi) {
  const Scenario& s = f.scenario();
  Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(psi.size());
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    const auto settings = s.input_tuple(x);
    if (settings[party] != setting) continue;
    accumulate_gradient_vector(f, m, party, settings, x, 0, 0, psi, &chi);
  }
  Eigen::Vector3d g;
  for (int k = 0; k < 3; ++k) {
    g(k) = psi.dot(apply_local(chi, party, s.parties(), pauli(k))).real();
  }
  return g;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller on the raw engine output, so the stream does not depend on the
// standard library's distribution implementations.
double standard_normal(std::mt19937_64& rng) {
  double u = 0.0;
  do {
    u = uniform01(rng);
  } while (u <= 0.0);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace

BlochSet random_bloch_set(const Scenario& scenario, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  BlochSet out(scenario.parties());
  for (int i = 0; i < scenario.parties(); ++i) {
    for (int x = 0; x < scenario.settings(i); ++x) {
      Eigen::Vector3d v;
      do {
        v = {standard_normal(rng), standard_normal(rng), standard_normal(rng)};
      } while (v.norm() < 1e-8);
      out[i].push_back(v.normalized());
    }
  }
  return out;
}

SeesawRun seesaw_run(const BellFunctional& functional, BlochSet initial, double tol, int max_iters) {
  const Scenario& s = functional.scenario();
  check_supported(s);
  if (!(tol >= 0.0) || max_iters < 1) {
    throw Error(ErrorCode::kInvalidArgument, "see-saw needs tol >= 0 and max_iters >= 1");
  }
  const double sign = functional.orientation() == Orientation::kMaximize ? 1.0 : -1.0;
  SeesawRun run;
  run.bloch = std::move(initial);
  MeasurementSet m = to_measurements(run.bloch);
  validate_measurements(s, m);

  Eigen::MatrixXcd bell = bell_operator(functional, m);
  double value = extremal_state(bell, sign, &run.state);
  run.history.push_back(value);

  for (int iter = 1; iter <= max_iters; ++iter) {
    const double before = value;
    for (int i = 0; i < s.parties(); ++i) {
      // Settings of one party never share a term, so they update together.
      std::vector<Eigen::Vector3d> updated(s.settings(i));
      for (int x = 0; x < s.settings(i); ++x) {
        const Eigen::Vector3d g = sign * bloch_gradient(functional, m, i, x, run.state);
        updated[x] = g.norm() > kDegenerateGradient ? Eigen::Vector3d(g.normalized()) : run.bloch[i][x];
      }
      for (int x = 0; x < s.settings(i); ++x) {
        run.bloch[i][x] = updated[x];
        m[i][x] = Measurement::qubit(updated[x]);
      }
      bell = bell_operator(functional, m);
      run.history.push_back(oriented_expectation(bell, sign, run.state));
    }
    value = extremal_state(bell, sign, &run.state);
    run.history.push_back(value);
    run.iterations = iter;
    if (value - before < tol) {
      run.converged = true;
      break;
    }
  }
  run.value = sign * value;
  return run;
}

OptimizationResult optimize_violation(const BellFunctional& functional, const SeesawOptions& options) {
  const Scenario& s = functional.scenario();
  check_supported(s);
  if (options.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one restart");

  std::vector<SeesawRun> runs(options.restarts);
  parallel_chunks(runs.size(), [&](std::size_t r) {
    runs[r] = seesaw_run(functional, random_bloch_set(s, options.seed, static_cast<int>(r)), options.tol,
                         options.max_iters);
  });
  std::optional<double> classical_value;
  if (deterministic_strategy_count(s) <= kClassicalStartCap) {
    // A classical optimum as +-z measurements on a product state; the
    // ascent from there cannot end below the local bound.
    const auto report = local_bound(functional, {.listing_cap = 1});
    BlochSet start(s.parties());
    for (int i = 0; i < s.parties(); ++i) {
      for (int outcome : report.maximizers.front()[i]) {
        start[i].push_back(Eigen::Vector3d(0.0, 0.0, outcome == 0 ? 1.0 : -1.0));
      }
    }
    runs.push_back(seesaw_run(functional, std::move(start), options.tol, options.max_iters));
    classical_value = runs.back().value;
  }

  const double sign = functional.orientation() == Orientation::kMaximize ? 1.0 : -1.0;
  std::size_t best = 0;
  std::vector<double> values;
  double worst_decrease = 0.0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (r < static_cast<std::size_t>(options.restarts)) values.push_back(runs[r].value);
    if (sign * runs[r].value > sign * runs[best].value) best = r;
    const auto& h = runs[r].history;
    for (std::size_t k = 1; k < h.size(); ++k) worst_decrease = std::max(worst_decrease, h[k - 1] - h[k]);
  }
  const SeesawRun& run = runs[best];
  QuantumModel model(s, run.state, to_measurements(run.bloch));
  Behavior behavior = behavior_from_model(model);
  const double value = evaluate(functional, behavior);
  return OptimizationResult{value,
                            std::move(model),
                            std::move(behavior),
                            run.iterations,
                            run.converged,
                            options.seed,
                            static_cast<int>(best),
                            std::move(values),
                            classical_value,
                            worst_decrease};
}

}  // namespace bellcert
