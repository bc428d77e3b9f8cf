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

// See-saw ascent for the quantum value of a functional over qubit models.
//
// Alternates two exact coordinate steps:
//   * state: the extremal eigenvector of the Bell operator;
//   * measurements: with everything else fixed, the objective is affine in
//     each Bloch vector n of a +-1 observable, f = f0 + g.n, so n <- g/|g|.
// Both steps never decrease the objective. Results are "best found" over
// seeded restarts, not certified global optima.

#ifndef BELLCERT_SEESAW_H_
#define BELLCERT_SEESAW_H_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellcert/functional.h"
#include "bellcert/quantum.h"
#include "bellcert/scenario.h"

namespace bellcert {

inline constexpr int kMaxSeesawParties = 8;
/// Largest deterministic-strategy count for which a classical start is added.
inline constexpr std::uint64_t kClassicalStartCap = std::uint64_t{1} << 20;

struct SeesawOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iters = 500;
};

/// bloch[party][setting].
using BlochSet = std::vector<std::vector<Eigen::Vector3d>>;

struct SeesawRun {
  /// Functional value (not oriented) at the end of the run.
  double value = 0.0;
  Eigen::VectorXcd state;
  BlochSet bloch;
  int iterations = 0;
  bool converged = false;
  /// Oriented objective (value for maximization, -value for minimization)
  /// after every half-step: the initial state step, then each party's
  /// measurement update and each subsequent state step.
  std::vector<double> history;
};

/// One see-saw run from the given initial Bloch vectors.
SeesawRun seesaw_run(const BellFunctional& functional, BlochSet initial, double tol, int max_iters);

/// Initial Bloch vectors for restart `restart`: uniform on the sphere,
/// drawn from mt19937_64 seeded with seed_seq{seed_lo, seed_hi, restart}.
BlochSet random_bloch_set(const Scenario& scenario, std::uint64_t seed, int restart);

struct OptimizationResult {
  double value;
  QuantumModel model;
  Behavior behavior;
  int iterations;
  bool converged;
  std::uint64_t seed;
  int best_restart;
  /// Final value of every random restart, by restart index.
  std::vector<double> restart_values;
  /// Final value of the extra run started at a classical optimum, which has
  /// restart index `restarts`. Absent beyond kClassicalStartCap strategies.
  std::optional<double> classical_start_value;
  /// Largest drop of the oriented objective between consecutive half-steps
  /// over all restarts (0 when the ascent was monotone).
  double worst_step_decrease;
};

/// Best see-saw result over restarts; ties go to the lowest restart index.
/// When a classical start is run the result is at least the local bound.
/// Throws Error(kUnsupported) for non-qubit scenarios and Error(kCapExceeded)
/// beyond kMaxSeesawParties parties.
OptimizationResult optimize_violation(const BellFunctional& functional,
                                      const SeesawOptions& options = {});

}  // namespace bellcert

#endif  // BELLCERT_SEESAW_H_
