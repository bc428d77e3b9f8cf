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

#ifndef BELLCERT_QUANTUM_H_
#define BELLCERT_QUANTUM_H_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellcert/functional.h"
#include "bellcert/scenario.h"

namespace bellcert {

/// Projective measurement with one projector per outcome.
struct Measurement {
  std::vector<Eigen::MatrixXcd> projectors;
  /// Set for qubit measurements built from a Bloch vector; outcome 0 (+1) is
  /// the projector onto +n.sigma.
  std::optional<Eigen::Vector3d> bloch;

  static Measurement qubit(const Eigen::Vector3d& bloch);
  /// Rank-one projectors onto the columns of a unitary.
  static Measurement from_basis(const Eigen::MatrixXcd& basis);
};

/// measurements[party][setting].
using MeasurementSet = std::vector<std::vector<Measurement>>;

/// Pure state on (C^d)^{tensor N}, party 0 the most significant tensor
/// factor, together with projective measurements for every setting.
class QuantumModel {
 public:
  /// Throws Error(kInvalidModel) unless the state has unit norm within 1e-12
  /// and every measurement is a complete set of orthogonal projectors within
  /// 1e-10.
  QuantumModel(Scenario scenario, Eigen::VectorXcd state, MeasurementSet measurements);

  const Scenario& scenario() const { return scenario_; }
  const Eigen::VectorXcd& state() const { return state_; }
  const MeasurementSet& measurements() const { return measurements_; }

 private:
  Scenario scenario_;
  Eigen::VectorXcd state_;
  MeasurementSet measurements_;
};

/// Throws Error(kInvalidModel) if `measurements` does not fit the scenario.
void validate_measurements(const Scenario& scenario, const MeasurementSet& measurements);

/// Born rule P(a|x) = <psi| (x)_i Pi^{a_i}_{x_i} |psi>.
Behavior behavior_from_model(const QuantumModel& model);

/// sum_{x,a} c(a,x) (x)_i Pi^{a_i}_{x_i}, dense.
Eigen::MatrixXcd bell_operator(const BellFunctional& functional, const MeasurementSet& measurements);

/// Applies a d x d operator to one tensor factor of a state vector.
Eigen::VectorXcd apply_local(const Eigen::VectorXcd& state, int party, int parties,
                             const Eigen::MatrixXcd& op);

/// (|0...0> + |1...1>) / sqrt(2) on n qubits.
Eigen::VectorXcd ghz_state(int n);
/// sum_j |j>|j> / sqrt(d).
Eigen::VectorXcd maximally_entangled_state(int d);
/// Maximally entangled two-qudit model with Fourier-basis measurements,
/// Alice's setting i at phase offset -i/M and Bob's at -(i + 1/2)/M. A
/// fixed qudit realization for evaluating chained_modular(m, d); it is not
/// claimed optimal.
QuantumModel chained_fourier_model(int m, int d);

/// Unit vector (sin t cos p, sin t sin p, cos t).
Eigen::Vector3d bloch_from_angles(double theta, double phi);

}  // namespace bellcert

#endif  // BELLCERT_QUANTUM_H_
