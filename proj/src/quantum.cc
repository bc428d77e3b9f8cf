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

#include "bellcert/quantum.h"

#include <cmath>
#include <complex>

#include "bellcert/error.h"

namespace bellcert {
namespace {

using cd = std::complex<double>;

constexpr double kStateNormTol = 1e-12;
constexpr double kProjectorTol = 1e-10;
constexpr double kBlochNormTol = 1e-10;

std::size_t total_dimension(const Scenario& s) {
  std::size_t dim = 1;
  for (int i = 0; i < s.parties(); ++i) dim *= s.outcomes();
  return dim;
}

// Operator for one joint input: sum_a c(a,x) (x)_{i>=depth} Pi^{a_i}, with
// the outcome prefix of the parties before `depth` already fixed.
Eigen::MatrixXcd input_operator(const BellFunctional& f, const MeasurementSet& m,
                                const std::vector<int>& settings, std::size_t x, int depth,
                                std::size_t outcome_prefix) {
  const Scenario& s = f.scenario();
  const int d = s.outcomes();
  if (depth == s.parties()) {
    Eigen::MatrixXcd leaf(1, 1);
    leaf(0, 0) = f.coefficient(x, outcome_prefix).to_double();
    return leaf;
  }
  std::size_t rest_dim = 1;
  for (int i = depth + 1; i < s.parties(); ++i) rest_dim *= d;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d * rest_dim, d * rest_dim);
  for (int a = 0; a < d; ++a) {
    const std::size_t prefix = outcome_prefix * d + a;
    // Skip subtrees whose coefficients all vanish.
    const std::size_t span = s.outcome_stride(depth);
    bool any = false;
    for (std::size_t tail = 0; tail < span && !any; ++tail) {
      any = !f.coefficient(x, prefix * span + tail).is_zero();
    }
    if (!any) continue;
    const Eigen::MatrixXcd inner = input_operator(f, m, settings, x, depth + 1, prefix);
    const Eigen::MatrixXcd& proj = m[depth][settings[depth]].projectors[a];
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (proj(r, c) == cd(0.0, 0.0)) continue;
        out.block(r * rest_dim, c * rest_dim, rest_dim, rest_dim) += proj(r, c) * inner;
      }
    }
  }
  return out;
}

void born_rule(const Scenario& s, const MeasurementSet& m, const std::vector<int>& settings,
               const Eigen::VectorXcd& partial, int depth, std::size_t prefix, double* row) {
  if (depth == s.parties()) {
    row[prefix] = partial.squaredNorm();
    return;
  }
  for (int a = 0; a < s.outcomes(); ++a) {
    const Eigen::VectorXcd next = apply_local(partial, depth, s.parties(), m[depth][settings[depth]].projectors[a]);
    born_rule(s, m, settings, next, depth + 1, prefix * s.outcomes() + a, row);
  }
}

}  // namespace

Measurement Measurement::qubit(const Eigen::Vector3d& bloch) {
  if (!bloch.allFinite() || std::abs(bloch.norm() - 1.0) > kBlochNormTol) {
    throw Error(ErrorCode::kInvalidModel, "Bloch vector must have unit length");
  }
  const Eigen::Vector3d n = bloch.normalized();
  Eigen::Matrix2cd n_sigma;
  n_sigma << cd(n.z(), 0.0), cd(n.x(), -n.y()), cd(n.x(), n.y()), cd(-n.z(), 0.0);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Measurement out;
  out.projectors = {Eigen::MatrixXcd(0.5 * (id + n_sigma)), Eigen::MatrixXcd(0.5 * (id - n_sigma))};
  out.bloch = n;
  return out;
}

Measurement Measurement::from_basis(const Eigen::MatrixXcd& basis) {
  Measurement out;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    out.projectors.push_back(basis.col(k) * basis.col(k).adjoint());
  }
  return out;
}

void validate_measurements(const Scenario& scenario, const MeasurementSet& measurements) {
  const int d = scenario.outcomes();
  if (static_cast<int>(measurements.size()) != scenario.parties()) {
    throw Error(ErrorCode::kInvalidModel, "need measurements for every party");
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  for (int i = 0; i < scenario.parties(); ++i) {
    if (static_cast<int>(measurements[i].size()) != scenario.settings(i)) {
      throw Error(ErrorCode::kInvalidModel, "need one measurement per setting of party " + std::to_string(i));
    }
    for (const auto& meas : measurements[i]) {
      if (static_cast<int>(meas.projectors.size()) != d) {
        throw Error(ErrorCode::kInvalidModel, "need one projector per outcome");
      }
      Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
      for (std::size_t a = 0; a < meas.projectors.size(); ++a) {
        const auto& p = meas.projectors[a];
        if (p.rows() != d || p.cols() != d) {
          throw Error(ErrorCode::kInvalidModel, "projector has wrong dimension");
        }
        if ((p - p.adjoint()).norm() > kProjectorTol || (p * p - p).norm() > kProjectorTol) {
          throw Error(ErrorCode::kInvalidModel, "measurement operator is not a projector");
        }
        for (std::size_t b = a + 1; b < meas.projectors.size(); ++b) {
          if ((p * meas.projectors[b]).norm() > kProjectorTol) {
            throw Error(ErrorCode::kInvalidModel, "projectors are not mutually orthogonal");
          }
        }
        sum += p;
      }
      if ((sum - id).norm() > kProjectorTol) {
        throw Error(ErrorCode::kInvalidModel, "projectors do not sum to the identity");
      }
    }
  }
}

QuantumModel::QuantumModel(Scenario scenario, Eigen::VectorXcd state, MeasurementSet measurements)
    : scenario_(std::move(scenario)), state_(std::move(state)), measurements_(std::move(measurements)) {
  if (static_cast<std::size_t>(state_.size()) != total_dimension(scenario_)) {
    throw Error(ErrorCode::kInvalidModel, "state dimension must be d^N");
  }
  if (!state_.allFinite() || std::abs(state_.norm() - 1.0) > kStateNormTol) {
    throw Error(ErrorCode::kInvalidModel, "state must have unit norm");
  }
  validate_measurements(scenario_, measurements_);
}

Eigen::VectorXcd apply_local(const Eigen::VectorXcd& state, int party, int parties,
                             const Eigen::MatrixXcd& op) {
  const Eigen::Index d = op.rows();
  Eigen::Index inner = 1;
  for (int i = party + 1; i < parties; ++i) inner *= d;
  const Eigen::Index outer = state.size() / (inner * d);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.size());
  for (Eigen::Index o = 0; o < outer; ++o) {
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const cd w = op(r, c);
        if (w == cd(0.0, 0.0)) continue;
        out.segment((o * d + r) * inner, inner) += w * state.segment((o * d + c) * inner, inner);
      }
    }
  }
  return out;
}

Behavior behavior_from_model(const QuantumModel& model) {
  const Scenario& s = model.scenario();
  std::vector<double> table(s.num_events());
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    born_rule(s, model.measurements(), s.input_tuple(x), model.state(), 0, 0,
              table.data() + x * s.num_outcomes());
  }
  return behavior_from_table(s, std::move(table));
}

Eigen::MatrixXcd bell_operator(const BellFunctional& functional, const MeasurementSet& measurements) {
  const Scenario& s = functional.scenario();
  validate_measurements(s, measurements);
  const auto dim = static_cast<Eigen::Index>(total_dimension(s));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < s.num_inputs(); ++x) {
    out += input_operator(functional, measurements, s.input_tuple(x), x, 0, 0);
  }
  // Symmetrize away rounding.
  return 0.5 * (out + out.adjoint());
}

Eigen::VectorXcd ghz_state(int n) {
  if (n < 1 || n > 20) throw Error(ErrorCode::kInvalidArgument, "GHZ state size out of range");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  psi(0) = psi(psi.size() - 1) = 1.0 / std::sqrt(2.0);
  return psi;
}

Eigen::VectorXcd maximally_entangled_state(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  for (int j = 0; j < d; ++j) psi(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return psi;
}

QuantumModel chained_fourier_model(int m, int d) {
  if (m < 2 || d < 2) throw Error(ErrorCode::kInvalidArgument, "need M >= 2 and d >= 2");
  const double two_pi = 2.0 * std::acos(-1.0);
  // Column k of the basis: sum_j exp(2 pi i sign j (k + offset) / d) |j> / sqrt(d).
  auto basis = [&](double offset, double sign) {
    Eigen::MatrixXcd u(d, d);
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        u(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), sign * two_pi * j * (k + offset) / d);
      }
    }
    return u;
  };
  MeasurementSet measurements(2);
  for (int i = 0; i < m; ++i) {
    measurements[0].push_back(Measurement::from_basis(basis(-static_cast<double>(i) / m, 1.0)));
    measurements[1].push_back(Measurement::from_basis(basis(-(i + 0.5) / m, -1.0)));
  }
  return QuantumModel(Scenario::uniform(2, m, d), maximally_entangled_state(d), std::move(measurements));
}

Eigen::Vector3d bloch_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace bellcert
