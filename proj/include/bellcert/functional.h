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

#ifndef BELLCERT_FUNCTIONAL_H_
#define BELLCERT_FUNCTIONAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellcert/dyadic.h"
#include "bellcert/scenario.h"

namespace bellcert {

enum class Orientation { kMaximize, kMinimize };

/// Linear functional F(P) = sum_{x,a} c(a,x) P(a|x) with exact coefficients.
class BellFunctional {
 public:
  /// `coefficients` is indexed by joint event.
  BellFunctional(Scenario scenario, std::vector<Dyadic> coefficients, Orientation orientation,
                 std::string name);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Dyadic>& coefficients() const { return coefficients_; }
  const Dyadic& coefficient(std::size_t input, std::size_t outcome) const {
    return coefficients_[input * scenario_.num_outcomes() + outcome];
  }
  Orientation orientation() const { return orientation_; }
  const std::string& name() const { return name_; }

  /// Same scenario and identical coefficient table. Name and orientation are
  /// ignored.
  bool coefficients_equal(const BellFunctional& other) const;

  /// Largest denominator exponent over all coefficients.
  int max_log2_den() const;

 private:
  Scenario scenario_;
  std::vector<Dyadic> coefficients_;
  Orientation orientation_;
  std::string name_;
};

double evaluate(const BellFunctional& functional, const Behavior& behavior);

/// A weighted correlator: `settings` has one entry per party, -1 for absent.
struct CorrelatorTerm {
  std::vector<int> settings;
  Dyadic coefficient;
};

/// Embeds a correlator polynomial into the (a,x) table. A term missing some
/// parties is spread evenly over their settings so that the table is
/// invariant under any relabeling that preserves the polynomial; this needs
/// the product of the absent parties' setting counts to be a power of two.
BellFunctional functional_from_correlators(const Scenario& scenario,
                                           std::span<const CorrelatorTerm> terms,
                                           Orientation orientation, std::string name);

/// Correlator-basis view (d = 2): entry k is the weight of the correlator
/// with index Scenario::correlator_index, entry 0 the constant offset. Agrees
/// with the table on every non-signaling behavior.
std::vector<Dyadic> correlator_coefficients(const BellFunctional& functional);

/// <A1B1> + <A1B2> + <A2B1> - <A2B2>.
BellFunctional chsh();

/// CHSH + eta <A1>. eta is stored exactly as the given double.
BellFunctional tilted_chsh(double eta);

/// Sum over i of <[A_i - B_i]_d> + <[B_i - A_{i+1}]_d>, A_{M+1} = A_1 + 1, as a
/// minimization over the (2, M, d) scenario. Each bracket contributes its
/// residue as the coefficient of the matching P(a,b|x,y).
BellFunctional chained_modular(int m, int d);

/// sum_i <A_i B_i> + sum_{i<M} <A_{i+1} B_i> - <A_1 B_M>, maximized.
BellFunctional chained_correlator(int m);

/// Mermin polynomial by the recursion
///   M_n = 1/2 M_{n-1} (A_n + A_n') + 1/2 M'_{n-1} (A_n - A_n'),
/// with M_2 = CHSH and M' the polynomial with primed and unprimed swapped.
/// Setting 0 is the unprimed observable, setting 1 the primed one.
/// For n = 1 (mod 4) the recursion yields the even-primed full correlators;
/// those are mapped back to the odd-primed form by A_1 -> -A_1', A_1' -> A_1,
/// which is a relabeling and preserves local and quantum values.
BellFunctional mermin(int n);

/// Correlator polynomial of mermin(n), keyed by full setting tuples.
std::vector<CorrelatorTerm> mermin_terms(int n);

/// (CHSH - 2)_{AB} times the event "C outputs +1" on the (3, [2,2,1], 2)
/// scenario: a tight inequality F <= 0 lifted from CHSH.
BellFunctional lifted_chsh_c();

}  // namespace bellcert

#endif  // BELLCERT_FUNCTIONAL_H_
