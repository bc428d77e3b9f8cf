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

#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

namespace bellcert::testing::oracle {
namespace {

using cd = std::complex<double>;
using Table = std::map<std::vector<int>, double>;

constexpr double kTwoPi = 6.283185307179586;

Polynomial from_table(const Table& t) {
  Polynomial out;
  for (const auto& [settings, c] : t) {
    if (c != 0.0) out.push_back({settings, c});
  }
  return out;
}

Table to_table(const Polynomial& p) {
  Table t;
  for (const auto& m : p) t[m.settings] += m.coefficient;
  return t;
}

}  // namespace

Polynomial chsh_polynomial() {
  return {{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 1}, -1.0}};
}

Polynomial tilted_polynomial(double eta) {
  Polynomial p = chsh_polynomial();
  p.push_back({{0, -1}, eta});
  return p;
}

Polynomial chained_polynomial(int m) {
  Polynomial p;
  for (int i = 0; i < m; ++i) p.push_back({{i, i}, 1.0});
  for (int i = 0; i + 1 < m; ++i) p.push_back({{i + 1, i}, 1.0});
  p.push_back({{0, m - 1}, -1.0});
  return p;
}

Polynomial mermin_polynomial(int n) {
  Table m = to_table(chsh_polynomial());
  for (int k = 3; k <= n; ++k) {
    Table next;
    for (const auto& [s, c] : m) {
      std::vector<int> swapped = s;
      for (auto& v : swapped) v = 1 - v;
      for (int last = 0; last < 2; ++last) {
        // M (a + a') / 2 contributes +c/2 for both settings of the new party;
        // M' (a - a') / 2 contributes +c/2 at a and -c/2 at a'.
        std::vector<int> plain = s;
        plain.push_back(last);
        next[plain] += c / 2;
        std::vector<int> primed = swapped;
        primed.push_back(last);
        next[primed] += (last == 0 ? c : -c) / 2;
      }
    }
    m = std::move(next);
  }
  return from_table(m);
}

Polynomial complex_product_form(int n, double re_weight, double im_weight) {
  // Expand prod_j (a_j + i a'_j) term by term.
  std::map<std::vector<int>, cd> z;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s(n);
    cd w = 1.0;
    for (int j = 0; j < n; ++j) {
      s[j] = (mask >> (n - 1 - j)) & 1;
      if (s[j]) w *= cd(0.0, 1.0);
    }
    z[s] += w;
  }
  Table t;
  for (const auto& [s, w] : z) t[s] = re_weight * w.real() + im_weight * w.imag();
  return from_table(t);
}

Polynomial first_party_quarter_turn(const Polynomial& p) {
  Table t;
  for (const auto& mono : p) {
    std::vector<int> s = mono.settings;
    s[0] = 1 - s[0];
    t[s] += s[0] == 1 ? -mono.coefficient : mono.coefficient;
  }
  return from_table(t);
}

double polynomial_value(const Polynomial& p, const Behavior& behavior) {
  const Scenario& s = behavior.scenario();
  double total = 0.0;
  for (const auto& mono : p) {
    std::vector<int> x(s.parties());
    for (int i = 0; i < s.parties(); ++i) x[i] = std::max(mono.settings[i], 0);
    std::size_t row = 0;
    for (int i = 0; i < s.parties(); ++i) row = row * s.settings(i) + x[i];
    double e = 0.0;
    for (std::size_t a = 0; a < s.num_outcomes(); ++a) {
      int sign = 1;
      std::size_t rest = a;
      for (int i = s.parties() - 1; i >= 0; --i) {
        const int outcome = static_cast<int>(rest % s.outcomes());
        rest /= s.outcomes();
        if (mono.settings[i] >= 0 && outcome == 1) sign = -sign;
      }
      e += sign * behavior.prob(row, a);
    }
    total += mono.coefficient * e;
  }
  return total;
}

Extremum local_extremum(const Polynomial& p, const std::vector<int>& settings, bool maximize) {
  std::vector<int> offset(settings.size() + 1, 0);
  for (std::size_t i = 0; i < settings.size(); ++i) offset[i + 1] = offset[i] + settings[i];
  const int bits = offset.back();
  Extremum best{maximize ? -1e300 : 1e300, 0};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    double v = 0.0;
    for (const auto& mono : p) {
      double term = mono.coefficient;
      for (std::size_t i = 0; i < settings.size(); ++i) {
        if (mono.settings[i] < 0) continue;
        if ((mask >> (offset[i] + mono.settings[i])) & 1) term = -term;
      }
      v += term;
    }
    const bool better = maximize ? v > best.value + 1e-9 : v < best.value - 1e-9;
    if (better) {
      best = {v, 1};
    } else if (std::abs(v - best.value) <= 1e-9) {
      ++best.count;
    }
  }
  return best;
}

double chained_modular_value(int m, int d, const Behavior& behavior) {
  auto mod = [d](int v) { return ((v % d) + d) % d; };
  // <[A_x - B_y + shift]> from the (x, y) row.
  auto bracket = [&](int x, int y, int sign_a, int shift) {
    double e = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const int r = sign_a > 0 ? mod(a - b + shift) : mod(b - a + shift);
        e += r * behavior.prob(x * m + y, a * d + b);
      }
    }
    return e;
  };
  double total = 0.0;
  for (int i = 0; i < m; ++i) total += bracket(i, i, +1, 0);
  for (int i = 0; i + 1 < m; ++i) total += bracket(i + 1, i, -1, 0);
  total += bracket(0, m - 1, -1, -1);
  return total;
}

Extremum chained_modular_local_min(int m, int d) {
  auto mod = [d](int v) { return ((v % d) + d) % d; };
  std::vector<int> a(m, 0), b(m, 0);
  Extremum best{1e300, 0};
  std::uint64_t total = 1;
  for (int k = 0; k < 2 * m; ++k) total *= d;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = 0; i < m; ++i) {
      a[i] = static_cast<int>(rest % d);
      rest /= d;
      b[i] = static_cast<int>(rest % d);
      rest /= d;
    }
    int v = 0;
    for (int i = 0; i < m; ++i) v += mod(a[i] - b[i]);
    for (int i = 0; i + 1 < m; ++i) v += mod(b[i] - a[i + 1]);
    v += mod(b[m - 1] - a[0] - 1);
    if (v < best.value) {
      best = {static_cast<double>(v), 1};
    } else if (v == best.value) {
      ++best.count;
    }
  }
  return best;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Eigen::Matrix2cd xz_observable(double t) { return std::cos(t) * pauli_z() + std::sin(t) * pauli_x(); }

Eigen::Matrix2cd equatorial_observable(double p) { return std::cos(p) * pauli_x() + std::sin(p) * pauli_y(); }

double top_eigenvalue(const Polynomial& p, const std::vector<std::vector<Eigen::Matrix2cd>>& observables) {
  const std::size_t n = observables.size();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& mono : p) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::MatrixXcd factor =
          mono.settings[i] < 0 ? Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()) : Eigen::MatrixXcd(observables[i][mono.settings[i]]);
      term = kron(term, factor);
    }
    op += mono.coefficient * term;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

GridResult grid_zoom_maximize(const std::function<double(const std::vector<double>&)>& f, int dims, int coarse,
                              int keep) {
  std::vector<std::pair<double, std::vector<double>>> grid;
  std::vector<int> idx(dims, 0);
  while (true) {
    std::vector<double> angles(dims);
    for (int k = 0; k < dims; ++k) angles[k] = kTwoPi * idx[k] / coarse;
    grid.emplace_back(f(angles), angles);
    int k = dims - 1;
    while (k >= 0 && ++idx[k] == coarse) idx[k--] = 0;
    if (k < 0) break;
  }
  std::partial_sort(grid.begin(), grid.begin() + std::min<std::size_t>(keep, grid.size()), grid.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  GridResult best{-1e300, {}};
  for (int s = 0; s < keep && s < static_cast<int>(grid.size()); ++s) {
    auto [value, center] = grid[s];
    double step = kTwoPi / coarse / 2;
    while (step > 1e-10) {
      bool moved = false;
      for (int k = 0; k < dims; ++k) {
        for (double dir : {-1.0, 1.0}) {
          std::vector<double> trial = center;
          trial[k] += dir * step;
          const double v = f(trial);
          if (v > value) {
            value = v;
            center = std::move(trial);
            moved = true;
          }
        }
      }
      if (!moved) step /= 2;
    }
    if (value > best.value) best = {value, center};
  }
  return best;
}

GridResult tilted_grid_oracle(double eta) {
  const Polynomial p = tilted_polynomial(eta);
  return grid_zoom_maximize(
      [&](const std::vector<double>& t) {
        return top_eigenvalue(p, {{pauli_z(), xz_observable(t[0])}, {xz_observable(t[1]), xz_observable(t[2])}});
      },
      3, 36, 8);
}

GridResult chained3_grid_oracle() {
  const Polynomial p = chained_polynomial(3);
  return grid_zoom_maximize(
      [&](const std::vector<double>& t) {
        return top_eigenvalue(p, {{pauli_z(), xz_observable(t[0]), xz_observable(t[1])},
                                  {xz_observable(t[2]), xz_observable(t[3]), xz_observable(t[4])}});
      },
      5, 12, 6);
}

GridResult mermin3_grid_oracle() {
  const Polynomial p = mermin_polynomial(3);
  return grid_zoom_maximize(
      [&](const std::vector<double>& t) {
        return top_eigenvalue(p, {{pauli_x(), equatorial_observable(t[0])},
                                  {equatorial_observable(t[1]), equatorial_observable(t[2])},
                                  {equatorial_observable(t[3]), equatorial_observable(t[4])}});
      },
      5, 8, 6);
}

int symmetry_count_222(const std::vector<double>& table) {
  int count = 0;
  // Per party: input swap bit, then an outcome flip bit for each source setting.
  for (int code = 1; code < 64; ++code) {
    const int swap_a = code & 1, flip_a0 = (code >> 1) & 1, flip_a1 = (code >> 2) & 1;
    const int swap_b = (code >> 3) & 1, flip_b0 = (code >> 4) & 1, flip_b1 = (code >> 5) & 1;
    std::vector<double> image(16, 0.0);
    for (int xa = 0; xa < 2; ++xa) {
      for (int xb = 0; xb < 2; ++xb) {
        for (int aa = 0; aa < 2; ++aa) {
          for (int ab = 0; ab < 2; ++ab) {
            const int ya = xa ^ swap_a, yb = xb ^ swap_b;
            const int ba = aa ^ (xa == 0 ? flip_a0 : flip_a1);
            const int bb = ab ^ (xb == 0 ? flip_b0 : flip_b1);
            image[(2 * ya + yb) * 4 + 2 * ba + bb] = table[(2 * xa + xb) * 4 + 2 * aa + ab];
          }
        }
      }
    }
    if (image == table) ++count;
  }
  return count;
}

}  // namespace bellcert::testing::oracle
