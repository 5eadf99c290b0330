// Copyright 2026 The charge_eq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "charge_eq/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "charge_eq/errors.hpp"

namespace charge_eq::poly {

namespace {

template <typename T>
T horner(std::span<const double> c, T x) {
  T acc{0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double evaluate(std::span<const double> c, double x) { return horner(c, x); }

std::complex<double> evaluate(std::span<const double> c,
                              std::complex<double> z) {
  return horner(c, z);
}

Coefficients derivative(std::span<const double> c) {
  if (c.size() <= 1) return {};
  Coefficients out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k)
    out[k - 1] = static_cast<double>(k) * c[k];
  return out;
}

Coefficients add(std::span<const double> a, std::span<const double> b) {
  Coefficients out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

Coefficients multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Coefficients out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Coefficients scale(std::span<const double> a, double factor) {
  Coefficients out(a.begin(), a.end());
  for (auto& v : out) v *= factor;
  return out;
}

Coefficients trim(std::span<const double> c) {
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == 0.0) --n;
  return Coefficients(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
}

int degree(std::span<const double> c) {
  return static_cast<int>(trim(c).size()) - 1;
}

double max_abs(std::span<const double> c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

Division divide(std::span<const double> numerator,
                std::span<const double> divisor) {
  const Coefficients den = trim(divisor);
  if (den.empty()) throw ValidationError("polynomial division by zero");
  const std::size_t dd = den.size() - 1;
  Coefficients rem(numerator.begin(), numerator.end());
  if (rem.size() <= dd) {
    rem.resize(dd, 0.0);
    return {{}, rem};
  }
  const std::size_t qd = rem.size() - 1 - dd;
  Coefficients quot(qd + 1, 0.0);
  const double lead = den.back();
  for (std::size_t k = qd + 1; k-- > 0;) {
    const double q = rem[k + dd] / lead;
    quot[k] = q;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * den[j];
    rem[k + dd] = 0.0;
  }
  rem.resize(dd);
  return {quot, rem};
}

Coefficients taylor_shift(std::span<const double> c, double shift) {
  Coefficients out(c.begin(), c.end());
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k-- > i;) out[k] += shift * out[k + 1];
  return out;
}

Coefficients from_roots_centered(std::span<const double> roots,
                                 double center) {
  std::vector<double> t(roots.begin(), roots.end());
  for (auto& v : t) v -= center;
  std::sort(t.begin(), t.end());
  Coefficients out{1.0};
  std::size_t lo = 0, hi = t.size();
  while (hi - lo >= 2) {
    const double a = t[lo++], b = t[--hi];
    const double quad[3] = {a * b, -(a + b), 1.0};
    out = multiply(out, quad);
  }
  if (hi - lo == 1) {
    const double lin[2] = {-t[lo], 1.0};
    out = multiply(out, lin);
  }
  return out;
}

Coefficients from_roots(std::span<const double> roots) {
  if (roots.empty()) return {1.0};
  double center = 0.0;
  for (double r : roots) center += r;
  center /= static_cast<double>(roots.size());
  return taylor_shift(from_roots_centered(roots, center), -center);
}

std::vector<std::complex<double>> roots(std::span<const double> c) {
  const Coefficients p = trim(c);
  const int d = static_cast<int>(p.size()) - 1;
  if (d < 1) return {};
  if (d == 1) return {std::complex<double>(-p[0] / p[1], 0.0)};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[i] / p[d];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> out(solver.eigenvalues().begin(),
                                        solver.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace charge_eq::poly
