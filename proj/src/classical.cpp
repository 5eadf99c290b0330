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

#include "charge_eq/classical.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "charge_eq/errors.hpp"
#include "charge_eq/polynomial.hpp"

namespace charge_eq::classical {

namespace {

// p_n = (a x + b) p_{n-1} - c p_{n-2}
struct Step {
  double a, b, c;
};

Step step(const Family& f, int n) {
  const double al = f.alpha, be = f.beta;
  const double dn = static_cast<double>(n);
  switch (f.kind) {
    case Family::Kind::kHermite:
      return {2.0, 0.0, 2.0 * (dn - 1.0)};
    case Family::Kind::kLaguerre:
      return {-1.0 / dn, (2.0 * dn - 1.0 + al) / dn, (dn - 1.0 + al) / dn};
    case Family::Kind::kJacobi: {
      if (n == 1) return {(al + be + 2.0) / 2.0, (al - be) / 2.0, 0.0};
      const double s = 2.0 * dn + al + be;
      const double d = 2.0 * dn * (dn + al + be) * (s - 2.0);
      return {(s - 1.0) * s * (s - 2.0) / d, (s - 1.0) * (al * al - be * be) / d,
              2.0 * (dn + al - 1.0) * (dn + be - 1.0) * s / d};
    }
  }
  return {0.0, 0.0, 0.0};
}

template <typename T>
Value<T> run(const Family& f, int n, T x) {
  Value<T> prev{T(0.0), T(0.0), T(0.0)};
  Value<T> cur{T(1.0), T(0.0), T(0.0)};
  for (int k = 1; k <= n; ++k) {
    const Step s = step(f, k);
    const T lin = s.a * x + s.b;
    Value<T> next{lin * cur.value - s.c * prev.value,
                  lin * cur.derivative + s.a * cur.value - s.c * prev.derivative,
                  lin * cur.second_derivative + 2.0 * s.a * cur.derivative -
                      s.c * prev.second_derivative};
    prev = cur;
    cur = next;
  }
  return cur;
}

void require_classical(const Family& f) {
  if (!f.is_classical())
    throw ValidationError("non-classical parameters for " + f.describe());
}

}  // namespace

bool Family::is_classical() const {
  switch (kind) {
    case Kind::kJacobi:
      return alpha > -1.0 && beta > -1.0;
    case Kind::kLaguerre:
      return alpha > -1.0;
    case Kind::kHermite:
      return true;
  }
  return false;
}

std::string Family::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kJacobi:
      os << "Jacobi(" << alpha << ", " << beta << ")";
      break;
    case Kind::kLaguerre:
      os << "Laguerre(" << alpha << ")";
      break;
    case Kind::kHermite:
      os << "Hermite";
      break;
  }
  return os.str();
}

Value<double> evaluate(const Family& family, int n, double x) {
  if (n < 0) throw ValidationError("degree must be non-negative");
  return run(family, n, x);
}

Value<std::complex<double>> evaluate(const Family& family, int n,
                                     std::complex<double> z) {
  if (n < 0) throw ValidationError("degree must be non-negative");
  return run(family, n, z);
}

LogDerivatives log_derivatives(const Family& family, int n,
                               std::complex<double> z) {
  if (n < 0) throw ValidationError("degree must be non-negative");
  using C = std::complex<double>;
  C p0 = 0.0, d0 = 0.0, s0 = 0.0;
  C p1 = 1.0, d1 = 0.0, s1 = 0.0;
  for (int k = 1; k <= n; ++k) {
    const Step st = step(family, k);
    const C lin = st.a * z + st.b;
    const C p2 = lin * p1 - st.c * p0;
    const C d2 = lin * d1 + st.a * p1 - st.c * d0;
    const C s2 = lin * s1 + 2.0 * st.a * d1 - st.c * s0;
    p0 = p1, d0 = d1, s0 = s1;
    p1 = p2, d1 = d2, s1 = s2;
    const double m = std::max(std::abs(p1), std::abs(p0));
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
      const double r = 1.0 / m;
      p0 *= r, d0 *= r, s0 *= r;
      p1 *= r, d1 *= r, s1 *= r;
    }
  }
  if (p1 == C(0.0))
    throw ValidationError("log derivative requested at a zero of p_n");
  return {d1 / p1, s1 / p1};
}

double leading_coefficient(const Family& family, int n) {
  double k = 1.0;
  for (int j = 1; j <= n; ++j) k *= step(family, j).a;
  return k;
}

MonicRecurrence monic_recurrence(const Family& f, int n) {
  MonicRecurrence r;
  r.diagonal.resize(static_cast<std::size_t>(n));
  r.offdiag_sq.assign(static_cast<std::size_t>(n), 0.0);
  const double al = f.alpha, be = f.beta;
  for (int k = 0; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const auto i = static_cast<std::size_t>(k);
    switch (f.kind) {
      case Family::Kind::kHermite:
        r.diagonal[i] = 0.0;
        r.offdiag_sq[i] = dk / 2.0;
        break;
      case Family::Kind::kLaguerre:
        r.diagonal[i] = 2.0 * dk + al + 1.0;
        r.offdiag_sq[i] = dk * (dk + al);
        break;
      case Family::Kind::kJacobi: {
        const double s = 2.0 * dk + al + be;
        if (k == 0) {
          r.diagonal[i] = (be - al) / (al + be + 2.0);
        } else {
          r.diagonal[i] = (be * be - al * al) / (s * (s + 2.0));
        }
        if (k == 1) {
          // (k + a + b) cancels against (2k + a + b - 1) at k = 1.
          r.offdiag_sq[i] =
              4.0 * (1.0 + al) * (1.0 + be) / ((s * s) * (s + 1.0));
        } else if (k > 1) {
          r.offdiag_sq[i] = 4.0 * dk * (dk + al) * (dk + be) * (dk + al + be) /
                            (s * s * (s + 1.0) * (s - 1.0));
        }
        break;
      }
    }
  }
  if (n > 0) r.offdiag_sq[0] = 0.0;
  return r;
}

std::vector<double> zeros(const Family& family, int n) {
  require_classical(family);
  if (n < 1) throw ValidationError("zeros requires n >= 1");
  const MonicRecurrence rec = monic_recurrence(family, n);
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = rec.diagonal[static_cast<std::size_t>(k)];
  for (int k = 1; k < n; ++k)
    sub[k - 1] = std::sqrt(rec.offdiag_sq[static_cast<std::size_t>(k)]);

  std::vector<double> x(static_cast<std::size_t>(n));
  if (n == 1) {
    x[0] = diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = solver.eigenvalues()[k];
  }
  std::sort(x.begin(), x.end());

  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto v = run(family, n, x[k]);
      if (v.derivative == 0.0) continue;
      const double dx = v.value / v.derivative;
      // Keep the polish local: never move past half the neighbour gap.
      double room = std::numeric_limits<double>::infinity();
      if (k > 0) room = std::min(room, 0.5 * (x[k] - x[k - 1]));
      if (k + 1 < x.size()) room = std::min(room, 0.5 * (x[k + 1] - x[k]));
      if (std::abs(dx) < room) x[k] -= dx;
    }
  }
  return x;
}

std::vector<double> monic_coefficients(const Family& family, int n) {
  if (n == 0) return {1.0};
  return poly::from_roots(zeros(family, n));
}

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes = zeros(Family::jacobi(0.0, 0.0), n);
  rule.weights.resize(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = rule.nodes[k];
    const double d = run(Family::jacobi(0.0, 0.0), n, x).derivative;
    rule.weights[k] = 2.0 / ((1.0 - x * x) * d * d);
  }
  return rule;
}

}  // namespace charge_eq::classical
