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

#ifndef CHARGE_EQ_TESTS_ORACLES_HPP_
#define CHARGE_EQ_TESTS_ORACLES_HPP_

// Reference computations used by the tests. None of them call into the
// library: values are obtained by brute force in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Real = long double;

/// Monic orthogonal polynomial by its three-term recurrence,
///   q_{k+1}(x) = (x - a_k) q_k(x) - b_k q_{k-1}(x),
/// with a_k, b_k written out from the closed forms below.
inline Real monic_jacobi(Real alpha, Real beta, int n, Real x) {
  Real prev = 1.0L;
  Real cur = x - (beta - alpha) / (alpha + beta + 2.0L);
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const Real s = 2.0L * k + alpha + beta;
    const Real a = (beta * beta - alpha * alpha) / (s * (s + 2.0L));
    // For k = 1 the factor (k + alpha + beta) = (s - 1) is cancelled by hand.
    const Real b = k == 1 ? 4.0L * (1.0L + alpha) * (1.0L + beta) / (s * s * (s + 1.0L))
                          : 4.0L * k * (k + alpha) * (k + beta) * (k + alpha + beta) /
                                (s * s * (s + 1.0L) * (s - 1.0L));
    const Real next = (x - a) * cur - b * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Real monic_laguerre(Real alpha, int n, Real x) {
  Real prev = 1.0L, cur = x - (alpha + 1.0L);
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const Real next = (x - (2.0L * k + alpha + 1.0L)) * cur - k * (k + alpha) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Real monic_hermite(int n, Real x) {
  Real prev = 1.0L, cur = x;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const Real next = x * cur - 0.5L * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Bisection to the last bit on a bracketing interval.
inline double bisect(const std::function<Real(Real)>& f, Real lo, Real hi) {
  Real flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const Real mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Real fm = f(mid);
    if (fm == 0.0L) return static_cast<double>(mid);
    if ((fm < 0.0L) == (flo < 0.0L)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

/// Every sign change of f on the sample grid, refined by bisection.
inline std::vector<double> roots_on_grid(const std::function<Real(Real)>& f,
                                         const std::vector<Real>& grid) {
  std::vector<double> roots;
  Real prev = f(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Real cur = f(grid[i]);
    if (cur == 0.0L) {
      roots.push_back(static_cast<double>(grid[i]));
    } else if (prev != 0.0L && (cur < 0.0L) != (prev < 0.0L)) {
      roots.push_back(bisect(f, grid[i - 1], grid[i]));
    }
    prev = cur;
  }
  return roots;
}

inline std::vector<double> jacobi_zeros(double alpha, double beta, int n) {
  std::vector<Real> grid;
  const int m = 64 * n + 64;
  for (int i = m; i >= 0; --i)
    grid.push_back(std::cos(std::numbers::pi_v<Real> * i / m));
  grid.front() = -1.0L;
  grid.back() = 1.0L;
  return roots_on_grid(
      [&](Real x) { return monic_jacobi(alpha, beta, n, x); }, grid);
}

inline std::vector<double> laguerre_zeros(double alpha, int n) {
  std::vector<Real> grid;
  const Real top = std::sqrt(4.0L * n + 2.0L * alpha + 20.0L);
  const int m = 256 * n + 256;
  for (int i = 0; i <= m; ++i) {
    const Real r = top * i / m;
    grid.push_back(r * r);
  }
  return roots_on_grid([&](Real x) { return monic_laguerre(alpha, n, x); },
                       grid);
}

inline std::vector<double> hermite_zeros(int n) {
  std::vector<Real> grid;
  const Real top = std::sqrt(2.0L * n + 1.0L) + 2.0L;
  const int m = 256 * n + 257;
  for (int i = 0; i <= m; ++i) grid.push_back(-top + 2.0L * top * i / m);
  return roots_on_grid([&](Real x) { return monic_hermite(n, x); }, grid);
}

/// E = -sum_{j<k} ln|x_k - x_j| + sum phi(x_k) for fixed charges (loc, mass)
/// and a polynomial smooth part.
struct Field {
  std::vector<std::pair<Real, Real>> charges;
  std::vector<Real> smooth;

  Real phi(Real x) const {
    Real v = 0.0L, xp = 1.0L;
    for (Real c : smooth) {
      v += c * xp;
      xp *= x;
    }
    for (auto [loc, m] : charges) v -= m * std::log(std::abs(x - loc));
    return v;
  }
};

inline Real energy(const std::vector<Real>& x, const Field& f) {
  Real e = 0.0L;
  for (std::size_t k = 0; k < x.size(); ++k) {
    e += f.phi(x[k]);
    for (std::size_t j = 0; j < k; ++j) e -= std::log(std::abs(x[k] - x[j]));
  }
  return e;
}

/// Composite midpoint rule in theta for an integrand g(t) on [c, d] carrying
/// inverse square root end behaviour, t = c + (d - c)(1 - cos theta)/2.
inline std::complex<double> chebyshev_midpoint(
    const std::function<std::complex<double>(double)>& g, double c, double d,
    int m) {
  std::complex<Real> s = 0.0L;
  for (int i = 0; i < m; ++i) {
    const Real th = std::numbers::pi_v<Real> * (i + 0.5L) / m;
    const Real t = c + (d - c) * (1.0L - std::cos(th)) / 2.0L;
    const Real jac = (d - c) * std::sin(th) / 2.0L;
    const auto v = g(static_cast<double>(t));
    s += std::complex<Real>(v.real(), v.imag()) * jac;
  }
  s *= std::numbers::pi_v<Real> / m;
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// Random sorted distinct points in (lo, hi).
inline std::vector<double> sorted_uniform(std::mt19937_64& rng, int n, double lo,
                                          double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x;
  while (static_cast<int>(x.size()) < n) {
    const double v = u(rng);
    bool fresh = true;
    for (double w : x) fresh = fresh && std::abs(v - w) > 1e-3 * (hi - lo) / n;
    if (fresh) x.push_back(v);
  }
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace oracle

#endif  // CHARGE_EQ_TESTS_ORACLES_HPP_
