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

#ifndef CHARGE_EQ_ASYMPTOTICS_HPP_
#define CHARGE_EQ_ASYMPTOTICS_HPP_

#include <complex>
#include <span>
#include <vector>

#include "charge_eq/classical.hpp"
#include "charge_eq/errors.hpp"

// Limiting zero distributions.
//
// For poles a_0 < ... < a_p and interval masses theta_1..theta_p the
// constrained equilibrium measure is described through auxiliary points
// beta_1 <= ... <= beta_{p-1} and
//
//   H(z) = sqrt(R(z) / A(z)),   R = prod (z - beta_j),   A = prod (z - a_i),
//
// normalized so that z H(z) -> 1. The support is the closure of {Z = 1}
// where Z counts poles minus betas up to x, the density there is |H| / pi,
// and off the support the Cauchy transform equals H.
namespace charge_eq::asymptotics {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Betas closer than this to a pole are snapped onto it and cancel it.
inline constexpr double kPoleSnap = 1e-10;

/// #{poles <= x} - #{betas <= x}.
int counting_function(std::span<const double> poles,
                      std::span<const double> betas, double x);

/// Closure of {x : counting_function(x) == 1} as disjoint closed intervals.
std::vector<Interval> support_of(std::span<const double> poles,
                                 std::span<const double> betas);

struct BetaOptions {
  double tolerance = 1e-10;        // max |Im int H + pi theta_j|
  int max_iterations = 100;
  double jacobian_step = 1e-6;
  double quadrature_tolerance = 1e-12;
};

class BetaSolveError : public ConvergenceError {
 public:
  BetaSolveError(const std::string& what, std::vector<double> betas,
                 std::vector<double> residuals, int iterations);
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

struct DensityValue {
  double value = 0.0;
  bool in_support = false;
};

class EquilibriumMeasure {
 public:
  /// Solves for the betas. Requires p >= 1, strictly increasing poles and
  /// positive masses summing to one. Throws ValidationError or
  /// BetaSolveError.
  static EquilibriumMeasure solve(std::vector<double> poles,
                                  std::vector<double> masses,
                                  const BetaOptions& options = {});
  /// Arcsine law on [-1, 1]: poles (-1, 1), mass 1, no betas.
  static EquilibriumMeasure arcsine();
  /// A measure with caller-supplied betas (no solve). Betas are sorted,
  /// clamped to [a_0, a_p] and snapped onto nearby poles.
  static EquilibriumMeasure with_betas(std::vector<double> poles,
                                       std::vector<double> masses,
                                       std::vector<double> betas);

  const std::vector<double>& poles() const { return poles_; }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<double>& betas() const { return betas_; }
  const std::vector<Interval>& support() const { return support_; }
  /// Sign s in cauchy_transform = s * H. Always +1 with the principal
  /// factor-wise branch, which already satisfies z H(z) -> 1.
  int branch_sign() const { return 1; }

  /// H(z) as a product of principal square roots, one per factor. On the
  /// real axis this is the limit from the upper half plane.
  std::complex<double> h(std::complex<double> z) const;

  DensityValue density(double x) const;

  /// Throws ValidationError when z lies on the support.
  std::complex<double> cauchy_transform(std::complex<double> z) const;

  /// Measure of [lo, hi].
  double mass_between(double lo, double hi) const;
  double cdf(double x) const;
  /// Measure of each gap (a_{j-1}, a_j), j = 1..p.
  std::vector<double> interval_masses() const;
  /// Im int_{a_{j-1}}^{a_j} H(x + i0) dx + pi theta_j, j = 1..p. The first
  /// p - 1 are the defining equations; the last follows from the total mass.
  std::vector<double> beta_residuals() const;

  double quadrature_tolerance() const { return quadrature_tolerance_; }

 private:
  friend std::vector<double> solve_betas(std::span<const double> poles,
                                         std::span<const double> masses,
                                         const BetaOptions& options);

  EquilibriumMeasure(std::vector<double> poles, std::vector<double> masses,
                     std::vector<double> betas, double quadrature_tolerance);

  double abs_h(double x) const;
  // |H| at x = lo + from_lo = hi - from_hi for a piece [lo, hi] that has no
  // pole or beta strictly inside it.
  double abs_h_piece(double lo, double hi, double from_lo, double from_hi) const;
  double imag_h_integral(double lo, double hi) const;

  std::vector<double> poles_;
  std::vector<double> masses_;
  std::vector<double> betas_;
  // Poles and betas left after exact cancellation.
  std::vector<double> active_poles_;
  std::vector<double> active_betas_;
  std::vector<Interval> support_;
  double quadrature_tolerance_;
};

/// Betas for the given poles and masses; empty for p = 1.
std::vector<double> solve_betas(std::span<const double> poles,
                                std::span<const double> masses,
                                const BetaOptions& options = {});

/// Normalized zero counting measure of a finite point set.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> points);
  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Fraction of points <= x.
  double cdf(double x) const;

 private:
  std::vector<double> points_;
};

/// sup |F_empirical - F_measure| over the jump points of the empirical CDF,
/// both one-sided limits included.
double ks_distance(const EmpiricalDistribution& empirical,
                   const EquilibriumMeasure& measure);

/// p_n'(z) / (n p_n(z)). Throws ValidationError at a zero of p_n.
std::complex<double> normalized_log_derivative(const classical::Family& family,
                                               int n, std::complex<double> z);

/// Relative residual of the Riccati form of the Jacobi equation,
///   h'/n + h^2 + ((a+1)/(z-1) + (b+1)/(z+1)) h/n - (n+a+b+1)/(n(z^2-1)),
/// divided by the largest of its four terms. Jacobi families only.
double riccati_residual(const classical::Family& family, int n,
                        std::complex<double> z);

}  // namespace charge_eq::asymptotics

#endif  // CHARGE_EQ_ASYMPTOTICS_HPP_
