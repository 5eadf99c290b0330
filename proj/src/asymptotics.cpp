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

#include "charge_eq/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "charge_eq/quadrature.hpp"

namespace charge_eq::asymptotics {

namespace {

constexpr double kPi = std::numbers::pi;

// Sorted, deduplicated poles and betas.
std::vector<double> breakpoints(std::span<const double> poles,
                                std::span<const double> betas) {
  std::vector<double> b(poles.begin(), poles.end());
  b.insert(b.end(), betas.begin(), betas.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

int count_above(std::span<const double> v, double x) {
  return static_cast<int>(std::count_if(v.begin(), v.end(),
                                        [x](double a) { return a > x; }));
}

void validate_poles_masses(std::span<const double> poles,
                           std::span<const double> masses) {
  if (poles.size() < 2) throw ValidationError("need at least two poles");
  if (masses.size() + 1 != poles.size())
    throw ValidationError("need one mass per gap between poles");
  for (std::size_t i = 1; i < poles.size(); ++i)
    if (!(poles[i] > poles[i - 1]))
      throw ValidationError("poles must be strictly increasing");
  double total = 0.0;
  for (double m : masses) {
    if (!(m > 0.0)) throw ValidationError("masses must be positive");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("masses must sum to one");
}

std::vector<double> normalize_betas(std::span<const double> poles,
                                    std::vector<double> betas) {
  for (auto& b : betas) {
    b = std::clamp(b, poles.front(), poles.back());
    for (double a : poles)
      if (std::abs(b - a) < kPoleSnap) b = a;
  }
  std::sort(betas.begin(), betas.end());
  return betas;
}

double arcsine_cdf(double x, double lo, double hi) {
  const double u = std::clamp((2.0 * x - lo - hi) / (hi - lo), -1.0, 1.0);
  return 0.5 + std::asin(u) / kPi;
}

// Starting betas: each beta_j sits next to the interior pole a_j, on the
// side of the gap that must give up mass relative to the arcsine law on
// [a_0, a_p], displaced in proportion to the mass imbalance.
std::vector<double> initial_betas(std::span<const double> poles,
                                  std::span<const double> masses) {
  const std::size_t p = masses.size();
  std::vector<double> betas(p - 1);
  double cumulative = 0.0;
  for (std::size_t j = 1; j < p; ++j) {
    cumulative += masses[j - 1];
    const double aj = poles[j];
    const double d = cumulative - arcsine_cdf(aj, poles.front(), poles.back());
    if (d > 0.0) {
      betas[j - 1] = aj + std::min(d / masses[j], 0.9) * (poles[j + 1] - aj);
    } else {
      betas[j - 1] = aj - std::min(-d / masses[j - 1], 0.9) * (aj - poles[j - 1]);
    }
  }
  return betas;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

int counting_function(std::span<const double> poles,
                      std::span<const double> betas, double x) {
  int z = 0;
  for (double a : poles) z += a <= x ? 1 : 0;
  for (double b : betas) z -= b <= x ? 1 : 0;
  return z;
}

std::vector<Interval> support_of(std::span<const double> poles,
                                 std::span<const double> betas) {
  const auto b = breakpoints(poles, betas);
  std::vector<Interval> out;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double mid = 0.5 * (b[k] + b[k + 1]);
    if (counting_function(poles, betas, mid) != 1) continue;
    if (!out.empty() && out.back().hi == b[k]) {
      out.back().hi = b[k + 1];
    } else {
      out.push_back({b[k], b[k + 1]});
    }
  }
  return out;
}

BetaSolveError::BetaSolveError(const std::string& what,
                               std::vector<double> betas,
                               std::vector<double> residuals, int iterations)
    : ConvergenceError(what, std::move(betas), max_abs(residuals), iterations),
      residuals_(std::move(residuals)) {}

EquilibriumMeasure::EquilibriumMeasure(std::vector<double> poles,
                                       std::vector<double> masses,
                                       std::vector<double> betas,
                                       double quadrature_tolerance)
    : poles_(std::move(poles)),
      masses_(std::move(masses)),
      betas_(std::move(betas)),
      quadrature_tolerance_(quadrature_tolerance) {
  active_poles_ = poles_;
  for (double b : betas_) {
    const auto it = std::find(active_poles_.begin(), active_poles_.end(), b);
    if (it != active_poles_.end()) {
      active_poles_.erase(it);
    } else {
      active_betas_.push_back(b);
    }
  }
  support_ = support_of(poles_, betas_);
}

EquilibriumMeasure EquilibriumMeasure::with_betas(std::vector<double> poles,
                                                  std::vector<double> masses,
                                                  std::vector<double> betas) {
  validate_poles_masses(poles, masses);
  if (betas.size() + 2 != poles.size())
    throw ValidationError("need p - 1 betas");
  betas = normalize_betas(poles, std::move(betas));
  return EquilibriumMeasure(std::move(poles), std::move(masses),
                            std::move(betas), BetaOptions{}.quadrature_tolerance);
}

EquilibriumMeasure EquilibriumMeasure::arcsine() {
  return with_betas({-1.0, 1.0}, {1.0}, {});
}

EquilibriumMeasure EquilibriumMeasure::solve(std::vector<double> poles,
                                             std::vector<double> masses,
                                             const BetaOptions& options) {
  auto betas = solve_betas(poles, masses, options);
  return with_betas(std::move(poles), std::move(masses), std::move(betas));
}

std::complex<double> EquilibriumMeasure::h(std::complex<double> z) const {
  if (z.imag() == 0.0) z = {z.real(), 0.0};  // +0 selects the upper limit
  std::complex<double> v = 1.0;
  for (double b : active_betas_) v *= std::sqrt(z - b);
  for (double a : active_poles_) v /= std::sqrt(z - a);
  return v;
}

double EquilibriumMeasure::abs_h(double x) const {
  double num = 1.0, den = 1.0;
  for (double b : active_betas_) num *= std::abs(x - b);
  for (double a : active_poles_) den *= std::abs(x - a);
  return std::sqrt(num) / std::sqrt(den);
}

double EquilibriumMeasure::abs_h_piece(double lo, double hi, double from_lo,
                                       double from_hi) const {
  const auto distance = [&](double c) {
    if (c <= lo) return (lo - c) + from_lo;
    if (c >= hi) return (c - hi) + from_hi;
    return std::abs(lo + from_lo - c);
  };
  double num = 1.0, den = 1.0;
  for (double b : active_betas_) num *= distance(b);
  for (double a : active_poles_) den *= distance(a);
  return std::sqrt(num) / std::sqrt(den);
}

DensityValue EquilibriumMeasure::density(double x) const {
  for (const auto& s : support_) {
    if (x >= s.lo && x <= s.hi) return {abs_h(x) / kPi, true};
  }
  return {0.0, false};
}

std::complex<double> EquilibriumMeasure::cauchy_transform(
    std::complex<double> z) const {
  if (z.imag() == 0.0) {
    for (const auto& s : support_)
      if (z.real() >= s.lo && z.real() <= s.hi)
        throw ValidationError("Cauchy transform evaluated on the support");
  }
  return static_cast<double>(branch_sign()) * h(z);
}

double EquilibriumMeasure::mass_between(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  // Integrate piecewise between consecutive breakpoints so every piece has
  // its singular behaviour only at its ends.
  const auto b = breakpoints(poles_, betas_);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double mid = 0.5 * (b[k] + b[k + 1]);
    if (counting_function(poles_, betas_, mid) != 1) continue;
    const double c = std::max(b[k], lo), d = std::min(b[k + 1], hi);
    if (!(d > c)) continue;
    total += quadrature::endpoint_singular_offsets(
        [this, c, d](double u, double v) { return abs_h_piece(c, d, u, v); }, c,
        d, quadrature_tolerance_);
  }
  return total / kPi;
}

double EquilibriumMeasure::cdf(double x) const {
  return mass_between(poles_.front(), std::min(x, poles_.back()));
}

std::vector<double> EquilibriumMeasure::interval_masses() const {
  std::vector<double> out;
  for (std::size_t j = 1; j < poles_.size(); ++j)
    out.push_back(mass_between(poles_[j - 1], poles_[j]));
  return out;
}

double EquilibriumMeasure::imag_h_integral(double lo, double hi) const {
  const auto b = breakpoints(poles_, betas_);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double c = std::max(b[k], lo), d = std::min(b[k + 1], hi);
    if (!(d > c)) continue;
    const double mid = 0.5 * (b[k] + b[k + 1]);
    // Each factor (x - c)^(+-1/2) with c > x contributes i^(+-1) from above.
    const int power = count_above(betas_, mid) - count_above(poles_, mid);
    const int r = ((power % 4) + 4) % 4;  // i^r
    const double imag_unit = r == 1 ? 1.0 : (r == 3 ? -1.0 : 0.0);
    if (imag_unit == 0.0) continue;
    total += imag_unit * quadrature::endpoint_singular_offsets(
                             [this, c, d](double u, double v) {
                               return abs_h_piece(c, d, u, v);
                             },
                             c, d, quadrature_tolerance_);
  }
  return total;
}

std::vector<double> EquilibriumMeasure::beta_residuals() const {
  std::vector<double> out;
  for (std::size_t j = 1; j < poles_.size(); ++j)
    out.push_back(imag_h_integral(poles_[j - 1], poles_[j]) + kPi * masses_[j - 1]);
  return out;
}

std::vector<double> solve_betas(std::span<const double> poles,
                                std::span<const double> masses,
                                const BetaOptions& options) {
  validate_poles_masses(poles, masses);
  const std::size_t unknowns = masses.size() - 1;
  if (unknowns == 0) return {};

  // Betas are passed through unsorted and unsnapped for the Jacobian so the
  // finite-difference perturbation stays symmetric.
  const auto all_residuals = [&](const std::vector<double>& betas) {
    return EquilibriumMeasure({poles.begin(), poles.end()},
                              {masses.begin(), masses.end()}, betas,
                              options.quadrature_tolerance)
        .beta_residuals();
  };
  const auto residuals = [&](const std::vector<double>& betas) {
    auto r = all_residuals(betas);
    r.pop_back();
    return r;
  };
  std::vector<double> betas = normalize_betas(poles, initial_betas(poles, masses));
  std::vector<double> f = residuals(betas);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (max_abs(f) < options.tolerance) return betas;

    const auto n = static_cast<Eigen::Index>(unknowns);
    Eigen::MatrixXd jac(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      auto plus = betas, minus = betas;
      plus[static_cast<std::size_t>(k)] += options.jacobian_step;
      minus[static_cast<std::size_t>(k)] -= options.jacobian_step;
      const auto fp = all_residuals(plus), fm = all_residuals(minus);
      for (Eigen::Index j = 0; j < n; ++j)
        jac(j, k) = (fp[static_cast<std::size_t>(j)] - fm[static_cast<std::size_t>(j)]) /
                    (2.0 * options.jacobian_step);
    }
    Eigen::VectorXd rhs(n);
    for (Eigen::Index j = 0; j < n; ++j) rhs[j] = -f[static_cast<std::size_t>(j)];
    const Eigen::VectorXd step = jac.fullPivLu().solve(rhs);

    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      std::vector<double> trial = betas;
      for (std::size_t k = 0; k < unknowns; ++k)
        trial[k] += t * step[static_cast<Eigen::Index>(k)];
      trial = normalize_betas(poles, std::move(trial));
      const auto ft = residuals(trial);
      if (max_abs(ft) < max_abs(f)) {
        betas = std::move(trial);
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved)
      throw BetaSolveError("beta Newton iteration stalled", betas, f, it);
  }
  if (max_abs(f) < options.tolerance) return betas;
  throw BetaSolveError("beta Newton iteration hit the iteration limit", betas,
                       f, options.max_iterations);
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("empty sample");
  for (double x : points_)
    if (!std::isfinite(x)) throw ValidationError("sample points must be finite");
  std::sort(points_.begin(), points_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  const auto it = std::upper_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) /
         static_cast<double>(points_.size());
}

double ks_distance(const EmpiricalDistribution& empirical,
                   const EquilibriumMeasure& measure) {
  const auto& x = empirical.points();
  const double n = static_cast<double>(x.size());
  double d = 0.0, cdf = 0.0, prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    cdf += measure.mass_between(std::max(prev, measure.poles().front()), x[i]);
    prev = std::max(prev, x[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, above - cdf, cdf - below});
  }
  return std::clamp(d, 0.0, 1.0);
}

std::complex<double> normalized_log_derivative(const classical::Family& family,
                                               int n, std::complex<double> z) {
  if (n < 1) throw ValidationError("normalized log derivative needs n >= 1");
  const auto ld = classical::log_derivatives(family, n, z);
  if (!std::isfinite(std::abs(ld.first)))
    throw ValidationError("log derivative requested at a zero of p_n");
  return ld.first / static_cast<double>(n);
}

double riccati_residual(const classical::Family& family, int n,
                        std::complex<double> z) {
  if (family.kind != classical::Family::Kind::kJacobi)
    throw ValidationError("riccati_residual is defined for Jacobi families");
  if (n < 1) throw ValidationError("riccati_residual needs n >= 1");
  const auto ld = classical::log_derivatives(family, n, z);
  const double dn = static_cast<double>(n);
  const std::complex<double> h = ld.first / dn;
  const std::complex<double> dh = (ld.second - ld.first * ld.first) / dn;
  const std::complex<double> terms[4] = {
      dh / dn, h * h,
      ((family.alpha + 1.0) / (z - 1.0) + (family.beta + 1.0) / (z + 1.0)) * h / dn,
      -(dn + family.alpha + family.beta + 1.0) / (dn * (z * z - 1.0))};
  std::complex<double> sum = 0.0;
  double scale = 0.0;
  for (auto t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

}  // namespace charge_eq::asymptotics
