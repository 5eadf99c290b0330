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

#include "charge_eq/lame.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "charge_eq/polynomial.hpp"

namespace charge_eq::lame {

namespace {

void compositions_into(int n, int parts, std::vector<int>& prefix,
                       std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(n);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 0; first <= n; ++first) {
    prefix.push_back(first);
    compositions_into(n - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

void LameSystem::validate() const {
  if (poles.size() < 2) throw ValidationError("a Lame system needs p >= 1");
  if (residues.size() != poles.size())
    throw ValidationError("poles and residues must have equal length");
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (!std::isfinite(poles[i])) throw ValidationError("poles must be finite");
    if (i > 0 && !(poles[i] > poles[i - 1]))
      throw ValidationError("poles must be strictly increasing");
    if (!(residues[i] > 0.0) || !std::isfinite(residues[i]))
      throw ValidationError("residues must be positive");
  }
  if (degree < 0) throw ValidationError("degree must be non-negative");
  if (static_cast<int>(composition.size()) != p())
    throw ValidationError("composition must have p entries");
  int sum = 0;
  for (int c : composition) {
    if (c < 0) throw ValidationError("composition entries must be non-negative");
    sum += c;
  }
  if (sum != degree)
    throw ValidationError("composition must sum to the degree");
}

std::vector<double> LameSystem::a_polynomial() const {
  return poly::from_roots_centered(poles, 0.0);
}

std::vector<double> LameSystem::b_polynomial() const {
  std::vector<double> b;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    std::vector<double> others;
    for (std::size_t j = 0; j < poles.size(); ++j)
      if (j != i) others.push_back(poles[j]);
    b = poly::add(b, poly::scale(poly::from_roots_centered(others, 0.0),
                                 residues[i]));
  }
  return b;
}

ExternalField LameSystem::field() const { return lame_field(poles, residues); }

IntervalConstraint LameSystem::constraint() const {
  return IntervalConstraint::between(poles, composition);
}

VanVleck recover_van_vleck(std::span<const double> zeros,
                           const LameSystem& system) {
  const auto p = static_cast<std::size_t>(system.p());
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    for (double a : system.poles)
      if (zeros[k] == a) throw ValidationError("a zero coincides with a pole");
    if (k > 0 && zeros[k] == zeros[k - 1])
      throw ValidationError("zeros must be distinct");
  }
  if (zeros.empty()) return {std::vector<double>(p, 0.0), 0.0, 0.0};

  double center = 0.0;
  for (double z : zeros) center += z;
  center /= static_cast<double>(zeros.size());

  const auto y = poly::from_roots_centered(zeros, center);
  const auto a = poly::from_roots_centered(system.poles, center);
  std::vector<double> b;
  for (std::size_t i = 0; i < system.poles.size(); ++i) {
    std::vector<double> others;
    for (std::size_t j = 0; j < system.poles.size(); ++j)
      if (j != i) others.push_back(system.poles[j]);
    b = poly::add(b, poly::scale(poly::from_roots_centered(others, center),
                                 system.residues[i]));
  }
  const auto dy = poly::derivative(y);
  const auto d2y = poly::derivative(dy);
  const auto numerator = poly::add(poly::multiply(a, d2y), poly::multiply(b, dy));
  const auto division = poly::divide(numerator, y);

  VanVleck out;
  const double n_norm = poly::max_abs(numerator);
  out.remainder_norm = n_norm > 0.0 ? poly::max_abs(division.remainder) / n_norm : 0.0;
  const auto& q = division.quotient;
  const double q_norm = poly::max_abs(q);
  for (std::size_t k = p; k < q.size(); ++k)
    out.excess_degree_norm =
        std::max(out.excess_degree_norm, std::abs(q[k]) / q_norm);
  std::vector<double> shifted = poly::taylor_shift(q, -center);
  shifted.resize(std::max(shifted.size(), p), 0.0);
  shifted.resize(p);
  out.coefficients = std::move(shifted);
  return out;
}

double ode_residual(std::span<const double> zeros,
                    std::span<const double> van_vleck,
                    const LameSystem& system) {
  if (zeros.empty()) return poly::max_abs(van_vleck);
  const auto a = system.a_polynomial();
  const auto b = system.b_polynomial();
  const double lo = system.poles.front(), hi = system.poles.back();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  constexpr int kSamples = 20;
  double worst = 0.0;
  for (int j = 0; j < kSamples; ++j) {
    const double x =
        mid + half * std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * kSamples));
    double s1 = 0.0, s2 = 0.0;
    for (double z : zeros) {
      const double r = 1.0 / (x - z);
      s1 += r;
      s2 += r * r;
    }
    // Everything is divided through by E(x).
    const double t_a = poly::evaluate(a, x) * (s1 * s1 - s2);
    const double t_b = poly::evaluate(b, x) * s1;
    const double t_c = poly::evaluate(van_vleck, x);
    const double scale = std::max({std::abs(t_a), std::abs(t_b), std::abs(t_c)});
    if (scale > 0.0) worst = std::max(worst, std::abs(t_a + t_b - t_c) / scale);
  }
  return worst;
}

HeineStieltjesSolution solve(const LameSystem& system,
                             const SolverOptions& options) {
  system.validate();
  HeineStieltjesSolution sol;
  sol.composition = system.composition;
  if (system.degree == 0) {
    sol.status = Status::kConverged;
    sol.monic_e = {1.0};
    sol.van_vleck.assign(static_cast<std::size_t>(system.p()), 0.0);
    sol.hessian_positive_definite = true;
    return sol;
  }
  const auto eq = minimize(system.field(), system.constraint(), options);
  const auto x = eq.configuration.real_positions();
  sol.zeros.assign(x.begin(), x.end());
  sol.monic_e = poly::from_roots(sol.zeros);
  const auto vv = recover_van_vleck(sol.zeros, system);
  sol.van_vleck = vv.coefficients;
  sol.division_remainder_norm = vv.remainder_norm;
  sol.gradient_norm = eq.diagnostics.gradient_norm;
  sol.iterations = eq.diagnostics.iterations;
  sol.hessian_positive_definite = eq.diagnostics.hessian_positive_definite;
  sol.ode_residual = ode_residual(sol.zeros, sol.van_vleck, system);
  sol.status = Status::kConverged;
  return sol;
}

std::vector<std::vector<int>> compositions(int n, int parts) {
  if (parts < 1 || n < 0) throw ValidationError("invalid composition request");
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  compositions_into(n, parts, prefix, out);
  return out;
}

std::vector<HeineStieltjesSolution> enumerate(std::span<const double> poles,
                                              std::span<const double> residues,
                                              int n, int threads,
                                              const SolverOptions& options) {
  LameSystem base{{poles.begin(), poles.end()},
                  {residues.begin(), residues.end()},
                  n,
                  {}};
  if (base.p() < 1) throw ValidationError("a Lame system needs p >= 1");
  const auto comps = compositions(n, base.p());
  base.composition = comps.front();
  base.validate();

  std::vector<HeineStieltjesSolution> out(comps.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < comps.size(); i = next++) {
      LameSystem sys = base;
      sys.composition = comps[i];
      try {
        out[i] = solve(sys, options);
      } catch (const std::exception& e) {
        out[i].composition = comps[i];
        out[i].status = Status::kFailed;
        out[i].message = e.what();
      }
    }
  };
  const int count = std::clamp(threads, 1, static_cast<int>(comps.size()));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  return out;
}

double hausdorff_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  const auto directed = [](std::span<const double> from, std::span<const double> to) {
    double worst = 0.0;
    for (double u : from) {
      double best = std::numeric_limits<double>::infinity();
      for (double v : to) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace charge_eq::lame
