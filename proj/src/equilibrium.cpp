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

#include "charge_eq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace charge_eq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_norm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double energy_of(const std::vector<double>& x, const ExternalField& field) {
  return total_energy(ChargeConfiguration::real(x), field);
}

// Largest t such that x + t d stays strictly feasible.
double max_feasible_step(const std::vector<double>& x, const Eigen::VectorXd& d,
                         const IntervalConstraint& c) {
  double t = kInf;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < c.intervals.size(); ++i) {
    const auto count = static_cast<std::size_t>(c.counts[i]);
    if (count == 0) continue;
    const auto [lo, hi] = c.intervals[i];
    const std::size_t first = offset, last = offset + count - 1;
    const double d_first = d[static_cast<Eigen::Index>(first)];
    const double d_last = d[static_cast<Eigen::Index>(last)];
    if (std::isfinite(lo) && d_first < 0.0)
      t = std::min(t, (x[first] - lo) / -d_first);
    if (std::isfinite(hi) && d_last > 0.0)
      t = std::min(t, (hi - x[last]) / d_last);
    for (std::size_t k = first; k < last; ++k) {
      const double closing = d[static_cast<Eigen::Index>(k)] -
                             d[static_cast<Eigen::Index>(k + 1)];
      if (closing > 0.0) t = std::min(t, (x[k + 1] - x[k]) / closing);
    }
    offset += count;
  }
  return t;
}

// Radius R beyond which the field pushes a charge back harder than n unit
// charges can push it out: sign * phi'(anchor + sign R) * R >= 2n.
double confining_radius(const ExternalField& field, double anchor, double sign,
                        int n) {
  double r = 1.0;
  for (int k = 0; k < 64; ++k, r *= 2.0) {
    const double x = anchor + sign * r;
    if (sign * field.derivative(x) * r >= 2.0 * n) return r;
  }
  throw ValidationError(
      "the external field does not confine charges on an unbounded interval");
}

}  // namespace

IntervalConstraint IntervalConstraint::single(double lo, double hi, int n) {
  IntervalConstraint c{{{lo, hi}}, {n}};
  c.validate();
  return c;
}

IntervalConstraint IntervalConstraint::between(
    std::span<const double> breakpoints, std::vector<int> counts) {
  IntervalConstraint c;
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    c.intervals.emplace_back(breakpoints[k - 1], breakpoints[k]);
  c.counts = std::move(counts);
  c.validate();
  return c;
}

int IntervalConstraint::total() const {
  int n = 0;
  for (int c : counts) n += c;
  return n;
}

void IntervalConstraint::validate() const {
  if (intervals.empty()) throw ValidationError("no intervals given");
  if (counts.size() != intervals.size())
    throw ValidationError("composition length must equal the interval count");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto [lo, hi] = intervals[i];
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
      throw ValidationError("each interval needs lo < hi");
    if (i > 0 && lo < intervals[i - 1].second)
      throw ValidationError("intervals must be ordered and disjoint");
    if (counts[i] < 0) throw ValidationError("counts must be non-negative");
  }
  if (total() < 1) throw ValidationError("at least one free charge is needed");
}

bool IntervalConstraint::admits(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(total())) return false;
  for (std::size_t k = 1; k < x.size(); ++k)
    if (!(x[k] > x[k - 1])) return false;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    for (int j = 0; j < counts[i]; ++j, ++offset) {
      const double v = x[offset];
      if (!(v > intervals[i].first && v < intervals[i].second)) return false;
    }
  }
  return true;
}

std::vector<double> initial_guess(const ExternalField& field,
                                  const IntervalConstraint& constraint) {
  constraint.validate();
  const int n = constraint.total();
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < constraint.intervals.size(); ++i) {
    const int m = constraint.counts[i];
    if (m == 0) continue;
    auto [lo, hi] = constraint.intervals[i];
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      const double r_left = confining_radius(field, 0.0, -1.0, n);
      const double r_right = confining_radius(field, 0.0, 1.0, n);
      lo = -r_left;
      hi = r_right;
    } else if (!std::isfinite(lo)) {
      lo = hi - confining_radius(field, hi, -1.0, n);
    } else if (!std::isfinite(hi)) {
      hi = lo + confining_radius(field, lo, 1.0, n);
    }
    const double mid = 0.5 * (lo + hi), half = 0.45 * (hi - lo);
    for (int k = m; k >= 1; --k)
      x.push_back(mid + half * std::cos(k * std::numbers::pi / (m + 1)));
  }
  return x;
}

EquilibriumResult minimize(const ExternalField& field,
                           const IntervalConstraint& constraint,
                           const SolverOptions& options,
                           std::optional<std::vector<double>> initial) {
  constraint.validate();
  std::vector<double> x =
      initial ? std::move(*initial) : initial_guess(field, constraint);
  if (!constraint.admits(x))
    throw ValidationError("initial guess violates the interval constraint");

  SolverDiagnostics diag;
  double energy = energy_of(x, field);
  if (!std::isfinite(energy))
    throw ValidationError("initial guess has infinite energy");
  diag.energy_history.push_back(energy);
  if (options.observer) options.observer(x, energy);

  const auto n = static_cast<Eigen::Index>(x.size());
  bool done = false;
  int it = 0;
  for (; it < options.max_iterations && !done; ++it) {
    const auto config = ChargeConfiguration::real(x);
    const Eigen::VectorXd g = gradient(config, field);
    const double gnorm = max_norm(g);
    const bool polish = gnorm < options.tolerance;

    const Eigen::MatrixXd h = hessian(config, field);
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    Eigen::VectorXd d;
    const bool newton = llt.info() == Eigen::Success;
    if (newton) {
      d = -llt.solve(g);
    } else {
      d = -g;
      ++diag.gradient_descent_steps;
    }
    const double full_step = max_norm(d);
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::abs(v));

    double t = std::min(1.0, 0.9 * max_feasible_step(x, d, constraint));
    const double slope = g.dot(d);
    std::vector<double> trial(x.size());
    double trial_energy = kInf;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      for (Eigen::Index k = 0; k < n; ++k)
        trial[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + t * d[k];
      if (!constraint.admits(trial)) continue;
      trial_energy = energy_of(trial, field);
      const double allowance = 16.0 * kEps * std::max(1.0, std::abs(energy));
      if (trial_energy <= energy + 1e-4 * t * slope + allowance) {
        accepted = true;
        break;
      }
    }

    if (polish) {
      // One extra step past the gradient tolerance, kept only if it does not
      // make the gradient worse.
      if (accepted) {
        const double gtrial =
            max_norm(gradient(ChargeConfiguration::real(trial), field));
        if (gtrial <= gnorm) {
          x = trial;
          energy = trial_energy;
          diag.energy_history.push_back(energy);
          diag.last_step_norm = t * full_step;
          if (options.observer) options.observer(x, energy);
        }
      }
      diag.stop_reason = "gradient";
      done = true;
      break;
    }
    if (!accepted) {
      if (newton && full_step < options.step_tolerance * scale) {
        diag.stop_reason = "step";
        done = true;
        break;
      }
      throw ConvergenceError("line search failed to decrease the energy", x,
                             gnorm, it);
    }
    x = trial;
    energy = trial_energy;
    diag.energy_history.push_back(energy);
    diag.last_step_norm = t * full_step;
    if (options.observer) options.observer(x, energy);
    if (newton && full_step < options.step_tolerance * scale) {
      diag.stop_reason = "step";
      done = true;
    }
  }

  auto config = ChargeConfiguration::real(x);
  diag.iterations = it;
  diag.energy = energy;
  diag.gradient_norm = max_norm(gradient(config, field));
  if (!done)
    throw ConvergenceError("equilibrium solver hit the iteration limit", x,
                           diag.gradient_norm, it);
  const auto report = definiteness_check(hessian(config, field));
  diag.hessian_positive_definite = report.positive_definite;
  diag.hessian_gershgorin_bound = report.min_eigenvalue_lower_bound;
  return {std::move(config), std::move(diag)};
}

// ---------------------------------------------------------------------------
// Continua

PolylineContinuum::PolylineContinuum(std::vector<std::complex<double>> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw ValidationError("a polyline needs at least two vertices");
  bool has_minus = false, has_plus = false;
  for (auto v : vertices_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ValidationError("polyline vertices must be finite");
    has_minus = has_minus || v == std::complex<double>(-1.0, 0.0);
    has_plus = has_plus || v == std::complex<double>(1.0, 0.0);
  }
  if (!has_minus || !has_plus)
    throw ValidationError("the continuum must contain -1 and +1 as vertices");
  cumulative_.push_back(0.0);
  for (std::size_t k = 1; k < vertices_.size(); ++k)
    cumulative_.push_back(cumulative_.back() +
                          std::abs(vertices_[k] - vertices_[k - 1]));
  if (!(length() > 0.0)) throw ValidationError("degenerate polyline");
}

std::size_t PolylineContinuum::segment_of(double s) const {
  // Last segment whose start is <= s, skipping zero-length segments.
  std::size_t seg = 0;
  for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
    if (cumulative_[k + 1] > cumulative_[k] && cumulative_[k] <= s) seg = k;
  }
  return seg;
}

std::complex<double> PolylineContinuum::point_at(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t k = segment_of(s);
  const double seg_len = cumulative_[k + 1] - cumulative_[k];
  const double u = std::clamp((s - cumulative_[k]) / seg_len, 0.0, 1.0);
  if (u == 1.0) return vertices_[k + 1];
  return vertices_[k] + u * (vertices_[k + 1] - vertices_[k]);
}

std::complex<double> PolylineContinuum::tangent_at(double s) const {
  const std::size_t k = segment_of(std::clamp(s, 0.0, length()));
  const auto d = vertices_[k + 1] - vertices_[k];
  return d / std::abs(d);
}

std::optional<std::complex<double>> PolylineContinuum::vertical_intersection(
    double x) const {
  std::optional<std::complex<double>> best;
  const auto consider = [&](std::complex<double> z) {
    if (!best || std::abs(z.imag()) < std::abs(best->imag())) best = z;
  };
  for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
    const auto p = vertices_[k], q = vertices_[k + 1];
    if (p.real() == q.real()) {
      if (p.real() != x) continue;
      const double lo = std::min(p.imag(), q.imag());
      const double hi = std::max(p.imag(), q.imag());
      const double y = lo <= 0.0 && hi >= 0.0 ? 0.0 : (lo > 0.0 ? lo : hi);
      consider({x, y});
      continue;
    }
    const double lo = std::min(p.real(), q.real());
    const double hi = std::max(p.real(), q.real());
    if (x < lo || x > hi) continue;
    const double u = (x - p.real()) / (q.real() - p.real());
    consider({x, p.imag() + u * (q.imag() - p.imag())});
  }
  return best;
}

ChargeConfiguration project_onto_continuum(const ChargeConfiguration& config,
                                           const PolylineContinuum& continuum) {
  const auto x = config.real_positions();
  std::vector<std::complex<double>> z;
  z.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto hit = continuum.vertical_intersection(x[k]);
    if (!hit)
      throw ProjectionError("vertical line through position " +
                                std::to_string(k) + " misses the continuum",
                            k);
    z.push_back(*hit);
  }
  return ChargeConfiguration::complex(std::move(z));
}

namespace {

struct ArclengthProblem {
  const ExternalField& field;
  const PolylineContinuum& k;

  std::vector<std::complex<double>> points(const std::vector<double>& s) const {
    std::vector<std::complex<double>> z(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) z[i] = k.point_at(s[i]);
    return z;
  }
  double energy(const std::vector<double>& s) const {
    return total_energy(ChargeConfiguration::complex(points(s)), field);
  }
  std::vector<double> grad(const std::vector<double>& s) const {
    const Eigen::VectorXd g =
        gradient(ChargeConfiguration::complex(points(s)), field);
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto t = k.tangent_at(s[i]);
      out[i] = g[static_cast<Eigen::Index>(2 * i)] * t.real() +
               g[static_cast<Eigen::Index>(2 * i + 1)] * t.imag();
    }
    return out;
  }
};

struct LocalRun {
  std::vector<double> s;
  double energy;
  double gradient_norm;
  int iterations;
  bool converged;
};

// Projected gradient descent on the box [0, L]^n with an adaptive step and
// an Armijo test.
LocalRun descend(const ArclengthProblem& prob, std::vector<double> s,
                 const ContinuumOptions& options) {
  const double len = prob.k.length();
  double e = prob.energy(s);
  double eta = 1e-2 * len;
  LocalRun run{s, e, kInf, 0, false};
  for (int it = 0; it < options.max_iterations; ++it) {
    run.iterations = it + 1;
    const auto g = prob.grad(s);
    // Projected gradient: components pushing out of the box do not count.
    double pg = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const bool stuck = (s[i] <= 0.0 && g[i] > 0.0) || (s[i] >= len && g[i] < 0.0);
      if (!stuck) pg = std::max(pg, std::abs(g[i]));
    }
    run.gradient_norm = pg;
    if (pg < options.tolerance) {
      run.converged = true;
      break;
    }
    bool moved = false;
    std::vector<double> trial(s.size());
    for (int tries = 0; tries < 60; ++tries, eta *= 0.5) {
      double decrease = 0.0, step = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        trial[i] = std::clamp(s[i] - eta * g[i], 0.0, len);
        decrease += g[i] * (s[i] - trial[i]);
        step = std::max(step, std::abs(s[i] - trial[i]));
      }
      if (step < 1e-15 * len) break;
      const double te = prob.energy(trial);
      if (std::isfinite(te) && te <= e - 1e-4 * decrease) {
        s = trial;
        e = te;
        moved = true;
        eta *= 2.0;
        break;
      }
    }
    if (!moved) {
      // Stationary up to the resolution of the arclength parameter, e.g. at a
      // kink of K.
      run.converged = true;
      break;
    }
  }
  run.s = s;
  run.energy = e;
  return run;
}

}  // namespace

ContinuumResult minimize_on_continuum(const ExternalField& field,
                                      const PolylineContinuum& continuum,
                                      int n, const ContinuumOptions& options) {
  if (n < 1) throw ValidationError("minimize_on_continuum requires n >= 1");
  const ArclengthProblem prob{field, continuum};
  const double len = continuum.length();

  std::vector<std::vector<double>> starts;
  try {
    const auto real_eq = minimize(field, IntervalConstraint::single(-1.0, 1.0, n));
    const auto projected =
        project_onto_continuum(real_eq.configuration, continuum);
    // Recover arclength parameters by locating each projected point.
    std::vector<double> s;
    for (auto z : projected.complex_positions()) {
      double best_s = 0.0, best_d = kInf;
      const auto& v = continuum.vertices();
      double acc = 0.0;
      for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const auto seg = v[k + 1] - v[k];
        const double seg_len = std::abs(seg);
        if (seg_len > 0.0) {
          const double u = std::clamp(
              std::real((z - v[k]) * std::conj(seg)) / (seg_len * seg_len), 0.0, 1.0);
          const double d = std::abs(v[k] + u * seg - z);
          if (d < best_d) best_d = d, best_s = acc + u * seg_len;
        }
        acc += seg_len;
      }
      s.push_back(best_s);
    }
    starts.push_back(std::move(s));
  } catch (const std::exception&) {
    // The field may not confine charges to (-1, 1); fall back to spreads.
  }
  for (int j = 0; static_cast<int>(starts.size()) < options.starts; ++j) {
    std::vector<double> s(static_cast<std::size_t>(n));
    const double shift = static_cast<double>(j) / (options.starts + 1.0);
    for (int k = 0; k < n; ++k)
      s[static_cast<std::size_t>(k)] = len * (k + 0.5 + 0.5 * shift) / (n + 0.5);
    starts.push_back(std::move(s));
    if (j > 4 * options.starts) break;
  }

  std::optional<LocalRun> best;
  int tried = 0;
  for (const auto& s0 : starts) {
    if (!std::isfinite(prob.energy(s0))) continue;
    ++tried;
    auto run = descend(prob, s0, options);
    if (!best || run.energy < best->energy) best = std::move(run);
  }
  if (!best)
    throw ConvergenceError("no start on the continuum has finite energy", {},
                           kInf, 0);
  return {ChargeConfiguration::complex(prob.points(best->s)), best->energy,
          best->gradient_norm, best->iterations, tried, best->converged};
}

}  // namespace charge_eq
