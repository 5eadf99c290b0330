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

#ifndef CHARGE_EQ_EQUILIBRIUM_HPP_
#define CHARGE_EQ_EQUILIBRIUM_HPP_

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "charge_eq/energy.hpp"
#include "charge_eq/errors.hpp"
#include "charge_eq/fields.hpp"

namespace charge_eq {

/// Open intervals (lo, hi), ordered and pairwise disjoint, with the number
/// of free charges each must contain. Ends may be infinite.
struct IntervalConstraint {
  std::vector<std::pair<double, double>> intervals;
  std::vector<int> counts;

  static IntervalConstraint single(double lo, double hi, int n);
  /// Consecutive intervals (b_{k-1}, b_k) between strictly increasing
  /// breakpoints, one count per interval.
  static IntervalConstraint between(std::span<const double> breakpoints,
                                    std::vector<int> counts);

  int total() const;
  /// Throws ValidationError when counts and intervals disagree, a count is
  /// negative, the total is zero, or intervals overlap.
  void validate() const;
  /// True when x is sorted strictly and each interval holds its count.
  bool admits(std::span<const double> x) const;
};

struct SolverOptions {
  double tolerance = 1e-10;       // gradient max-norm
  int max_iterations = 200;
  double step_tolerance = 1e-13;  // undamped Newton step max-norm
  /// Called with the starting point and every accepted iterate.
  std::function<void(std::span<const double> x, double energy)> observer;
};

struct SolverDiagnostics {
  int iterations = 0;
  int gradient_descent_steps = 0;
  double gradient_norm = 0.0;
  double last_step_norm = 0.0;
  double energy = 0.0;
  bool hessian_positive_definite = false;
  double hessian_gershgorin_bound = 0.0;
  std::string stop_reason;
  /// Energy of every accepted iterate, starting with the initial guess.
  std::vector<double> energy_history;
};

struct EquilibriumResult {
  ChargeConfiguration configuration;
  SolverDiagnostics diagnostics;
};

/// Chebyshev points of the second kind per interval, mapped into the middle
/// 90% of the interval. Unbounded intervals are first truncated to a window
/// where the field's confining force outweighs the repulsion of all n
/// charges.
std::vector<double> initial_guess(const ExternalField& field,
                                  const IntervalConstraint& constraint);

/// Damped Newton descent on total_energy subject to the interval
/// constraint. Every accepted iterate stays feasible and does not increase
/// the energy. Throws ConvergenceError after max_iterations, carrying the
/// last iterate, and ValidationError for an infeasible initial guess.
EquilibriumResult minimize(const ExternalField& field,
                           const IntervalConstraint& constraint,
                           const SolverOptions& options = {},
                           std::optional<std::vector<double>> initial = {});

/// A connected polyline in the complex plane that passes through -1 and +1
/// as vertices.
class PolylineContinuum {
 public:
  /// Throws ValidationError for fewer than two vertices, non-finite
  /// vertices, or when -1 or +1 is not a vertex.
  explicit PolylineContinuum(std::vector<std::complex<double>> vertices);

  const std::vector<std::complex<double>>& vertices() const { return vertices_; }
  double length() const { return cumulative_.back(); }

  /// Point at arclength s, clamped to [0, length()].
  std::complex<double> point_at(double s) const;
  /// Unit tangent of the segment containing s (the later one at a vertex).
  std::complex<double> tangent_at(double s) const;

  /// Intersection of K with the vertical line Re z = x of smallest |Im|,
  /// or nothing when the line misses K.
  std::optional<std::complex<double>> vertical_intersection(double x) const;

 private:
  std::size_t segment_of(double s) const;

  std::vector<std::complex<double>> vertices_;
  std::vector<double> cumulative_;
};

class ProjectionError : public ValidationError {
 public:
  ProjectionError(const std::string& what, std::size_t index)
      : ValidationError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Moves each real position vertically onto K, choosing the intersection of
/// smallest |Im|. Throws ProjectionError naming the first position whose
/// vertical line misses K.
ChargeConfiguration project_onto_continuum(const ChargeConfiguration& config,
                                           const PolylineContinuum& continuum);

struct ContinuumOptions {
  int starts = 5;
  int max_iterations = 5000;
  double tolerance = 1e-10;  // projected gradient max-norm in arclength
};

struct ContinuumResult {
  ChargeConfiguration configuration;
  /// An upper bound for inf { E(X) : X subset of K }.
  double energy = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  int starts_tried = 0;
  bool converged = false;
};

/// Local minimization of total_energy over n points of K, parameterized by
/// arclength, from several starts. The first start is the vertical
/// projection of the field's real equilibrium on (-1, 1) when that solve
/// succeeds; the rest are spread uniformly in arclength. Throws
/// ConvergenceError when no start has finite energy.
ContinuumResult minimize_on_continuum(const ExternalField& field,
                                      const PolylineContinuum& continuum,
                                      int n, const ContinuumOptions& options = {});

}  // namespace charge_eq

#endif  // CHARGE_EQ_EQUILIBRIUM_HPP_
