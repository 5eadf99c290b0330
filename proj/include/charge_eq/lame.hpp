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

#ifndef CHARGE_EQ_LAME_HPP_
#define CHARGE_EQ_LAME_HPP_

#include <span>
#include <string>
#include <vector>

#include "charge_eq/equilibrium.hpp"

// Polynomial solutions of the generalized Lame equation
//
//   A(x) E'' + B(x) E' - C(x) E = 0,   A = prod_{i=0}^{p} (x - a_i),
//   B = A * sum_i rho_i / (x - a_i),
//
// with real poles a_0 < ... < a_p and positive residues rho_i. For each way
// of distributing n zeros over the p gaps between poles there is exactly one
// polynomial E (Heine-Stieltjes) and one C of degree <= p - 1 (Van Vleck).
// The zeros of E are the constrained equilibrium of n unit charges in the
// field of charges rho_i / 2 at the poles.
namespace charge_eq::lame {

struct LameSystem {
  std::vector<double> poles;
  std::vector<double> residues;
  int degree = 0;
  std::vector<int> composition;

  int p() const { return static_cast<int>(poles.size()) - 1; }
  /// Throws ValidationError on non-increasing poles, non-positive residues,
  /// mismatched lengths, or a composition that does not sum to the degree.
  void validate() const;
  /// Ascending coefficients of A and B.
  std::vector<double> a_polynomial() const;
  std::vector<double> b_polynomial() const;
  ExternalField field() const;
  IntervalConstraint constraint() const;
};

enum class Status { kConverged, kFailed };

struct HeineStieltjesSolution {
  std::vector<int> composition;
  Status status = Status::kFailed;
  std::string message;
  std::vector<double> zeros;
  std::vector<double> monic_e;     // ascending coefficients, leading 1
  std::vector<double> van_vleck;   // ascending coefficients, length p
  double division_remainder_norm = 0.0;
  double gradient_norm = 0.0;
  double ode_residual = 0.0;
  int iterations = 0;
  bool hessian_positive_definite = false;
};

struct VanVleck {
  std::vector<double> coefficients;  // length p
  /// ||remainder|| / ||N|| in max norm, N = A y'' + B y'.
  double remainder_norm = 0.0;
  /// Largest quotient coefficient above degree p - 1 relative to the
  /// largest overall; zero unless the degree bound is violated.
  double excess_degree_norm = 0.0;
};

/// Divides N = A y'' + B y' by the monic y vanishing at `zeros`. The work is
/// done in the variable t = x - centroid(zeros) and the quotient is shifted
/// back. Throws ValidationError if a zero coincides with a pole or zeros
/// repeat.
VanVleck recover_van_vleck(std::span<const double> zeros,
                           const LameSystem& system);

/// max over 20 Chebyshev points of [a_0, a_p] of
/// |A E'' + B E' - C E| / max(|A E''|, |B E'|, |C E|), with E and its
/// derivatives taken from the product form over the zeros.
double ode_residual(std::span<const double> zeros,
                    std::span<const double> van_vleck,
                    const LameSystem& system);

/// Constrained equilibrium plus Van Vleck recovery. Throws
/// ConvergenceError if the equilibrium solve does not converge.
HeineStieltjesSolution solve(const LameSystem& system,
                             const SolverOptions& options = {});

/// All compositions of n into p non-negative parts, lexicographic order.
std::vector<std::vector<int>> compositions(int n, int parts);

/// One solution per composition, in lexicographic composition order. Solve
/// failures are recorded per entry and do not abort the sweep. `threads`
/// caps the number of worker threads (values below 1 mean 1).
std::vector<HeineStieltjesSolution> enumerate(std::span<const double> poles,
                                              std::span<const double> residues,
                                              int n, int threads = 1,
                                              const SolverOptions& options = {});

/// Symmetric Hausdorff distance between two finite point sets; +infinity
/// when exactly one is empty.
double hausdorff_distance(std::span<const double> a, std::span<const double> b);

}  // namespace charge_eq::lame

#endif  // CHARGE_EQ_LAME_HPP_
