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

#ifndef CHARGE_EQ_CLASSICAL_HPP_
#define CHARGE_EQ_CLASSICAL_HPP_

#include <complex>
#include <string>
#include <vector>

// Classical orthogonal polynomials in their conventional normalizations:
// Jacobi P_n^(a,b) (P_n(1) = binom(n+a, n)), Laguerre L_n^(a), and
// physicists' Hermite H_n (leading coefficient 2^n).
namespace charge_eq::classical {

struct Family {
  enum class Kind { kJacobi, kLaguerre, kHermite };

  Kind kind = Kind::kHermite;
  double alpha = 0.0;
  double beta = 0.0;

  static Family jacobi(double alpha, double beta) {
    return {Kind::kJacobi, alpha, beta};
  }
  static Family laguerre(double alpha) { return {Kind::kLaguerre, alpha, 0.0}; }
  static Family hermite() { return {Kind::kHermite, 0.0, 0.0}; }

  /// alpha, beta > -1 where they apply.
  bool is_classical() const;
  std::string describe() const;
};

template <typename T>
struct Value {
  T value;
  T derivative;
  T second_derivative;
};

/// p_n, p_n', p_n'' by the three-term recurrence, differentiated term by
/// term. Valid for any real parameters as long as the recurrence
/// denominators do not vanish.
Value<double> evaluate(const Family& family, int n, double x);
Value<std::complex<double>> evaluate(const Family& family, int n,
                                     std::complex<double> z);

/// p_n'(z) / p_n(z) and p_n''(z) / p_n(z), computed with periodic rescaling
/// so high degrees do not overflow.
struct LogDerivatives {
  std::complex<double> first;
  std::complex<double> second;
};
LogDerivatives log_derivatives(const Family& family, int n,
                               std::complex<double> z);

/// Leading coefficient of p_n in its conventional normalization.
double leading_coefficient(const Family& family, int n);

/// Recurrence of the monic polynomials:
/// x q_k = q_{k+1} + diagonal[k] q_k + offdiag_sq[k] q_{k-1}.
/// offdiag_sq[0] is unused and set to zero.
struct MonicRecurrence {
  std::vector<double> diagonal;
  std::vector<double> offdiag_sq;
};
MonicRecurrence monic_recurrence(const Family& family, int n);

/// The n zeros of p_n, strictly increasing. Eigenvalues of the symmetric
/// tridiagonal Jacobi matrix followed by two Newton steps. Throws
/// ValidationError outside the classical parameter regime or for n < 1.
std::vector<double> zeros(const Family& family, int n);

/// Ascending coefficients of the monic p_n.
std::vector<double> monic_coefficients(const Family& family, int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

}  // namespace charge_eq::classical

#endif  // CHARGE_EQ_CLASSICAL_HPP_
