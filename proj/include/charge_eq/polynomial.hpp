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

#ifndef CHARGE_EQ_POLYNOMIAL_HPP_
#define CHARGE_EQ_POLYNOMIAL_HPP_

#include <complex>
#include <span>
#include <vector>

// Dense real polynomials stored as coefficient vectors in ascending powers:
// c[0] + c[1] x + ... + c[d] x^d. The empty vector is the zero polynomial.
namespace charge_eq::poly {

using Coefficients = std::vector<double>;

double evaluate(std::span<const double> c, double x);
std::complex<double> evaluate(std::span<const double> c,
                              std::complex<double> z);

Coefficients derivative(std::span<const double> c);
Coefficients add(std::span<const double> a, std::span<const double> b);
Coefficients multiply(std::span<const double> a, std::span<const double> b);
Coefficients scale(std::span<const double> a, double factor);

/// Drops trailing coefficients that are exactly zero.
Coefficients trim(std::span<const double> c);

/// Degree after trimming; -1 for the zero polynomial.
int degree(std::span<const double> c);

double max_abs(std::span<const double> c);

struct Division {
  Coefficients quotient;
  Coefficients remainder;  // length deg(divisor), possibly all zeros
};

/// Long division. Throws ValidationError when the divisor is zero.
Division divide(std::span<const double> numerator,
                std::span<const double> divisor);

/// Coefficients of q(t) = p(t + shift).
Coefficients taylor_shift(std::span<const double> c, double shift);

/// Monic polynomial prod (t - (r - center)) in the shifted variable
/// t = x - center. Roots are multiplied in pairs taken from opposite ends of
/// the sorted list so each quadratic factor has a small linear term.
Coefficients from_roots_centered(std::span<const double> roots, double center);

/// Monic polynomial with the given roots, in the variable x. Expanded about
/// the centroid of the roots and shifted back.
Coefficients from_roots(std::span<const double> roots);

/// All complex roots, from the eigenvalues of the companion matrix.
std::vector<std::complex<double>> roots(std::span<const double> c);

}  // namespace charge_eq::poly

#endif  // CHARGE_EQ_POLYNOMIAL_HPP_
