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

#ifndef CHARGE_EQ_QUADRATURE_HPP_
#define CHARGE_EQ_QUADRATURE_HPP_

#include <functional>

namespace charge_eq::quadrature {

inline constexpr int kGaussNodes = 64;
inline constexpr double kDefaultTolerance = 1e-9;

/// Integral of f over [lo, hi] with 64-point Gauss-Legendre on adaptively
/// bisected panels. A panel is accepted once its estimate and the sum of its
/// two halves differ by less than the panel's share of `tolerance`.
double gauss_adaptive(const std::function<double(double)>& f, double lo,
                      double hi, double tolerance = kDefaultTolerance);

/// Integral of f over [lo, hi] where f may blow up like an inverse square
/// root at either end. Substitutes x = lo + (hi - lo) sin^2(t), which turns
/// such endpoint behaviour into a smooth integrand on [0, pi/2], then calls
/// gauss_adaptive.
double endpoint_singular(const std::function<double(double)>& f, double lo,
                         double hi, double tolerance = kDefaultTolerance);

/// Same substitution, but f is called as f(x - lo, hi - x) with both
/// distances formed directly from t, so an integrand singular at an end can
/// be evaluated to full relative precision arbitrarily close to it.
double endpoint_singular_offsets(const std::function<double(double, double)>& f,
                                 double lo, double hi,
                                 double tolerance = kDefaultTolerance);

}  // namespace charge_eq::quadrature

#endif  // CHARGE_EQ_QUADRATURE_HPP_
