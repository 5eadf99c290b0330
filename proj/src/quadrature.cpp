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

#include "charge_eq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "charge_eq/classical.hpp"

namespace charge_eq::quadrature {

namespace {

constexpr int kMaxDepth = 40;

const classical::GaussRule& rule64() {
  static const classical::GaussRule rule =
      classical::gauss_legendre(kGaussNodes);
  return rule;
}

double panel(const std::function<double(double)>& f, double lo, double hi) {
  const auto& r = rule64();
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double s = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k)
    s += r.weights[k] * f(mid + half * r.nodes[k]);
  return s * half;
}

double refine(const std::function<double(double)>& f, double lo, double hi,
              double whole, double tolerance, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel(f, lo, mid);
  const double right = panel(f, mid, hi);
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(left) + std::abs(right));
  if (std::abs(left + right - whole) < std::max(tolerance, floor) ||
      depth >= kMaxDepth ||
      !(mid > lo && mid < hi))
    return left + right;
  return refine(f, lo, mid, left, 0.5 * tolerance, depth + 1) +
         refine(f, mid, hi, right, 0.5 * tolerance, depth + 1);
}

}  // namespace

double gauss_adaptive(const std::function<double(double)>& f, double lo,
                      double hi, double tolerance) {
  if (!(hi > lo)) return 0.0;
  return refine(f, lo, hi, panel(f, lo, hi), tolerance, 0);
}

double endpoint_singular_offsets(const std::function<double(double, double)>& f,
                                 double lo, double hi, double tolerance) {
  if (!(hi > lo)) return 0.0;
  const double width = hi - lo;
  const auto g = [&](double t) {
    const double s = std::sin(t), c = std::cos(t);
    const double v = f(width * s * s, width * c * c);
    // A node can still land exactly on a singular end deep in a refinement;
    // its weight vanishes after the substitution.
    return std::isfinite(v) ? v * width * 2.0 * s * c : 0.0;
  };
  return gauss_adaptive(g, 0.0, std::numbers::pi / 2.0, tolerance);
}

double endpoint_singular(const std::function<double(double)>& f, double lo,
                         double hi, double tolerance) {
  return endpoint_singular_offsets(
      [&](double from_lo, double from_hi) {
        return from_lo <= from_hi ? f(lo + from_lo) : f(hi - from_hi);
      },
      lo, hi, tolerance);
}

}  // namespace charge_eq::quadrature
