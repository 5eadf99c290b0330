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

#include "charge_eq/fields.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "charge_eq/errors.hpp"
#include "charge_eq/polynomial.hpp"

namespace charge_eq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ExternalField::ExternalField(std::vector<FixedCharge> charges,
                             std::vector<double> smooth)
    : charges_(std::move(charges)), smooth_(poly::trim(smooth)) {
  for (const auto& c : charges_) {
    if (!std::isfinite(c.location))
      throw ValidationError("fixed charge location must be finite");
    if (!(c.mass > 0.0) || !std::isfinite(c.mass))
      throw ValidationError("fixed charge mass must be positive and finite, got " +
                            std::to_string(c.mass));
  }
  for (double v : smooth_)
    if (!std::isfinite(v))
      throw ValidationError("smooth term coefficients must be finite");
  if (smooth_.size() > kMaxSmoothDegree + 1)
    throw ValidationError("smooth term degree exceeds 4");
}

bool ExternalField::hits_charge(double x) const {
  for (const auto& c : charges_)
    if (x == c.location) return true;
  return false;
}

bool ExternalField::hits_charge(std::complex<double> z) const {
  return z.imag() == 0.0 && hits_charge(z.real());
}

double ExternalField::value(double x) const {
  if (hits_charge(x)) return kInf;
  double v = poly::evaluate(smooth_, x);
  for (const auto& c : charges_) v -= c.mass * std::log(std::abs(x - c.location));
  return v;
}

double ExternalField::derivative(double x) const {
  if (hits_charge(x)) return -kInf;
  const auto ds = poly::derivative(smooth_);
  double v = poly::evaluate(ds, x);
  for (const auto& c : charges_) v -= c.mass / (x - c.location);
  return v;
}

double ExternalField::second_derivative(double x) const {
  if (hits_charge(x)) return kInf;
  const auto d2 = poly::derivative(poly::derivative(smooth_));
  double v = poly::evaluate(d2, x);
  for (const auto& c : charges_) {
    const double d = x - c.location;
    v += c.mass / (d * d);
  }
  return v;
}

double ExternalField::value(std::complex<double> z) const {
  if (hits_charge(z)) return kInf;
  double v = poly::evaluate(smooth_, z).real();
  for (const auto& c : charges_) v -= c.mass * std::log(std::abs(z - c.location));
  return v;
}

std::complex<double> ExternalField::gradient(std::complex<double> z) const {
  if (hits_charge(z)) return {-kInf, 0.0};
  // Re P is harmonic with gradient (Re P', -Im P').
  const std::complex<double> dp = poly::evaluate(poly::derivative(smooth_), z);
  std::complex<double> g(dp.real(), -dp.imag());
  for (const auto& c : charges_) {
    const std::complex<double> d = z - c.location;
    g -= c.mass * d / std::norm(d);
  }
  return g;
}

ExternalField jacobi_field(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw ValidationError("jacobi_field requires alpha > -1 and beta > -1");
  return ExternalField({{-1.0, (beta + 1.0) / 2.0}, {1.0, (alpha + 1.0) / 2.0}},
                       {});
}

ExternalField laguerre_field(double alpha) {
  if (!(alpha > -1.0))
    throw ValidationError("laguerre_field requires alpha > -1");
  return ExternalField({{0.0, (alpha + 1.0) / 2.0}}, {0.0, 0.5});
}

ExternalField hermite_field() { return ExternalField({}, {0.0, 0.0, 0.5}); }

ExternalField lame_field(std::span<const double> poles,
                         std::span<const double> residues) {
  if (poles.size() != residues.size())
    throw ValidationError("poles and residues must have equal length");
  if (poles.size() < 2)
    throw ValidationError("a Lame field needs at least two poles");
  std::vector<FixedCharge> charges;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    if (j > 0 && !(poles[j] > poles[j - 1]))
      throw ValidationError("poles must be strictly increasing");
    if (!(residues[j] > 0.0))
      throw ValidationError("residues must be positive");
    charges.push_back({poles[j], residues[j] / 2.0});
  }
  return ExternalField(std::move(charges), {});
}

}  // namespace charge_eq
