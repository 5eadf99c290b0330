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

#ifndef CHARGE_EQ_FIELDS_HPP_
#define CHARGE_EQ_FIELDS_HPP_

#include <complex>
#include <span>
#include <vector>

namespace charge_eq {

/// A fixed positive point charge attracting nothing and repelling the free
/// unit charges through the logarithmic kernel.
struct FixedCharge {
  double location = 0.0;
  double mass = 0.0;

  friend bool operator==(const FixedCharge&, const FixedCharge&) = default;
};

/// External potential
///
///   phi(x) = -sum_j mass_j * ln|x - location_j| + smooth(x),
///
/// where smooth is a real polynomial of degree at most four. The field is
/// immutable once built.
///
/// At a charge location phi and phi'' evaluate to +infinity. phi' there
/// returns -infinity, its limit from the right, so callers can detect the
/// collision without an exception.
class ExternalField {
 public:
  static constexpr std::size_t kMaxSmoothDegree = 4;

  ExternalField() = default;
  /// Throws ValidationError for non-positive or non-finite masses,
  /// non-finite locations, or a smooth term of degree above four.
  ExternalField(std::vector<FixedCharge> charges, std::vector<double> smooth);

  const std::vector<FixedCharge>& charges() const { return charges_; }
  /// Ascending coefficients of the smooth term (trailing zeros trimmed).
  const std::vector<double>& smooth() const { return smooth_; }

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// -sum m ln|z - a| + Re smooth(z).
  double value(std::complex<double> z) const;
  /// Real gradient (d/dRe, d/dIm) of value(z), packed as a complex number.
  std::complex<double> gradient(std::complex<double> z) const;

  /// True when some fixed charge sits exactly at x.
  bool hits_charge(double x) const;
  bool hits_charge(std::complex<double> z) const;

 private:
  std::vector<FixedCharge> charges_;
  std::vector<double> smooth_;
};

/// Jacobi field: mass (beta+1)/2 at -1 and (alpha+1)/2 at +1.
/// Requires alpha, beta > -1.
ExternalField jacobi_field(double alpha, double beta);

/// Laguerre field: mass (alpha+1)/2 at 0 plus x/2. Requires alpha > -1.
ExternalField laguerre_field(double alpha);

/// Hermite field: x^2/2, no fixed charges.
ExternalField hermite_field();

/// Field of p+1 charges rho_j/2 at strictly increasing poles a_j.
ExternalField lame_field(std::span<const double> poles,
                         std::span<const double> residues);

}  // namespace charge_eq

#endif  // CHARGE_EQ_FIELDS_HPP_
