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

#ifndef CHARGE_EQ_ENERGY_HPP_
#define CHARGE_EQ_ENERGY_HPP_

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "charge_eq/fields.hpp"

namespace charge_eq {

/// Positions of n >= 1 free unit charges, either all on the real line or in
/// the complex plane. Real positions are kept sorted ascending; coincident
/// points are allowed and give infinite energy.
class ChargeConfiguration {
 public:
  /// Sorts the input. Throws ValidationError when empty or non-finite.
  static ChargeConfiguration real(std::vector<double> positions);
  static ChargeConfiguration complex(
      std::vector<std::complex<double>> positions);

  bool is_real() const {
    return std::holds_alternative<std::vector<double>>(positions_);
  }
  std::size_t size() const;

  /// Throws UnsupportedOperation for a complex configuration.
  std::span<const double> real_positions() const;
  /// Real configurations are promoted.
  std::vector<std::complex<double>> complex_positions() const;

 private:
  explicit ChargeConfiguration(
      std::variant<std::vector<double>, std::vector<std::complex<double>>> p)
      : positions_(std::move(p)) {}

  std::variant<std::vector<double>, std::vector<std::complex<double>>>
      positions_;
};

/// Pairs closer than this fraction of the configuration diameter count as
/// coalesced.
inline constexpr double kCoalescenceRatio = 1e-14;

/// -sum_{k<j} ln|x_k - x_j|, or +infinity on coalescence.
double mutual_energy(const ChargeConfiguration& config);

/// mutual_energy + sum_k phi(x_k). +infinity when two charges coalesce or a
/// free charge sits on a fixed one.
double total_energy(const ChargeConfiguration& config,
                    const ExternalField& field);

/// Gradient of total_energy. Length n for real configurations; length 2n
/// for complex ones, ordered (d/dRe z_1, d/dIm z_1, d/dRe z_2, ...).
/// Throws InfiniteEnergyError when the energy is not finite.
Eigen::VectorXd gradient(const ChargeConfiguration& config,
                         const ExternalField& field);

/// Second derivatives of total_energy (not of twice the energy):
/// off-diagonal -(x_i - x_j)^-2, diagonal phi''(x_i) + sum_j (x_i - x_j)^-2.
/// Real configurations only.
Eigen::MatrixXd hessian(const ChargeConfiguration& config,
                        const ExternalField& field);

struct DefinitenessReport {
  bool positive_definite = false;
  /// Gershgorin lower bound min_i (a_ii - sum_{j != i} |a_ij|). May be
  /// negative even for a positive definite matrix.
  double min_eigenvalue_lower_bound = 0.0;
};

/// Cholesky-based positive-definiteness test. Throws ValidationError for a
/// non-square or asymmetric input.
DefinitenessReport definiteness_check(const Eigen::MatrixXd& matrix);

}  // namespace charge_eq

#endif  // CHARGE_EQ_ENERGY_HPP_
