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

#include "charge_eq/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "charge_eq/errors.hpp"

namespace charge_eq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double diameter(std::span<const std::complex<double>> z) {
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      d = std::max(d, std::abs(z[i] - z[j]));
  return d;
}

double mutual_real(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double threshold = kCoalescenceRatio * (x.back() - x.front());
  double e = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t j = k + 1; j < x.size(); ++j) {
      const double gap = x[j] - x[k];
      if (gap <= threshold) return kInf;
      e -= std::log(gap);
    }
  return e;
}

double mutual_complex(std::span<const std::complex<double>> z) {
  if (z.size() < 2) return 0.0;
  const double threshold = kCoalescenceRatio * diameter(z);
  double e = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k)
    for (std::size_t j = k + 1; j < z.size(); ++j) {
      const double gap = std::abs(z[j] - z[k]);
      if (gap <= threshold) return kInf;
      e -= std::log(gap);
    }
  return e;
}

void require_finite(const ChargeConfiguration& config,
                    const ExternalField& field) {
  if (!std::isfinite(total_energy(config, field)))
    throw InfiniteEnergyError(
        "energy derivatives requested at an infinite-energy configuration");
}

}  // namespace

ChargeConfiguration ChargeConfiguration::real(std::vector<double> positions) {
  if (positions.empty())
    throw ValidationError("a configuration needs at least one charge");
  for (double x : positions)
    if (!std::isfinite(x)) throw ValidationError("positions must be finite");
  std::sort(positions.begin(), positions.end());
  return ChargeConfiguration(std::move(positions));
}

ChargeConfiguration ChargeConfiguration::complex(
    std::vector<std::complex<double>> positions) {
  if (positions.empty())
    throw ValidationError("a configuration needs at least one charge");
  for (auto z : positions)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("positions must be finite");
  return ChargeConfiguration(std::move(positions));
}

std::size_t ChargeConfiguration::size() const {
  return std::visit([](const auto& v) { return v.size(); }, positions_);
}

std::span<const double> ChargeConfiguration::real_positions() const {
  if (!is_real())
    throw UnsupportedOperation("configuration has complex positions");
  return std::get<std::vector<double>>(positions_);
}

std::vector<std::complex<double>> ChargeConfiguration::complex_positions()
    const {
  if (is_real()) {
    const auto& x = std::get<std::vector<double>>(positions_);
    return {x.begin(), x.end()};
  }
  return std::get<std::vector<std::complex<double>>>(positions_);
}

double mutual_energy(const ChargeConfiguration& config) {
  if (config.is_real()) return mutual_real(config.real_positions());
  return mutual_complex(config.complex_positions());
}

double total_energy(const ChargeConfiguration& config,
                    const ExternalField& field) {
  double e = mutual_energy(config);
  if (!std::isfinite(e)) return kInf;
  if (config.is_real()) {
    for (double x : config.real_positions()) e += field.value(x);
  } else {
    for (auto z : config.complex_positions()) e += field.value(z);
  }
  return std::isnan(e) ? kInf : e;
}

Eigen::VectorXd gradient(const ChargeConfiguration& config,
                         const ExternalField& field) {
  require_finite(config, field);
  const std::size_t n = config.size();
  if (config.is_real()) {
    const auto x = config.real_positions();
    Eigen::VectorXd g(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      double s = field.derivative(x[k]);
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s -= 1.0 / (x[k] - x[j]);
      g[static_cast<Eigen::Index>(k)] = s;
    }
    return g;
  }
  const auto z = config.complex_positions();
  Eigen::VectorXd g(static_cast<Eigen::Index>(2 * n));
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = field.gradient(z[k]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const std::complex<double> d = z[k] - z[j];
      s -= d / std::norm(d);
    }
    g[static_cast<Eigen::Index>(2 * k)] = s.real();
    g[static_cast<Eigen::Index>(2 * k + 1)] = s.imag();
  }
  return g;
}

Eigen::MatrixXd hessian(const ChargeConfiguration& config,
                        const ExternalField& field) {
  if (!config.is_real())
    throw UnsupportedOperation("hessian is defined for real configurations only");
  require_finite(config, field);
  const auto x = config.real_positions();
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = field.second_derivative(x[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      const double w = 1.0 / (d * d);
      h(i, j) = -w;
      diag += w;
    }
    h(i, i) = diag;
  }
  return h;
}

DefinitenessReport definiteness_check(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols())
    throw ValidationError("definiteness_check needs a square matrix");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < matrix.rows(); ++i)
    for (Eigen::Index j = i + 1; j < matrix.cols(); ++j)
      if (std::abs(matrix(i, j) - matrix(j, i)) > 1e-12 * scale)
        throw ValidationError("definiteness_check needs a symmetric matrix");

  DefinitenessReport report;
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  report.positive_definite = llt.info() == Eigen::Success;
  double bound = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    const double off = matrix.row(i).cwiseAbs().sum() - std::abs(matrix(i, i));
    bound = std::min(bound, matrix(i, i) - off);
  }
  report.min_eigenvalue_lower_bound = matrix.rows() == 0 ? 0.0 : bound;
  return report;
}

}  // namespace charge_eq
