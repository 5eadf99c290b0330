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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "charge_eq/asymptotics.hpp"
#include "charge_eq/classical.hpp"
#include "charge_eq/lame.hpp"
#include "oracles.hpp"

namespace charge_eq::asymptotics {
namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double arcsine_density(double x) { return 1.0 / (kPi * std::sqrt((1 - x) * (1 + x))); }
double arcsine_cdf(double x) { return 0.5 + std::asin(x) / kPi; }

/// KS distance with a closed-form CDF, both one-sided limits at each jump.
double ks_closed_form(std::vector<double> x, double (*cdf)(double)) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

TEST(CountingFunction, Examples) {
  const std::vector<double> p1{-1.0, 1.0};
  EXPECT_EQ(counting_function(p1, {}, 0.0), 1);
  const std::vector<double> p2{-1.0, 0.0, 1.0};
  const std::vector<double> sym{0.0};
  for (double x : {-0.9, -0.1, 0.0, 0.3, 0.99}) EXPECT_EQ(counting_function(p2, sym, x), 1);
  const std::vector<double> half{0.5};
  EXPECT_EQ(counting_function(p2, half, -0.5), 1);
  EXPECT_EQ(counting_function(p2, half, 0.25), 2);
  EXPECT_EQ(counting_function(p2, half, 0.75), 1);
  EXPECT_EQ(counting_function(p2, half, 1.5), 2);
}

TEST(Support, Examples) {
  const std::vector<double> p1{-1.0, 1.0};
  EXPECT_EQ(support_of(p1, {}), std::vector<Interval>({{-1.0, 1.0}}));
  const std::vector<double> p2{-1.0, 0.0, 1.0};
  const std::vector<double> sym{0.0};
  EXPECT_EQ(support_of(p2, sym), std::vector<Interval>({{-1.0, 1.0}}));
  const std::vector<double> b{0.4};
  EXPECT_EQ(support_of(p2, b), std::vector<Interval>({{-1.0, 0.0}, {0.4, 1.0}}));
}

TEST(Measure, Validation) {
  EXPECT_THROW(EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.5, 0.6}), ValidationError);
  EXPECT_THROW(EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {1.0}), ValidationError);
  EXPECT_THROW(EquilibriumMeasure::solve({1.0, 0.0, -1.0}, {0.5, 0.5}), ValidationError);
  EXPECT_THROW(EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {1.2, -0.2}), ValidationError);
  EXPECT_THROW(EquilibriumMeasure::with_betas({-1.0, 0.0, 1.0}, {0.5, 0.5}, {}),
               ValidationError);
}

TEST(Measure, SingleIntervalIsArcsine) {
  const auto m = EquilibriumMeasure::solve({-1.0, 1.0}, {1.0});
  EXPECT_TRUE(m.betas().empty());
  for (double x : {2.0, -3.0, 10.0}) {
    EXPECT_NEAR(m.h(x).real(), 1.0 / std::sqrt((x - 1) * (x + 1)) * (x > 0 ? 1 : -1), 1e-15);
  }
  EXPECT_NEAR(m.density(0.0).value, 1.0 / kPi, 1e-15);
  for (double x : {1 - 1e-6, -(1 - 1e-6), 0.3})
    EXPECT_NEAR(m.density(x).value, arcsine_density(x), 1e-8 * arcsine_density(x));
  const auto outside = m.density(1.5);
  EXPECT_FALSE(outside.in_support);
  EXPECT_EQ(outside.value, 0.0);
  EXPECT_EQ(m.branch_sign(), 1);
}

TEST(Measure, SymmetricTwoIntervalCase) {
  const auto m = EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.5, 0.5});
  ASSERT_EQ(m.betas().size(), 1u);
  EXPECT_NEAR(m.betas()[0], 0.0, 1e-8);
  EXPECT_EQ(m.support(), std::vector<Interval>({{-1.0, 1.0}}));
  EXPECT_NEAR(m.density(0.5).value, 1.0 / (kPi * std::sqrt(0.75)), 1e-12);
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-0.999, 0.999);
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(m.density(x).value, arcsine_density(x), 1e-8);
  }
}

TEST(Measure, AsymmetricTwoIntervalCase) {
  const auto m = EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.3, 0.7});
  ASSERT_EQ(m.betas().size(), 1u);
  const double beta = m.betas()[0];
  EXPECT_GT(beta, -1.0);
  EXPECT_LT(beta, 0.0);
  EXPECT_EQ(m.support(), std::vector<Interval>({{-1.0, beta}, {0.0, 1.0}}));
  const auto masses = m.interval_masses();
  EXPECT_NEAR(masses[0], 0.3, 1e-6);
  EXPECT_NEAR(masses[1], 0.7, 1e-6);
  for (double r : m.beta_residuals()) EXPECT_LT(std::abs(r), 1e-8);
  EXPECT_FALSE(m.density(0.5 * beta).in_support);
  EXPECT_GT(m.density(0.5 * (beta - 1.0)).value, 0.0);
}

TEST(Measure, DensityIntegratesToOne) {
  for (auto theta : {std::vector<double>{1.0}, {0.5, 0.5}, {0.3, 0.7}, {0.2, 0.5, 0.3}}) {
    std::vector<double> poles;
    for (std::size_t i = 0; i <= theta.size(); ++i)
      poles.push_back(-1.0 + 2.0 * i / theta.size());
    const auto m = EquilibriumMeasure::solve(poles, theta);
    EXPECT_NEAR(m.mass_between(poles.front(), poles.back()), 1.0, 1e-6);
    EXPECT_NEAR(m.cdf(poles.back()), 1.0, 1e-6);
    const auto masses = m.interval_masses();
    for (std::size_t j = 0; j < theta.size(); ++j) EXPECT_NEAR(masses[j], theta[j], 1e-6);
  }
}

TEST(Measure, ThreeIntervalsWithUnevenPoles) {
  const auto m = EquilibriumMeasure::solve({-2.0, -0.5, 0.3, 1.5}, {0.1, 0.6, 0.3});
  EXPECT_EQ(m.betas().size(), 2u);
  const auto masses = m.interval_masses();
  EXPECT_NEAR(masses[0], 0.1, 1e-6);
  EXPECT_NEAR(masses[1], 0.6, 1e-6);
  EXPECT_NEAR(masses[2], 0.3, 1e-6);
  EXPECT_LE(m.support().size(), 3u);
}

TEST(Measure, QuadratureConvergesUnderRefinement) {
  const auto m = EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.3, 0.7});
  double last = 1.0;
  for (double tol : {1e-4, 1e-7, 1e-10}) {
    const auto coarse = EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.3, 0.7},
                                                  {1e-6, 100, 1e-6, tol});
    const double err = std::abs(coarse.interval_masses()[0] - 0.3);
    EXPECT_LE(err, std::max(last, 1e-12));
    last = err;
  }
  EXPECT_LT(last, 1e-6);
  (void)m;
}

TEST(Measure, BetaSolveFailureCarriesResiduals) {
  BetaOptions options;
  options.max_iterations = 0;
  try {
    (void)EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.3, 0.7}, options);
    FAIL() << "expected BetaSolveError";
  } catch (const BetaSolveError& e) {
    EXPECT_EQ(e.residuals().size(), 1u);
    EXPECT_GT(e.residual_norm(), 0.0);
  }
}

TEST(CauchyTransform, ArcsineExamples) {
  const auto m = EquilibriumMeasure::arcsine();
  EXPECT_NEAR(std::abs(m.cauchy_transform(2.0) - 1.0 / std::sqrt(3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.cauchy_transform(C(0.0, 2.0)) - C(0.0, -1.0 / std::sqrt(5.0))), 0.0,
              1e-15);
  EXPECT_THROW(m.cauchy_transform(0.3), ValidationError);
  EXPECT_NO_THROW(m.cauchy_transform(C(0.3, 1e-9)));
}

TEST(CauchyTransform, BehavesLikeOneOverZ) {
  for (auto theta : {std::vector<double>{1.0}, {0.3, 0.7}, {0.5, 0.5}}) {
    std::vector<double> poles{-1.0};
    if (theta.size() == 2) poles.push_back(0.0);
    poles.push_back(1.0);
    const auto m = EquilibriumMeasure::solve(poles, theta);
    for (double arg : {0.3, 1.7, -2.5}) {
      const C z = std::polar(1e4, arg);
      EXPECT_LT(std::abs(z * m.cauchy_transform(z) - 1.0), 1e-3);
    }
    EXPECT_LT(std::abs(1e3 * m.h(1e3).real() - 1.0), 1e-3);
    EXPECT_LT(std::abs(-1e3 * m.h(-1e3).real() - 1.0), 1e-3);
  }
}

TEST(CauchyTransform, MatchesDirectQuadrature) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.2, 2.0);
  std::bernoulli_distribution flip;
  const auto arcsine = EquilibriumMeasure::arcsine();
  const auto lame = EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.3, 0.7});
  const double beta = lame.betas()[0];
  const auto lame_density = [beta](double t) {
    return std::sqrt(std::abs(t - beta) / (std::abs(t + 1) * std::abs(t) * std::abs(t - 1))) /
           kPi;
  };
  for (int i = 0; i < 20; ++i) {
    const C z(re(rng), flip(rng) ? im(rng) : -im(rng));
    const auto a = oracle::chebyshev_midpoint(
        [&](double t) { return C(arcsine_density(t)) / (z - t); }, -1.0, 1.0, 20000);
    EXPECT_LT(std::abs(arcsine.cauchy_transform(z) - a), 1e-6) << z;
    const auto b = oracle::chebyshev_midpoint(
                       [&](double t) { return C(lame_density(t)) / (z - t); }, -1.0, beta,
                       20000) +
                   oracle::chebyshev_midpoint(
                       [&](double t) { return C(lame_density(t)) / (z - t); }, 0.0, 1.0,
                       20000);
    EXPECT_LT(std::abs(lame.cauchy_transform(z) - b), 1e-6) << z;
  }
}

TEST(EmpiricalDistribution, Cdf) {
  const EmpiricalDistribution e({0.5, -0.5, 0.0, 0.25});
  EXPECT_EQ(e.points().front(), -0.5);
  EXPECT_DOUBLE_EQ(e.cdf(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(e.cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(e.cdf(0.3), 0.75);
  EXPECT_DOUBLE_EQ(e.cdf(1.0), 1.0);
  EXPECT_THROW(EmpiricalDistribution({}), ValidationError);
}

TEST(KsDistance, QuantileConstruction) {
  const auto m = EquilibriumMeasure::arcsine();
  for (int n : {5, 40, 300}) {
    std::vector<double> x;
    for (int k = 1; k <= n; ++k) x.push_back(-std::cos(kPi * (k - 0.5) / n));
    const double d = ks_distance(EmpiricalDistribution(x), m);
    EXPECT_LE(d, 0.5 / n + 1e-9);
    EXPECT_GE(d, 0.5 / n - 1e-9);
  }
}

TEST(KsDistance, LegendreZerosAgainstArcsine) {
  const auto m = EquilibriumMeasure::arcsine();
  double last = 1.0;
  for (int n : {10, 25, 50, 100, 200}) {
    const auto x = oracle::jacobi_zeros(0, 0, n);
    const double d = ks_distance(EmpiricalDistribution(x), m);
    EXPECT_NEAR(d, ks_closed_form(x, arcsine_cdf), 1e-9);
    EXPECT_LE(d, last);
    last = d;
  }
  EXPECT_LT(last, 0.05);
}

TEST(KsDistance, DiscreteLameEquilibrium) {
  const auto sol = lame::solve({{-1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, 100, {30, 70}});
  const auto m = EquilibriumMeasure::solve({-1.0, 0.0, 1.0}, {0.3, 0.7});
  EXPECT_LT(ks_distance(EmpiricalDistribution(sol.zeros), m), 0.07);
  // The empty stretch (beta, 0) lies inside the widest gap between zeros.
  double widest = 0.0, left = 0.0, right = 0.0;
  for (std::size_t k = 1; k < sol.zeros.size(); ++k) {
    if (sol.zeros[k] - sol.zeros[k - 1] > widest) {
      widest = sol.zeros[k] - sol.zeros[k - 1];
      left = sol.zeros[k - 1];
      right = sol.zeros[k];
    }
  }
  EXPECT_LT(left, m.betas()[0]);
  EXPECT_GT(left, m.betas()[0] - 0.1);
  EXPECT_GT(right, 0.0);
  EXPECT_LT(right, 0.01);
}

TEST(NormalizedLogDerivative, MatchesZeroSum) {
  const auto fam = classical::Family::jacobi(0.5, -0.3);
  for (int n : {1, 7, 30}) {
    const auto x = oracle::jacobi_zeros(0.5, -0.3, n);
    for (C z : {C(0.2, 0.3), C(1.5, -0.5), C(-3.0, 0.0)}) {
      C s = 0.0;
      for (double t : x) s += 1.0 / (z - t);
      s /= static_cast<double>(n);
      EXPECT_LT(std::abs(normalized_log_derivative(fam, n, z) - s), 1e-10);
    }
  }
  const double x1 = -0.8 / 2.2;
  EXPECT_LT(std::abs(normalized_log_derivative(fam, 1, C(0.0, 1.0)) - 1.0 / (C(0.0, 1.0) - x1)),
            1e-15);
}

TEST(NormalizedLogDerivative, ConvergesToArcsineTransform) {
  const auto fam = classical::Family::jacobi(0, 0);
  const C z(0.0, 2.0);
  const C mu = EquilibriumMeasure::arcsine().cauchy_transform(z);
  double last = 1.0;
  for (int n : {10, 25, 50, 100, 200}) {
    const double d = std::abs(normalized_log_derivative(fam, n, z) - mu);
    EXPECT_LT(d, last);
    last = d;
  }
  EXPECT_LT(last, 0.02);
}

TEST(Riccati, ResidualIsRoundoff) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.05, 2.0);
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, -0.3}, {2.0, 3.0}}) {
    const auto fam = classical::Family::jacobi(a, b);
    for (int n : {1, 10, 50, 200}) {
      for (int i = 0; i < 20; ++i) {
        const C z(re(rng), i % 2 ? im(rng) : -im(rng));
        EXPECT_LT(riccati_residual(fam, n, z), 1e-9) << "n=" << n << " z=" << z;
      }
    }
  }
}

TEST(Riccati, StableAcrossDegrees) {
  const auto fam = classical::Family::jacobi(0, 0);
  for (int n : {10, 50, 200}) EXPECT_LT(riccati_residual(fam, n, C(0.0, 2.0)), 1e-13);
}

TEST(Riccati, LimitEquation) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 3.0);
  const auto m = EquilibriumMeasure::arcsine();
  for (int i = 0; i < 20; ++i) {
    const C z(re(rng), i % 2 ? im(rng) : -im(rng));
    const C mu = m.cauchy_transform(z);
    EXPECT_LT(std::abs((1.0 - z * z) * mu * mu + 1.0), 1e-12);
  }
}

TEST(Riccati, JacobiOnly) {
  EXPECT_THROW(riccati_residual(classical::Family::hermite(), 4, C(0.0, 1.0)),
               ValidationError);
}

}  // namespace
}  // namespace charge_eq::asymptotics
