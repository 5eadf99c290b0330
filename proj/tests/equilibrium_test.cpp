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
#include <limits>
#include <numbers>
#include <random>

#include "charge_eq/classical.hpp"
#include "charge_eq/equilibrium.hpp"
#include "charge_eq/errors.hpp"
#include "oracles.hpp"

namespace charge_eq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using C = std::complex<double>;

double max_deviation(std::span<const double> a, std::span<const double> b) {
  EXPECT_EQ(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Polyline -1 -> interior vertices with increasing real part -> +1.
PolylineContinuum random_polyline(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> re(-0.95, 0.95), im(-1.5, 1.5);
  const int m = count(rng);
  std::vector<double> xs;
  for (int i = 0; i < m; ++i) xs.push_back(re(rng));
  std::sort(xs.begin(), xs.end());
  std::vector<C> v{-1.0};
  for (double x : xs) {
    double y = im(rng);
    if (std::abs(y) < 0.05) y = 0.05;
    v.emplace_back(x, y);
  }
  v.emplace_back(1.0);
  return PolylineContinuum(v);
}

TEST(IntervalConstraint, Construction) {
  const auto c = IntervalConstraint::single(-1.0, 1.0, 4);
  EXPECT_EQ(c.total(), 4);
  const double b[] = {-1.0, 0.0, 1.0};
  const auto d = IntervalConstraint::between(b, {2, 3});
  ASSERT_EQ(d.intervals.size(), 2u);
  EXPECT_EQ(d.intervals[1], std::make_pair(0.0, 1.0));
  EXPECT_EQ(d.total(), 5);
  EXPECT_TRUE(d.admits(std::vector<double>{-0.5, -0.1, 0.2, 0.3, 0.9}));
  EXPECT_FALSE(d.admits(std::vector<double>{-0.5, 0.1, 0.2, 0.3, 0.9}));
  EXPECT_FALSE(d.admits(std::vector<double>{-1.0, -0.1, 0.2, 0.3, 0.9}));
  EXPECT_FALSE(d.admits(std::vector<double>{-0.5, -0.1, 0.2, 0.2, 0.9}));
}

TEST(IntervalConstraint, Validation) {
  const double b[] = {-1.0, 0.0, 1.0};
  EXPECT_THROW(IntervalConstraint::between(b, {1}).validate(), ValidationError);
  EXPECT_THROW(IntervalConstraint::between(b, {-1, 2}).validate(), ValidationError);
  EXPECT_THROW(IntervalConstraint::single(1.0, -1.0, 2).validate(), ValidationError);
  EXPECT_THROW(IntervalConstraint::single(-1.0, 1.0, 0).validate(), ValidationError);
  IntervalConstraint overlap{{{-1.0, 0.5}, {0.0, 1.0}}, {1, 1}};
  EXPECT_THROW(overlap.validate(), ValidationError);
}

TEST(InitialGuess, ChebyshevPointsInMiddle) {
  const double b[] = {-1.0, 0.0, 1.0};
  const auto c = IntervalConstraint::between(b, {3, 1});
  const auto x = initial_guess(jacobi_field(0, 0), c);
  ASSERT_EQ(x.size(), 4u);
  EXPECT_TRUE(c.admits(x));
  for (int k = 1; k <= 3; ++k)
    EXPECT_NEAR(x[k - 1], -0.5 + 0.45 * std::cos((4 - k) * std::numbers::pi / 4), 1e-15);
  EXPECT_NEAR(x[3], 0.5, 1e-15);
  for (double v : x) EXPECT_GE(std::abs(v - std::round(v)), 0.05 - 1e-15);
}

TEST(InitialGuess, UnboundedIntervals) {
  const auto h = initial_guess(hermite_field(), IntervalConstraint::single(-kInf, kInf, 7));
  ASSERT_EQ(h.size(), 7u);
  EXPECT_TRUE(std::is_sorted(h.begin(), h.end()));
  const auto l =
      initial_guess(laguerre_field(0.5), IntervalConstraint::single(0.0, kInf, 5));
  EXPECT_GT(l.front(), 0.0);
  EXPECT_TRUE(std::isfinite(l.back()));
}

TEST(Minimize, Examples) {
  const auto legendre = minimize(jacobi_field(0, 0), IntervalConstraint::single(-1, 1, 2));
  const auto x = legendre.configuration.real_positions();
  EXPECT_NEAR(x[0], -1.0 / std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(x[1], 1.0 / std::sqrt(3.0), 1e-10);
  EXPECT_TRUE(legendre.diagnostics.hessian_positive_definite);

  const auto herm = minimize(hermite_field(), IntervalConstraint::single(-kInf, kInf, 2));
  EXPECT_NEAR(herm.configuration.real_positions()[0], -1.0 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(herm.configuration.real_positions()[1], 1.0 / std::sqrt(2.0), 1e-10);

  const auto jac = minimize(jacobi_field(0.5, -0.3), IntervalConstraint::single(-1, 1, 10));
  EXPECT_LT(max_deviation(jac.configuration.real_positions(),
                          oracle::jacobi_zeros(0.5, -0.3, 10)),
            1e-10);
  EXPECT_LT(jac.diagnostics.gradient_norm, 1e-10);
  EXPECT_FALSE(jac.diagnostics.stop_reason.empty());
}

TEST(Minimize, UnboundedFamilies) {
  for (double alpha : {0.0, 1.5}) {
    const auto r =
        minimize(laguerre_field(alpha), IntervalConstraint::single(0.0, kInf, 12));
    EXPECT_LT(max_deviation(r.configuration.real_positions(),
                            oracle::laguerre_zeros(alpha, 12)),
              1e-9);
  }
  const auto h = minimize(hermite_field(), IntervalConstraint::single(-kInf, kInf, 15));
  EXPECT_LT(max_deviation(h.configuration.real_positions(), oracle::hermite_zeros(15)),
            1e-10);
}

TEST(Minimize, IndependentOfStartingPoint) {
  std::mt19937_64 rng(31);
  const auto field = jacobi_field(2.0, 3.0);
  const auto c = IntervalConstraint::single(-1, 1, 12);
  const auto ref = minimize(field, c);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x0 = oracle::sorted_uniform(rng, 12, -0.999, 0.999);
    const auto r = minimize(field, c, {}, x0);
    EXPECT_LT(max_deviation(r.configuration.real_positions(),
                            ref.configuration.real_positions()),
              1e-9);
  }
}

TEST(Minimize, IteratesStayFeasibleAndEnergyDecreases) {
  std::mt19937_64 rng(37);
  const double poles[] = {-1.0, 0.0, 1.0};
  const double residues[] = {0.6, 0.8, 0.7};
  const auto field = lame_field(poles, residues);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = IntervalConstraint::between(poles, {trial % 5, 6 - trial % 5});
    std::vector<double> x0 = oracle::sorted_uniform(rng, trial % 5, -0.999, -0.001);
    const auto right = oracle::sorted_uniform(rng, 6 - trial % 5, 0.001, 0.999);
    x0.insert(x0.end(), right.begin(), right.end());
    double last = kInf;
    int calls = 0;
    SolverOptions options;
    options.observer = [&](std::span<const double> x, double e) {
      ++calls;
      EXPECT_TRUE(c.admits(x));
      EXPECT_LE(e, last + 64 * std::numeric_limits<double>::epsilon() * std::abs(e));
      last = e;
    };
    const auto r = minimize(field, c, options, x0);
    EXPECT_GT(calls, 1);
    EXPECT_EQ(static_cast<std::size_t>(calls), r.diagnostics.energy_history.size());
    EXPECT_NEAR(last, r.diagnostics.energy, 0.0);
  }
}

TEST(Minimize, Errors) {
  const auto c = IntervalConstraint::single(-1, 1, 3);
  EXPECT_THROW(minimize(jacobi_field(0, 0), c, {}, std::vector<double>{-0.5, 0.0, 1.5}),
               ValidationError);
  EXPECT_THROW(minimize(jacobi_field(0, 0), c, {}, std::vector<double>{0.1, 0.1, 0.2}),
               ValidationError);
  SolverOptions tight;
  tight.max_iterations = 1;
  tight.step_tolerance = 0.0;
  std::mt19937_64 rng(1);
  const auto x0 = oracle::sorted_uniform(rng, 20, -0.99, 0.99);
  try {
    (void)minimize(jacobi_field(0, 0), IntervalConstraint::single(-1, 1, 20), tight, x0);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.last_iterate().size(), 20u);
    EXPECT_GT(e.residual_norm(), 0.0);
    EXPECT_EQ(e.iterations(), 1);
  }
}

TEST(PolylineContinuum, Validation) {
  EXPECT_THROW(PolylineContinuum({C(-1.0), C(0.0, 1.0)}), ValidationError);
  EXPECT_THROW(PolylineContinuum({C(-1.0)}), ValidationError);
  EXPECT_NO_THROW(PolylineContinuum({C(-2.0, 1.0), C(-1.0), C(1.0)}));
}

TEST(PolylineContinuum, Geometry) {
  const PolylineContinuum k({C(-1.0), C(0.0, 1.0), C(1.0)});
  EXPECT_NEAR(k.length(), 2 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(k.point_at(std::sqrt(2.0)) - C(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k.tangent_at(0.1)), 1.0, 1e-15);
  const auto z = k.vertical_intersection(0.5);
  ASSERT_TRUE(z.has_value());
  EXPECT_NEAR(std::abs(*z - C(0.5, 0.5)), 0.0, 1e-15);
  EXPECT_FALSE(k.vertical_intersection(1.5).has_value());
}

TEST(Projection, Examples) {
  const PolylineContinuum segment({C(-1.0), C(1.0)});
  const auto x = ChargeConfiguration::real({-0.7, 0.1, 0.4});
  const auto z = project_onto_continuum(x, segment).complex_positions();
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(z[i], C(x.real_positions()[i]));

  const PolylineContinuum tent({C(-1.0), C(0.0, 1.0), C(1.0)});
  const auto w = project_onto_continuum(ChargeConfiguration::real({0.0}), tent);
  EXPECT_NEAR(std::abs(w.complex_positions()[0] - C(0.0, 1.0)), 0.0, 1e-15);
}

TEST(Projection, SmallestImaginaryPartWins) {
  // Two sheets over (-1, 1); the lower one is closer to the axis.
  const PolylineContinuum k({C(-1.0), C(0.0, 0.2), C(1.0), C(0.0, -2.0), C(-1.0, -0.1)});
  const auto z = project_onto_continuum(ChargeConfiguration::real({0.0}), k);
  EXPECT_NEAR(z.complex_positions()[0].imag(), 0.2, 1e-15);
}

TEST(Projection, MissReportsIndex) {
  const PolylineContinuum k({C(-1.0), C(1.0)});
  try {
    (void)project_onto_continuum(ChargeConfiguration::real({0.0, 0.5, 3.0}), k);
    FAIL() << "expected ProjectionError";
  } catch (const ProjectionError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Projection, EnergyAndDistanceInequalities) {
  std::mt19937_64 rng(41);
  const auto field = jacobi_field(0, 0);
  const auto xs = classical::zeros(classical::Family::jacobi(0, 0), 10);
  const auto x_star = ChargeConfiguration::real(xs);
  const double e_star = total_energy(x_star, field);
  for (int trial = 0; trial < 20; ++trial) {
    const auto k = random_polyline(rng);
    const auto z = project_onto_continuum(x_star, k).complex_positions();
    EXPECT_LT(total_energy(ChargeConfiguration::complex(z), field), e_star);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      EXPECT_EQ(z[i].real(), xs[i]);
      EXPECT_LE(std::abs(1.0 - xs[i]), std::abs(1.0 - z[i]));
      EXPECT_LE(std::abs(1.0 + xs[i]), std::abs(1.0 + z[i]));
      for (std::size_t j = 0; j < i; ++j)
        EXPECT_LE(std::abs(xs[i] - xs[j]), std::abs(z[i] - z[j]));
    }
  }
  const PolylineContinuum segment({C(-1.0), C(1.0)});
  EXPECT_EQ(total_energy(project_onto_continuum(x_star, segment), field), e_star);
}

TEST(MinimizeOnContinuum, SegmentReducesToRealProblem) {
  const PolylineContinuum segment({C(-1.0), C(0.0), C(1.0)});
  const auto r = minimize_on_continuum(jacobi_field(0, 0), segment, 2);
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(r.energy, total_energy(ChargeConfiguration::real({-s, s}), jacobi_field(0, 0)),
              1e-8);
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.starts_tried, 1);
}

TEST(MinimizeOnContinuum, SingleChargeMinimizesField) {
  std::mt19937_64 rng(43);
  const auto field = jacobi_field(0, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto k = random_polyline(rng);
    const auto r = minimize_on_continuum(field, k, 1);
    double best = kInf;
    const int m = 200000;
    for (int i = 1; i < m; ++i) best = std::min(best, field.value(k.point_at(k.length() * i / m)));
    for (const auto& v : k.vertices())
      if (!field.hits_charge(v)) best = std::min(best, field.value(v));
    EXPECT_NEAR(r.energy, best, 1e-8);
  }
}

TEST(MinimizeOnContinuum, BoundedByRealEquilibrium) {
  std::mt19937_64 rng(47);
  const auto field = jacobi_field(0, 0);
  const double e_star = total_energy(
      ChargeConfiguration::real(classical::zeros(classical::Family::jacobi(0, 0), 5)), field);
  for (int trial = 0; trial < 20; ++trial) {
    const auto k = random_polyline(rng);
    const auto r = minimize_on_continuum(field, k, 5);
    EXPECT_LE(r.energy, e_star + 1e-8);
    EXPECT_NEAR(r.energy, total_energy(r.configuration, field), 1e-12 * std::abs(r.energy));
  }
}

TEST(MinimizeOnContinuum, Errors) {
  const PolylineContinuum segment({C(-1.0), C(1.0)});
  EXPECT_THROW(minimize_on_continuum(jacobi_field(0, 0), segment, 0), ValidationError);
}

}  // namespace
}  // namespace charge_eq
