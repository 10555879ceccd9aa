// SPDX-License-Identifier: Apache-2.0
#include "fsg/diagnostics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fsg/errors.hpp"

namespace fsg {
namespace {

TEST(DiscreteEnergy, UnitAuxiliaryOnly) {
  const GridSpec grid(-3.0, 5.0, 16);
  const FracOperator op(FractionalOrder(1.7), grid);
  IeqState s;
  s.u.assign(op.size(), 0.0);
  s.v.assign(op.size(), 0.0);
  s.w.assign(op.size(), 1.0);
  EXPECT_NEAR(discrete_energy(s, op), grid.h() * 15.0, 1e-14);
}

TEST(DiscreteEnergy, BreatherInitialLevelMatchesContinuousEnergy) {
  // phi = 0, so the continuous energy is 1/2 int psi^2 = 16 / omega.
  const double omega = 1.1;
  for (double alpha : {1.3, 2.0}) {
    for (double h : {0.2, 0.1}) {
      const GridSpec grid = GridSpec::from_mesh_size(-40.0, 40.0, h);
      const FracOperator op(FractionalOrder(alpha), grid);
      const auto d = initial_data(ProblemSpec::breather(omega), grid);
      const auto s = make_initial_state(d.phi, d.psi);
      const double offset = h * static_cast<double>(grid.interior_size());
      const double e0 = discrete_energy(s, op) - offset;
      EXPECT_NEAR(e0, continuous_energy_on_grid(s.u, s.v, op), 1e-12);
      EXPECT_LE(std::abs(e0 - 16.0 / omega), 0.05 * h * h);
    }
  }
}

TEST(DiscreteEnergy, SechPulseApproachesQuadratureReference) {
  // Reference continuous energy of 3.2 sech(x) at alpha = 2 on (-40, 40),
  // from adaptive high-precision quadrature.
  const double reference = 9.19284330601938826;
  std::vector<double> gaps;
  for (double h : {0.2, 0.1, 0.05}) {
    const GridSpec grid = GridSpec::from_mesh_size(-40.0, 40.0, h);
    const FracOperator op(FractionalOrder(2.0), grid);
    const auto d = initial_data(ProblemSpec::sech_pulse(), grid);
    gaps.push_back(std::abs(continuous_energy_on_grid(d.phi, d.psi, op) - reference));
  }
  EXPECT_LE(gaps[0], 0.05);
  EXPECT_NEAR(gaps[0] / gaps[1], 4.0, 0.2);
  EXPECT_NEAR(gaps[1] / gaps[2], 4.0, 0.2);
}

TEST(AuxiliaryDrift, ZeroAtInitialLevel) {
  const std::vector<double> u{0.1, -2.0, 3.0};
  const auto s = make_initial_state(u, u);
  EXPECT_EQ(auxiliary_drift(s), 0.0);
}

TEST(EnergySeries, RelativeErrorAgainstFirstEntry) {
  EnergySeries es;
  es.record(0, 0.0, 2.0);
  es.record(1, 0.1, 2.002);
  es.record(5, 0.5, 1.999);
  EXPECT_EQ(es.entries()[0].relative_error, 0.0);
  EXPECT_NEAR(es.entries()[1].relative_error, 1e-3, 1e-15);
  EXPECT_NEAR(es.max_relative_error(), 1e-3, 1e-15);
  EXPECT_EQ(es.initial_energy(), 2.0);
}

TEST(EnergySeries, RejectsBadInput) {
  EnergySeries es;
  EXPECT_THROW(es.initial_energy(), ValidationError);
  EXPECT_THROW(es.record(0, 0.0, 0.0), ValidationError);
  es.record(3, 0.3, 1.0);
  EXPECT_THROW(es.record(3, 0.3, 1.0), ValidationError);
  EXPECT_THROW(es.record(2, 0.2, 1.0), ValidationError);
}

TEST(MaxNormErrorExact, ZeroForExactSamples) {
  const GridSpec grid(-20.0, 20.0, 100);
  const auto u = exact_breather_on(grid, 0.7, 1.1);
  EXPECT_EQ(max_norm_error_exact(u, grid, 0.7, 1.1), 0.0);
  EXPECT_THROW(max_norm_error_exact(std::vector<double>(3), grid, 0.7, 1.1), ValidationError);
}

TEST(MaxNormErrorSelf, ConstantFieldsAgree) {
  const GridSpec coarse(-1.0, 1.0, 10);
  const GridSpec fine = coarse.refined();
  const std::vector<double> c(coarse.interior_size(), 0.25);
  const std::vector<double> f(fine.interior_size(), 0.25);
  EXPECT_EQ(max_norm_error_self(c, coarse, f, fine), 0.0);
}

TEST(MaxNormErrorSelf, CoarseNodesCoincideWithEvenFineNodes) {
  const GridSpec coarse(-20.0, 20.0, 200);
  const GridSpec fine = coarse.refined();
  for (std::size_t j = 0; j <= coarse.subintervals(); ++j) {
    ASSERT_EQ(coarse.node(j), fine.node(2 * j));
  }
  // A field that differs only on odd fine nodes is invisible to the comparison.
  const auto xc = coarse.interior_nodes();
  const auto xf = fine.interior_nodes();
  std::vector<double> c(xc.size()), f(xf.size());
  for (std::size_t i = 0; i < xc.size(); ++i) c[i] = std::sin(xc[i]);
  for (std::size_t i = 0; i < xf.size(); ++i) f[i] = std::sin(xf[i]) + (i % 2 == 0 ? 1.0 : 0.0);
  EXPECT_EQ(max_norm_error_self(c, coarse, f, fine), 0.0);
}

TEST(MaxNormErrorSelf, RejectsIncompatibleGrids) {
  const GridSpec coarse(-1.0, 1.0, 10);
  const GridSpec other(-1.0, 1.0, 30);
  const std::vector<double> c(9), f(29);
  EXPECT_THROW(max_norm_error_self(c, coarse, f, other), ValidationError);
  const GridSpec shifted(-1.0, 1.5, 20);
  EXPECT_THROW(max_norm_error_self(c, coarse, std::vector<double>(19), shifted), ValidationError);
  EXPECT_THROW(max_norm_error_self(c, coarse, std::vector<double>(5), coarse.refined()),
               ValidationError);
}

TEST(ConvergenceOrders, QuarteringErrorsGiveExactlyTwo) {
  const std::vector<double> e{1.0, 0.25, 0.0625, 0.015625};
  const auto p = convergence_orders(e);
  EXPECT_FALSE(p[0].has_value());
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_EQ(*p[i], 2.0);
}

TEST(ConvergenceLadder, SelfComparisonOrdersNearTwo) {
  LadderSpec spec;
  spec.problem = ProblemSpec::sech_pulse();
  spec.alpha = 1.6;
  spec.levels = 2;
  const auto rep = convergence_ladder(spec);
  EXPECT_EQ(rep.mode, ErrorMode::SelfComparison);
  ASSERT_EQ(rep.ladder.size(), 2u);
  EXPECT_EQ(rep.ladder[0].h, 0.2);
  EXPECT_EQ(rep.ladder[1].tau, 0.01);
  EXPECT_FALSE(rep.ladder[0].order.has_value());
  ASSERT_TRUE(rep.ladder[1].order.has_value());
  EXPECT_GE(*rep.ladder[1].order, 1.9);
  EXPECT_LE(*rep.ladder[1].order, 2.1);
}

TEST(ConvergenceLadder, ExactModeForClassicalBreather) {
  LadderSpec spec;
  spec.problem = ProblemSpec::breather(1.1);
  spec.levels = 2;
  spec.parallel = false;
  const auto rep = convergence_ladder(spec);
  EXPECT_EQ(rep.mode, ErrorMode::ExactSolution);
  EXPECT_GE(*rep.ladder[1].order, 1.9);
  EXPECT_LE(*rep.ladder[1].order, 2.1);
}

TEST(ConvergenceLadder, SingleLevelHasNoOrder) {
  LadderSpec spec;
  spec.problem = ProblemSpec::sech_pulse();
  spec.levels = 1;
  const auto rep = convergence_ladder(spec);
  ASSERT_EQ(rep.ladder.size(), 1u);
  EXPECT_GT(rep.ladder[0].error, 0.0);
  EXPECT_FALSE(rep.ladder[0].order.has_value());
}

TEST(ConvergenceLadder, RejectsZeroLevels) {
  LadderSpec spec;
  spec.levels = 0;
  EXPECT_THROW(convergence_ladder(spec), ValidationError);
}

}  // namespace
}  // namespace fsg
