#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "predprey/errors.hpp"
#include "predprey/oracle.hpp"

using namespace predprey;

TEST(HomogeneousOde, EquilibriumStaysPut) {
  const ModelParams p;
  const SteadyState ss = steady_states(p);
  const auto traj = oracle::homogeneous_ode(ss.u_star, ss.v_star, p, 5.0);
  EXPECT_NEAR(traj.u.back(), ss.u_star, 1e-12);
  EXPECT_NEAR(traj.v.back(), ss.v_star, 1e-12);
  EXPECT_EQ(traj.times.front(), 0.0);
  EXPECT_EQ(traj.times.back(), 5.0);
}

TEST(HomogeneousOde, PreyAloneIsLogistic) {
  // Without predators v' = v (m2 - v), solved in closed form.
  ModelParams p;
  p.m2 = 2.0;
  const std::vector<double> times{0.5, 1.0, 3.0, 8.0};
  const auto traj = oracle::homogeneous_ode_at(0.0, 0.3, p, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_EQ(traj.u[k], 0.0);
    EXPECT_NEAR(traj.v[k], logistic_comparison(0.3, 2.0, times[k]), 1e-9 * traj.v[k]);
  }
}

TEST(HomogeneousOde, PredatorAloneIsLogistic) {
  ModelParams p;
  p.m1 = 1.5;
  const double t = 2.0;
  const auto traj = oracle::homogeneous_ode(0.2, 0.0, p, t);
  const double exact = 1.0 / (1.0 / 1.5 + (1.0 / 0.2 - 1.0 / 1.5) * std::exp(-1.5 * t));
  EXPECT_NEAR(traj.u.back(), exact, 1e-9);
}

TEST(HomogeneousOde, ConvergesToCoexistence) {
  const ModelParams p;
  const auto traj = oracle::homogeneous_ode(0.2, 2.0, p, 60.0);
  EXPECT_NEAR(traj.u.back(), 1.5, 1e-8);
  EXPECT_NEAR(traj.v.back(), 0.5, 1e-8);
}

TEST(HomogeneousOde, RejectsBadInput) {
  EXPECT_THROW(oracle::homogeneous_ode(-1.0, 1.0, ModelParams{}, 1.0), InvalidArgument);
  const std::vector<double> backwards{1.0, 0.5};
  EXPECT_THROW(oracle::homogeneous_ode_at(1.0, 1.0, ModelParams{}, backwards), InvalidArgument);
}

TEST(HeatEigenmode, SecondOrderInSpace) {
  std::vector<std::pair<double, double>> pairs;
  for (int n : {32, 64, 128}) pairs.emplace_back(1.0 / n, oracle::heat_eigenmode_error(n, 1, 1.0, 0.1));
  EXPECT_GE(oracle::refinement_order(pairs), 1.9);
}

TEST(HeatEigenmode, ConstantModeIsExact) {
  EXPECT_EQ(oracle::heat_eigenmode_error(16, 0, 1.0, 0.1), 0.0);
}

TEST(HeatEigenmode, FlippedSignIsUnstable) {
  EXPECT_TRUE(std::isinf(oracle::heat_eigenmode_error(64, 1, 1.0, 0.1, -1.0)));
}

TEST(RefinementOrder, Examples) {
  const std::vector<std::pair<double, double>> quad{{0.1, 0.01}, {0.05, 0.0025}, {0.025, 0.000625}};
  EXPECT_NEAR(oracle::refinement_order(quad), 2.0, 1e-12);
  const std::vector<std::pair<double, double>> lin{{0.1, 0.3}, {0.05, 0.15}};
  EXPECT_NEAR(oracle::refinement_order(lin), 1.0, 1e-12);
}

TEST(RefinementOrder, DegenerateInputs) {
  const std::vector<std::pair<double, double>> exact{{0.1, 0.0}, {0.05, 0.0}};
  EXPECT_THROW(oracle::refinement_order(exact), DegenerateInput);
  const std::vector<std::pair<double, double>> single{{0.1, 0.1}};
  EXPECT_THROW(oracle::refinement_order(single), InvalidArgument);
  const std::vector<std::pair<double, double>> same_h{{0.1, 0.1}, {0.1, 0.2}};
  EXPECT_THROW(oracle::refinement_order(same_h), InvalidArgument);
}

TEST(SolverRefinement, CentralSchemeIsSecondOrder) {
  ModelParams p;
  SchemeConfig cfg;
  cfg.taxis = TaxisScheme::Central;
  const std::vector<int> cells{16, 32, 64};
  const auto errors = oracle::solver_refinement_errors(
      p, cfg, cells, 256, 1.0, 0.05, [](double x) {
        return std::pair{1.5 + 0.5 * std::cos(std::numbers::pi * x),
                         0.5 + 0.3 * std::cos(2.0 * std::numbers::pi * x)};
      });
  EXPECT_GE(oracle::refinement_order(errors), 1.8);
}

TEST(SolverRefinement, ReferenceMustNest) {
  const std::vector<int> cells{24};
  EXPECT_THROW(oracle::solver_refinement_errors(ModelParams{}, SchemeConfig{}, cells, 64, 1.0, 0.01,
                                                [](double) { return std::pair{1.0, 1.0}; }),
               InvalidArgument);
}
