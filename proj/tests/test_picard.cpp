#include <gtest/gtest.h>

#include <cmath>

#include "wavelab/dynamics.hpp"
#include "wavelab/error.hpp"
#include "wavelab/picard.hpp"

using namespace wavelab;

namespace {

GridSpec radial() { return {GridMode::radial1d, 256, 32.0}; }

EquationParams eq14() {
  EquationParams eq;
  eq.params.alpha = 1;
  eq.params.b = Rational(1, 4);
  return eq;
}

Field bump(double amp) {
  return Field::from_radial(radial(), [=](double r) { return amp * std::exp(-r * r); });
}

}  // namespace

TEST(Picard, ZeroDataIsOneIteration) {
  PicardConfig cfg;
  const auto sol = solve_local(Field(radial()), Field(radial()), cfg, eq14());
  EXPECT_EQ(sol.report.outcome, PicardOutcome::converged);
  EXPECT_EQ(sol.report.iterations, 1);
}

TEST(Picard, SmallDataContracts) {
  PicardConfig cfg;
  cfg.snapshots = 33;
  const auto sol = solve_local(bump(0.5), Field(radial()), cfg, eq14());
  EXPECT_TRUE(sol.report.contracted());
  EXPECT_LE(sol.report.d.back(), cfg.tol);
}

TEST(Picard, AgreesWithReferenceIntegrator) {
  PicardConfig cfg;
  cfg.snapshots = 65;
  cfg.tol = 1e-12;
  const auto phi = bump(0.8);
  const auto sol = solve_local(phi, Field(radial()), cfg, eq14());
  ASSERT_EQ(sol.report.outcome, PicardOutcome::converged);
  const auto g = radial();
  const double dt = cfg.T / 64 / 8;
  ReferenceIntegrator ri({phi, Field(g)}, make_weight(g, 0.25, g.spacing()), 1.0, dt);
  double gap = 0;
  for (int i = 0; i < 65; ++i) {
    ri.advance_to(i * 8 * dt);
    gap = std::max(gap, lp_norm(sol.trajectory.u[i] - ri.state().u, 2));
  }
  EXPECT_LT(gap, 1e-5);
}

TEST(Picard, AutoRadiusScalesWithData) {
  PicardEngine eng(radial(), eq14(), PicardConfig{});
  const double a1 = eng.auto_radius(bump(1.0), Field(radial()));
  const double a2 = eng.auto_radius(bump(2.0), Field(radial()));
  EXPECT_DOUBLE_EQ(a2, 2 * a1);
}

TEST(Picard, ThresholdShrinksWithAmplitude) {
  PicardConfig cfg;
  cfg.snapshots = 33;
  cfg.velocities = false;
  const auto t1 = bisect_threshold(bump(1.5), Field(radial()), cfg, eq14(), 0.5, 4.0, 6);
  const auto t2 = bisect_threshold(bump(3.0), Field(radial()), cfg, eq14(), 0.5, 4.0, 6);
  EXPECT_TRUE(t1.bracketed);
  EXPECT_LT(t2.T_star, t1.T_star);
}

TEST(Picard, RejectsIneligibleParameters) {
  EquationParams eq;
  eq.params.alpha = 2;
  eq.params.b = 1;
  EXPECT_THROW(PicardEngine(radial(), eq, PicardConfig{}), EligibilityError);
  eq.params.alpha = 1;
  eq.params.b = Rational(1, 2);  // boundary alpha = (4 - 2b)/3
  EXPECT_THROW(PicardEngine(radial(), eq, PicardConfig{}), EligibilityError);
}

TEST(Picard, ConfigValidation) {
  PicardConfig cfg;
  cfg.snapshots = 5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Picard, HsModeRuns) {
  EquationParams eq;
  eq.params.alpha = Rational(1, 2);
  eq.params.b = 1;
  eq.params.s = Rational(1, 4);
  PicardConfig cfg;
  cfg.snapshots = 33;
  cfg.norm = WorkingNorm::hs;
  cfg.T = 0.5;
  const auto sol = solve_local(bump(0.5), Field(radial()), cfg, eq);
  EXPECT_TRUE(sol.report.contracted());
}

TEST(Continuation, SmallDataReachesHorizon) {
  PicardConfig cfg;
  cfg.snapshots = 17;
  ContinuationOptions opts;
  opts.max_intervals = 40;
  const auto run = run_small_data(bump(1.0), Field(radial()), 0.5, 4.0, cfg, eq14(), opts);
  EXPECT_TRUE(run.reached_horizon);
  EXPECT_TRUE(run.within_bound);
  EXPECT_LT(run.max_energy_drift, 1e-3);
  ASSERT_FALSE(run.continuation.trajectory.times.empty());
  EXPECT_NEAR(run.continuation.trajectory.times.back(), 4.0, 1e-12);
}
