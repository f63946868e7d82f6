#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ldg/analysis.hpp"
#include "ldg/seed.hpp"
#include "ldg/solver.hpp"
#include "test_util.hpp"

using namespace ldg;

namespace {
const double pi = std::numbers::pi;

ModelParams params(double beta_s) { return ModelParams::make(1, 1, 1, beta_s / 1.5, std::nullopt, 0.05); }

Field2D seed(const Mesh& m, const ModelParams& p, double theta_d) {
  SeedSpec sp;
  sp.theta_d = theta_d;
  sp.eta = p.eta;
  sp.epsilon = p.xi;
  return build_seed(m, sp, p);
}

Field2D small_problem() {
  const ModelParams p = params(1.0);
  return seed(build_mesh({4.0, 40, 33, 1.04}), p, pi / 2);
}
}  // namespace

TEST(Solver, MonotoneAndConverged) {
  const Field2D f0 = small_problem();
  const auto res = minimize(f0, {.tol = 1e-4});
  const auto& rep = res.report;
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.status, "converged");
  EXPECT_LE(rep.grad_norm, 1e-4);
  ASSERT_EQ(rep.energy_trace.size(), std::size_t(rep.iterations) + 1);
  for (std::size_t k = 1; k < rep.energy_trace.size(); ++k) ASSERT_LT(rep.energy_trace[k], rep.energy_trace[k - 1]);
  EXPECT_EQ(rep.final_energy, rep.energy_trace.back());
  EXPECT_LT(rep.final_energy, rep.initial_energy);
  EXPECT_LE(boundary_violation(res.field), 1e-12);
  for (const auto& q : res.field.values) EXPECT_LE(q.norm(), kSqrtTwoThirds * 1.5 + 1e-12);
  const auto e = assemble_energy(res.field);
  EXPECT_EQ(e.total, res.energy.total);
  EXPECT_EQ(e.total, rep.final_energy);
}

TEST(Solver, ConvergedStartNeedsNoIterations) {
  const auto res = minimize(small_problem(), {.tol = 1e-3});
  const auto again = minimize(res.field, {.tol = 1e-3});
  EXPECT_EQ(again.report.iterations, 0);
  EXPECT_EQ(again.report.status, "converged");
  EXPECT_TRUE(again.field.values == res.field.values);
}

TEST(Solver, MaxIterReported) {
  const auto res = minimize(small_problem(), {.tol = 1e-12, .max_iter = 3});
  EXPECT_FALSE(res.report.converged);
  EXPECT_EQ(res.report.status, "max-iter");
  EXPECT_EQ(res.report.iterations, 3);
}

TEST(Solver, StallCarriesLastField) {
  const Field2D f0 = small_problem();
  try {
    minimize(f0, {.tol = 1e-12, .initial_step = 1e3, .min_step = 1e3, .max_step = 1e3});
    FAIL() << "expected a stall";
  } catch (const SolverStall& e) {
    EXPECT_EQ(e.report.status, "stalled");
    EXPECT_EQ(e.report.iterations, 0);
    EXPECT_NEAR(e.report.final_energy, assemble_total(f0), 1e-12 * e.report.final_energy);
    double diff = 0.0;
    for (std::size_t k = 0; k < f0.values.size(); ++k) diff = std::max(diff, (e.field.values[k] - f0.values[k]).norm());
    EXPECT_LT(diff, 1e-14);
  }
}

TEST(Solver, RejectsBrokenBoundary) {
  Field2D f = small_problem();
  f.at(0, 5)[0] += 1e-3;
  EXPECT_THROW(minimize(f), BoundaryViolation);
}

TEST(Solver, ThreadCountDoesNotChangeResult) {
  const Field2D f0 = small_problem();
  const auto a = minimize(f0, {.tol = 1e-3, .threads = 1});
  const auto b = minimize(f0, {.tol = 1e-3, .threads = 4});
  EXPECT_EQ(a.report.iterations, b.report.iterations);
  EXPECT_TRUE(a.field.values == b.field.values);
}

TEST(Solver, ReflectedSeedsReachEqualEnergies) {
  const ModelParams p = params(1.0);
  const Mesh m = build_mesh({4.0, 40, 33, 1.04});
  for (double td : {1.0, 1.3}) {
    const auto a = minimize(seed(m, p, td), {.tol = 1e-4});
    const auto b = minimize(seed(m, p, pi - td), {.tol = 1e-4});
    EXPECT_NEAR(a.report.final_energy, b.report.final_energy, 1e-6 * a.report.final_energy) << td;
  }
}

TEST(Solver, SaturnSeedKeepsRingNearEquator) {
  const ModelParams p = params(0.5);
  const Mesh m = build_mesh({8.0, 128, 96, 1.03});
  const auto res = minimize(seed(m, p, pi / 2), {.tol = 1e-3});
  ASSERT_TRUE(res.report.converged);
  bool found = false;
  for (int i = 0; i < m.n_r(); ++i)
    for (int j = 0; j < m.n_theta(); ++j)
      if (biaxiality_phi(res.field.at(i, j), p.s_star) < 0.3 && std::abs(m.theta[j] - pi / 2) < 0.15 &&
          m.r[i] > 1.0 && m.r[i] < 1 + 4 * p.eta)
        found = true;
  EXPECT_TRUE(found);
}
