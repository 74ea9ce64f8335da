#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pareto/fixtures.hpp"
#include "pareto/minimize.hpp"
#include "pareto/spectrum.hpp"

#include <cmath>
#include <random>

using namespace pareto;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

void expect_feasible(const Vector& x, Kind kind, int order, double tol) {
  EXPECT_GE(x.minCoeff(), 0.0);
  EXPECT_NEAR(norm(x, norm_exponent(kind, order)), 1.0, tol);
}

}  // namespace

TEST(Minimize, SkewedQuarticAtThreshold) {
  const double t = fixtures::skewed_quartic_threshold();
  const MinimizeResult r = minimize(fixtures::skewed_quartic(t), Kind::H, SolverConfig{});
  EXPECT_NEAR(r.value, 0.0, 1e-10);
  EXPECT_LT((r.argmin - fixtures::skewed_quartic_interior_vector()).lpNorm<Eigen::Infinity>(), 1e-5);
  EXPECT_TRUE(r.warnings.empty());
  expect_feasible(r.argmin, Kind::H, 4, 1e-10);
}

TEST(Minimize, DiagonalReachesSmallestEntry) {
  for (int m : {3, 4, 5}) {
    const MinimizeResult r = minimize(fixtures::diagonal(m, {4, 2, 6}), Kind::H, SolverConfig{});
    EXPECT_NEAR(r.value, 2.0, 1e-9) << m;
    EXPECT_LT((r.argmin - Vector::Unit(3, 1)).lpNorm<Eigen::Infinity>(), 1e-4) << m;
  }
}

TEST(Minimize, MatrixZ) {
  // On x = (c, s), 1 - 4 c s is smallest at c = s = sqrt(2)/2.
  const std::vector<RawEntry> raw{{{0, 0}, 1.0}, {{1, 1}, 1.0}, {{0, 1}, -2.0}, {{1, 0}, -2.0}};
  const MinimizeResult r = minimize(Tensor::build(2, 2, raw), Kind::Z, SolverConfig{});
  EXPECT_NEAR(r.value, -1.0, 1e-12);
  EXPECT_LT((r.argmin - v2(std::sqrt(0.5), std::sqrt(0.5))).lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST(Minimize, ResultInvariants) {
  const Tensor t = fixtures::skewed_quartic(-1.0);
  for (Kind kind : {Kind::H, Kind::Z}) {
    SolverConfig cfg;
    cfg.starts = 25;
    const MinimizeResult r = minimize(t, kind, cfg);
    expect_feasible(r.argmin, kind, 4, 1e-10);
    EXPECT_NEAR(r.value, apply_full(t, r.argmin), 1e-12);
    EXPECT_EQ(r.starts_used, 25);
    EXPECT_GT(r.converged_starts, 0);
    EXPECT_EQ(r.kind, kind);
    EXPECT_LE(r.kkt_residual, 1e-8);
  }
}

TEST(Minimize, NonSymmetricWarns) {
  EXPECT_FALSE(minimize(fixtures::two_well_quartic(), Kind::H, SolverConfig{}).warnings.empty());
}

TEST(Minimize, Deterministic) {
  const Tensor t = fixtures::rejected_vertex_cubic();
  const MinimizeResult a = minimize(t, Kind::H, SolverConfig{});
  const MinimizeResult b = minimize(t, Kind::H, SolverConfig{});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmin, b.argmin);
}

TEST(KktResidual, Examples) {
  const double r8 = std::pow(8.0, 0.25) / 2;
  const KktEstimate stationary = kkt_residual(fixtures::two_well_quartic(), v2(r8, r8), Kind::H);
  EXPECT_NEAR(stationary.lambda, 0.0, 1e-12);
  EXPECT_LE(stationary.residual, 1e-10);

  const KktEstimate zero = kkt_residual(Tensor::build(3, 2, {}), v2(1, 0), Kind::H);
  EXPECT_EQ(zero.lambda, 0.0);
  EXPECT_TRUE(zero.y.isZero(0.0));
  EXPECT_EQ(zero.residual, 0.0);

  const KktEstimate vertex = kkt_residual(fixtures::rejected_vertex_cubic(), v2(1, 0), Kind::H);
  EXPECT_NEAR(vertex.y[0], 0.0, 1e-15);
  EXPECT_NEAR(vertex.y[1], -2.0 / 3, 1e-15);
  EXPECT_NEAR(vertex.residual, 2.0 / 3, 1e-15);
}

TEST(KktResidual, RejectsInfeasiblePoints) {
  const Tensor t = fixtures::rejected_vertex_cubic();
  EXPECT_THROW(kkt_residual(t, v2(-0.1, 1), Kind::H), std::invalid_argument);
  EXPECT_THROW(kkt_residual(t, v2(1, 1), Kind::Z), std::invalid_argument);
  EXPECT_THROW(kkt_residual(t, Vector::Unit(3, 0), Kind::Z), std::invalid_argument);
}

TEST(GridLowerBound, Examples) {
  // The two-well quartic is not symmetric, so its constrained minimum
  // 3/2 - sqrt(5/2) (over a = x1^2, b = x2^2 on the unit circle) sits below
  // its smallest Pareto H-eigenvalue 0.
  const Tensor well = fixtures::two_well_quartic();
  const double g = grid_lower_bound(well, Kind::H, 64);
  const double gamma = 1.5 - std::sqrt(2.5);
  EXPECT_LE(g, 1e-2);
  EXPECT_GE(g, gamma);
  EXPECT_NEAR(minimize(well, Kind::H, SolverConfig{}).value, gamma, 1e-10);
  EXPECT_EQ(grid_lower_bound(Tensor::build(4, 3, {}), Kind::Z, 8), 0.0);
  EXPECT_NEAR(grid_lower_bound(fixtures::skewed_quartic(0.0), Kind::H, 64), 1.0, 1e-2);
}

TEST(GridLowerBound, Errors) {
  EXPECT_THROW(grid_lower_bound(fixtures::diagonal(3, {1, 2, 3, 4, 5}), Kind::H, 16), std::invalid_argument);
  EXPECT_THROW(grid_lower_bound(fixtures::diagonal(3, {1, 2}), Kind::H, 7), std::invalid_argument);
}

TEST(MinimizeProperties, DescentIsMonotoneAndFeasible) {
  std::mt19937_64 rng(17);
  const auto raw = oracle::random_symmetric_raw(rng, 4, 3);
  const Tensor t = Tensor::build(4, 3, raw);
  for (Kind kind : {Kind::H, Kind::Z}) {
    auto start_rng = detail::start_rng(99, 0, 0);
    const Vector start = detail::random_start(start_rng, 3, kind, 4);
    double previous = apply_full(t, start);
    for (int iters = 1; iters <= 30; ++iters) {
      SolverConfig cfg;
      cfg.max_iters = iters;
      const auto out = detail::projected_descent(t, kind, cfg, start);
      expect_feasible(out.x, kind, 4, 1e-12);
      EXPECT_LE(out.value, previous + 1e-15) << iters;
      previous = out.value;
    }
  }
}

TEST(MinimizeProperties, SandwichOnExamples) {
  struct Case {
    Tensor t;
    Kind kind;
  };
  const std::vector<Case> cases{{fixtures::two_well_quartic(), Kind::H},
                                {fixtures::skewed_quartic(0.0), Kind::H},
                                {fixtures::skewed_quartic(-1.0), Kind::H},
                                {fixtures::skewed_quartic(-1.0), Kind::Z}};
  for (const auto& c : cases) {
    const double best = minimize(c.t, c.kind, SolverConfig{}).value;
    double previous_gap = std::numeric_limits<double>::infinity();
    for (int r : {8, 32, 128}) {
      const double g = grid_lower_bound(c.t, c.kind, r);
      EXPECT_LE(best, g + 1e-12);
      EXPECT_LE(g - best, previous_gap + 1e-12);
      previous_gap = g - best;
    }
  }
}

TEST(MinimizeProperties, MatchesMinParetoOnRandomSymmetric) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const int m = 3 + trial % 2;
    const int n = 2 + trial % 3;
    const Tensor t = Tensor::build(m, n, oracle::random_symmetric_raw(rng, m, n));
    for (Kind kind : {Kind::H, Kind::Z}) {
      const MinimizeResult r = minimize(t, kind, SolverConfig{});
      EXPECT_NEAR(r.value, min_pareto(t, kind, SolverConfig{}).value, 1e-6) << trial << to_string(kind);
      // The minimizer is itself a Pareto eigenvector for lambda = A x^m.
      EXPECT_TRUE(verify_pareto_pair(t, r.value, r.argmin, kind, 1e-6).pass) << trial << to_string(kind);
    }
  }
}
