#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pareto/copositivity.hpp"
#include "pareto/fixtures.hpp"

#include <cmath>
#include <random>

using namespace pareto;

TEST(Classify, SkewedQuarticFamily) {
  const double t0 = fixtures::skewed_quartic_threshold();
  struct Case {
    double t;
    Classification expected;
  };
  for (const Case& c : {Case{-1.0, Classification::not_copositive}, Case{t0, Classification::copositive_boundary},
                        Case{0.5 * t0, Classification::strictly_copositive},
                        Case{0.0, Classification::strictly_copositive},
                        Case{1.0, Classification::strictly_copositive}}) {
    const Tensor t = fixtures::skewed_quartic(c.t);
    const CopositivityVerdict v = classify(t, Route::Both, SolverConfig{});
    EXPECT_EQ(v.classification, c.expected) << c.t << " " << to_string(v.classification);
    EXPECT_NEAR(v.min_eigenvalue, fixtures::skewed_quartic_gamma(c.t), 1e-8) << c.t;
    ASSERT_TRUE(v.z_min_eigenvalue.has_value());
    EXPECT_EQ(std::signbit(*v.z_min_eigenvalue) || std::abs(*v.z_min_eigenvalue) <= 1e-7,
              std::signbit(v.min_eigenvalue) || std::abs(v.min_eigenvalue) <= 1e-7);
    EXPECT_NEAR(v.margin, std::abs(v.min_eigenvalue) - 1e-7, 1e-15);
  }
}

TEST(Classify, NotCopositiveCertificateAndWitness) {
  const Tensor t = fixtures::skewed_quartic(-1.0);
  const CopositivityVerdict v = classify(t, Route::H, SolverConfig{});
  ASSERT_EQ(v.classification, Classification::not_copositive);
  EXPECT_GE(v.certificate.minCoeff(), 0.0);
  EXPECT_LT(apply_full(t, v.certificate), 0.0);
  ASSERT_TRUE(v.witness_corroborated.has_value());
  EXPECT_TRUE(*v.witness_corroborated);
  EXPECT_FALSE(v.z_min_eigenvalue.has_value());
}

TEST(Classify, ZeroTensorIsBoundary) {
  const CopositivityVerdict v = classify(Tensor::build(4, 2, {}), Route::Both, SolverConfig{});
  EXPECT_EQ(v.classification, Classification::copositive_boundary);
  EXPECT_EQ(v.min_eigenvalue, 0.0);
  EXPECT_LT(v.margin, 0.0);
}

TEST(Classify, RejectsNonSymmetricAndBadBand) {
  EXPECT_THROW(classify(fixtures::two_well_quartic(), Route::H, SolverConfig{}), std::invalid_argument);
  EXPECT_THROW(classify(fixtures::skewed_quartic(0.0), Route::H, SolverConfig{}, -1.0), std::invalid_argument);
}

TEST(ClassifyValue, Bands) {
  EXPECT_EQ(classify_value(-1e-6, 1e-7), Classification::not_copositive);
  EXPECT_EQ(classify_value(-1e-7, 1e-7), Classification::copositive_boundary);
  EXPECT_EQ(classify_value(5e-8, 1e-7), Classification::copositive_boundary);
  EXPECT_EQ(classify_value(2e-7, 1e-7), Classification::strictly_copositive);
}

TEST(DirectWitnessSearch, Examples) {
  const auto witness = direct_witness_search(fixtures::skewed_quartic(-1.0), SolverConfig{});
  ASSERT_TRUE(witness.has_value());
  EXPECT_LT((*witness - fixtures::skewed_quartic_interior_vector()).lpNorm<Eigen::Infinity>(), 1e-5);
  EXPECT_LT(apply_full(fixtures::skewed_quartic(-1.0), *witness), 0.0);
  EXPECT_FALSE(direct_witness_search(Tensor::build(3, 2, {}), SolverConfig{}).has_value());
  EXPECT_FALSE(direct_witness_search(fixtures::diagonal(3, {1, 1, 1}), SolverConfig{}).has_value());
}

TEST(CopositivityProperties, RoutesAgreeOnRandomSymmetric) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + trial % 2;
    const int n = 2 + trial % 2;
    const Tensor t = Tensor::build(m, n, oracle::random_symmetric_raw(rng, m, n));
    const CopositivityVerdict h = classify(t, Route::H, SolverConfig{});
    const CopositivityVerdict z = classify(t, Route::Z, SolverConfig{});
    EXPECT_EQ(h.classification, z.classification) << trial;
    EXPECT_NE(h.classification, Classification::inconclusive) << trial;

    // The verdict does not depend on which norm the witness search uses.
    EXPECT_EQ(direct_witness_search(t, SolverConfig{}, Kind::H).has_value(),
              direct_witness_search(t, SolverConfig{}, Kind::Z).has_value())
        << trial;

    if (h.classification == Classification::not_copositive) {
      EXPECT_GE(h.certificate.minCoeff(), 0.0);
      EXPECT_LT(apply_full(t, h.certificate), 0.0);
    }
    if (h.classification == Classification::strictly_copositive) EXPECT_GT(grid_lower_bound(t, Kind::H, 64), 0.0);
  }
}

TEST(CopositivityProperties, ShiftedPositiveTensorsAreStrict) {
  // A random symmetric tensor plus a large diagonal is strictly copositive;
  // the grid bound must then be positive too.
  std::mt19937_64 rng(37);
  auto raw = oracle::random_symmetric_raw(rng, 4, 3, 0.0, 1.0);
  for (int i = 0; i < 3; ++i) raw.push_back({{i, i, i, i}, 2.0});
  const Tensor t = Tensor::build(4, 3, raw);
  const CopositivityVerdict v = classify(t, Route::Both, SolverConfig{});
  EXPECT_EQ(v.classification, Classification::strictly_copositive);
  EXPECT_GT(grid_lower_bound(t, Kind::H, 64), 0.0);
  EXPECT_FALSE(v.witness_corroborated.has_value());
}
