#include <gtest/gtest.h>

#include <cmath>

#include "common/oracle_values.hpp"
#include "ginibias/distributions.hpp"
#include "ginibias/errors.hpp"
#include "ginibias/expectation.hpp"
#include "ginibias/gini.hpp"

using namespace ginibias;

namespace {

const int kSizes[] = {2, 3, 25, 50, 75, 100};

TEST(PoissonExpectation, MatchesOracle) {
  for (const auto& o : oracle::kPoissonExpectation) {
    const auto r = poisson_expected_ghat(o.param, o.n);
    EXPECT_NEAR(r.value, o.value, 1e-11) << o.param << " " << o.n;
    EXPECT_EQ(r.method, ExpectationMethod::poisson_integral);
  }
  EXPECT_NEAR(poisson_expected_ghat(1.0, 2).value, 0.54872870817033095, 1e-12);
}

TEST(PoissonExpectation, Domain) {
  EXPECT_THROW(poisson_expected_ghat(0.0, 5), DomainError);
  EXPECT_THROW(poisson_expected_ghat(1.0, 1), DomainError);
  EXPECT_THROW(poisson_expected_ghat(25.0, 5), DomainError);
  EXPECT_NO_THROW(poisson_expected_ghat(20.0, 5));
}

TEST(GeometricExpectation, ClosedFormMatchesOracle) {
  for (const auto& o : oracle::kGeometricExpectation) {
    EXPECT_NEAR(geometric_expected_ghat(o.param, o.n).value, o.value, 1e-13)
        << o.param << " " << o.n;
    EXPECT_NEAR(geometric_expected_ghat_integral(o.param, o.n).value, o.value, 1e-10)
        << o.param << " " << o.n;
  }
  EXPECT_NEAR(geometric_expected_ghat(0.5, 2).value, 0.5686632680417569, 1e-15);
}

TEST(GeometricExpectation, NearDegeneratePopulation) {
  // Pinned against the bound 1 - p^n = 0.0247023, which the expectation nearly attains.
  EXPECT_NEAR(geometric_expected_ghat(0.999, 25).value, 0.024689890992882772, 1e-14);
  EXPECT_NEAR(geometric_expected_ghat(1 - 1e-9, 25).value, 25e-9, 1e-12);
}

TEST(GeometricExpectation, HypergeometricExpression) {
  // The hypergeometric expression is kept for comparison; it is not the expectation.
  const auto r = geometric_expected_ghat_hypergeometric(0.5, 2);
  EXPECT_EQ(r.method, ExpectationMethod::geometric_2f1);
  EXPECT_NEAR(r.value, 0.4097659786685495, 1e-13);
}

TEST(GenericExpectation, AgreesWithFamilyPaths) {
  for (const auto& o : oracle::kPoissonExpectation) {
    EXPECT_NEAR(expected_ghat_generic(Model::poisson(o.param), o.n).value, o.value, 1e-8)
        << o.param << " " << o.n;
  }
  for (const auto& o : oracle::kGeometricExpectation) {
    EXPECT_NEAR(expected_ghat_generic(Model::geometric(o.param), o.n).value, o.value, 1e-8)
        << o.param << " " << o.n;
  }
}

TEST(GenericExpectation, GammaIsUnbiased) {
  for (const auto& o : oracle::kGammaGini) {
    for (double rate : {0.5, 1.0, 3.0}) {
      for (int n : {2, 5, 25, 100}) {
        const auto r = expected_ghat_generic(Model::gamma(o.x, rate), n);
        EXPECT_NEAR(r.value, o.y, 1e-8) << o.x << " " << rate << " " << n;
      }
    }
  }
  EXPECT_NEAR(expected_ghat_generic(Model::gamma(2, 1), 5).value, 0.375, 1e-8);
}

TEST(GenericExpectation, ReportsConvergenceFailure) {
  EXPECT_THROW(expected_ghat_generic(Model::poisson(2), 10, {1e-300, 1e-300, 10}), ConvergenceError);
  EXPECT_THROW(expected_ghat_generic(Model::poisson(2), 1), DomainError);
}

TEST(BruteForce, AgreesWithAnalytic) {
  EXPECT_NEAR(brute_force_expected_ghat(Model::poisson(0.5), 2, 20),
              poisson_expected_ghat(0.5, 2).value, 1e-9);
  EXPECT_NEAR(brute_force_expected_ghat(Model::poisson(0.5), 3, 20),
              poisson_expected_ghat(0.5, 3).value, 1e-9);
  EXPECT_NEAR(brute_force_expected_ghat(Model::geometric(0.5), 2, 60),
              geometric_expected_ghat(0.5, 2).value, 1e-9);
  EXPECT_NEAR(brute_force_expected_ghat(Model::geometric(0.3), 3, 120),
              geometric_expected_ghat(0.3, 3).value, 1e-9);
}

TEST(BruteForce, NearDegenerate) {
  EXPECT_LT(brute_force_expected_ghat(Model::geometric(0.999999), 2, 10), 1e-5);
}

TEST(BruteForce, Refusals) {
  EXPECT_THROW(brute_force_expected_ghat(Model::gamma(1, 1), 2, 10), std::invalid_argument);
  EXPECT_THROW(brute_force_expected_ghat(Model::poisson(1), 4, 10), std::invalid_argument);
  EXPECT_THROW(brute_force_expected_ghat(Model::poisson(1), 3, 500), std::invalid_argument);
  EXPECT_THROW(brute_force_expected_ghat(Model::poisson(5), 2, 5), std::invalid_argument);
}

TEST(Dispatch, FastPaths) {
  EXPECT_EQ(expected_ghat(Model::poisson(1), 5).method, ExpectationMethod::poisson_integral);
  EXPECT_EQ(expected_ghat(Model::geometric(0.4), 5).method, ExpectationMethod::geometric_closed);
  const auto g = expected_ghat(Model::gamma(2, 4), 5);
  EXPECT_EQ(g.method, ExpectationMethod::gamma_closed);
  EXPECT_NEAR(g.value, 0.375, 1e-15);
  EXPECT_EQ(to_string(ExpectationMethod::generic_quadrature), "generic_quadrature");
}

TEST(Bias, ReportIsConsistent) {
  for (const Model& m : {Model::poisson(1), Model::geometric(0.5), Model::gamma(5, 2)}) {
    for (int n : kSizes) {
      const BiasReport r = bias(m, n);
      EXPECT_EQ(r.bias, r.expectation - r.gini);
      EXPECT_EQ(r.n, n);
      EXPECT_LE(r.lower_bound, r.bias + 1e-9) << m.describe() << " " << n;
      EXPECT_GE(r.upper_bound, r.bias - 1e-9) << m.describe() << " " << n;
    }
  }
}

TEST(Bias, KnownValues) {
  EXPECT_NEAR(bias(Model::poisson(1), 2).bias, 0.024951096367722247, 1e-12);
  EXPECT_NEAR(bias(Model::geometric(0.5), 2).bias, -0.0980033986249098, 1e-12);
  EXPECT_NEAR(bias(Model::gamma(5, 2), 30).bias, 0.0, 1e-8);
  const BiasReport g = bias(Model::geometric(0.5), 2);
  EXPECT_NEAR(g.lower_bound, -0.25 * 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.upper_bound, 0.75 - 2.0 / 3.0, 1e-15);
}

TEST(Bias, SandwichOnGrid) {
  for (double l : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (int n : {3, 25, 50, 75, 100}) {
      const BiasReport r = bias(Model::poisson(l), n);
      EXPECT_GE(r.bias, r.lower_bound - 1e-9);
      EXPECT_LE(r.bias, r.upper_bound + 1e-9);
    }
  }
  for (double p : {0.1, 0.2, 0.4, 0.6, 0.8}) {
    for (int n : kSizes) {
      const BiasReport r = bias(Model::geometric(p), n);
      const double pn = std::pow(p, n);
      EXPECT_GE(r.expectation, (1 - pn) * r.gini - 1e-9);
      EXPECT_LE(r.expectation, 1 - pn + 1e-9);
    }
  }
}

TEST(Bias, ShrinksWithSampleSize) {
  for (double l : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    EXPECT_LT(std::abs(bias(Model::poisson(l), 100).bias), std::abs(bias(Model::poisson(l), 2).bias));
  }
}

TEST(PlugIn, PoissonAndGeometric) {
  EXPECT_NEAR(plug_in_bias(Family::poisson, 1.0, 2), bias(Model::poisson(1), 2).bias, 1e-15);
  EXPECT_NEAR(plug_in_bias(Family::geometric, 1.0, 2), bias(Model::geometric(0.5), 2).bias, 1e-15);
  EXPECT_EQ(plug_in_bias(Family::gamma, 3.0, 10), 0.0);
  EXPECT_THROW(plug_in_bias(Family::poisson, 0.0, 2), DomainError);
}

TEST(PlugIn, CorrectedEstimate) {
  const Sample s({0, 2});  // mean 1, G^ = 1
  EXPECT_NEAR(corrected_estimate(s, Family::poisson), 1.0 - 0.024951096367722247, 1e-12);
  EXPECT_NEAR(corrected_estimate(s, Family::geometric), 1.0 + 0.0980033986249098, 1e-12);
  const Sample c({0.3, 1.7, 4.0});
  EXPECT_EQ(corrected_estimate(c, Family::gamma), estimate_gini(c).value);
  EXPECT_THROW(corrected_estimate(Sample({0, 0, 0}), Family::poisson), DomainError);
}

}  // namespace
