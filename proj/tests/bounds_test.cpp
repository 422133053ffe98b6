#include <cmath>

#include <gtest/gtest.h>

#include "hypercorr/bounds.hpp"
#include "hypercorr/combinatorics.hpp"
#include "hypercorr/errors.hpp"

namespace hypercorr {
namespace {

constexpr double kInvE = 0.36787944117144233;

TEST(GaussianRho2Threshold, Examples) {
  EXPECT_NEAR(gaussian_rho2_threshold(10, 3).value, 0.38376418216567437, 1e-12);
  EXPECT_NEAR(gaussian_rho2_threshold(8, 4).value, 0.47530092381253386, 1e-12);
  EXPECT_FALSE(gaussian_rho2_threshold(10, 3).infeasible);
  EXPECT_LT(gaussian_rho2_threshold(10, 4).value, gaussian_rho2_threshold(10, 3).value);
  // 2*5*ln(5)/C(5,2) = 1.609...: no admissible correlation at this size.
  EXPECT_TRUE(gaussian_rho2_threshold(5, 2).infeasible);
  EXPECT_THROW(gaussian_rho2_threshold(3, 3), ParameterError);
  EXPECT_THROW(gaussian_rho2_threshold(5, 1), ParameterError);
}

TEST(AlphaP, Examples) {
  EXPECT_DOUBLE_EQ(alpha_p(1.0), 0.0);
  EXPECT_NEAR(alpha_p(std::exp(-1.0)), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(alpha_p(0.5), 0.096573590279972643, 1e-15);
  EXPECT_GT(alpha_p(0.1), 0.0);
  EXPECT_THROW(alpha_p(0.0), ParameterError);
  EXPECT_THROW(alpha_p(-0.5), ParameterError);
}

TEST(ErS2Threshold, Examples) {
  EXPECT_NEAR(er_s2_threshold(20, 3, 0.5).value, 0.54421406930418281, 1e-12);
  EXPECT_FALSE(er_s2_threshold(20, 3, 0.5).infeasible);
  // p -> 1 starves alpha_p; the curve blows past 1 and is flagged.
  EXPECT_TRUE(er_s2_threshold(20, 3, 0.999999).infeasible);
  EXPECT_THROW(er_s2_threshold(20, 3, 1.0), ParameterError);
}

TEST(ThresholdCurves, DecreaseInArity) {
  for (int m = 2; m < 6; ++m) {
    EXPECT_GT(gaussian_rho2_threshold(12, m).value, gaussian_rho2_threshold(12, m + 1).value);
    EXPECT_GT(er_s2_threshold(12, m, 0.5).value, er_s2_threshold(12, m + 1, 0.5).value);
  }
}

TEST(ChernoffUpper, Examples) {
  EXPECT_NEAR(chernoff_upper(30.0, 1e-12), 1.0, 1e-9);
  EXPECT_NEAR(chernoff_upper(30.0, 0.5), 0.038932345700194597, 1e-12);
  EXPECT_THROW(chernoff_upper(0.0, 0.5), ParameterError);
  EXPECT_THROW(chernoff_upper(10.0, 0.0), ParameterError);
}

TEST(ChernoffLower, Examples) {
  EXPECT_NEAR(chernoff_lower(10.0, 1.0), 0.006737946999085467, 1e-15);
  EXPECT_NEAR(chernoff_lower(10.0, 1e-12), 1.0, 1e-9);
  EXPECT_THROW(chernoff_lower(10.0, 0.0), ParameterError);
  EXPECT_THROW(chernoff_lower(10.0, 1.5), ParameterError);
}

TEST(ExactTails, FrozenOracleValues) {
  EXPECT_NEAR(exact_binomial_upper_tail(100, 0.3, 45), 0.0010857460646854584, 1e-15);
  EXPECT_NEAR(exact_binomial_lower_tail(100, 0.3, 15), 0.00040499954194376468, 1e-16);
  EXPECT_NEAR(exact_poisson_upper_tail(1.0, 2.718281828459045), 0.080301397071394193, 1e-15);
}

TEST(ChernoffDomination, BinomialSuite) {
  // X ~ Bin(100, mu/100): both bounds must sit above the exact tails.
  for (double mu : {10.0, 30.0}) {
    const double p = mu / 100.0;
    for (double delta : {0.1, 0.5, 1.0}) {
      EXPECT_LE(exact_binomial_upper_tail(100, p, (1 + delta) * mu), chernoff_upper(mu, delta))
          << "upper mu=" << mu << " delta=" << delta;
      EXPECT_LE(exact_binomial_lower_tail(100, p, (1 - delta) * mu), chernoff_lower(mu, delta))
          << "lower mu=" << mu << " delta=" << delta;
    }
  }
}

TEST(ChernoffDomination, SpecificExamples) {
  EXPECT_LE(exact_binomial_upper_tail(100, 0.3, 45), chernoff_upper(30, 0.5));
  EXPECT_LE(exact_binomial_lower_tail(100, 0.3, 15), 0.023517745856009107);  // e^{-3.75}
}

TEST(LambertW, AnchorsAndBranchPoint) {
  EXPECT_DOUBLE_EQ(lambert_w(0.0, LambertBranch::kPrincipal), 0.0);
  EXPECT_NEAR(lambert_w(std::exp(1.0), LambertBranch::kPrincipal), 1.0, 1e-14);
  EXPECT_NEAR(lambert_w(-kInvE, LambertBranch::kPrincipal), -1.0, 1e-9);
  EXPECT_NEAR(lambert_w(-kInvE, LambertBranch::kLower), -1.0, 1e-9);
  EXPECT_NEAR(lambert_w(kInvE, LambertBranch::kPrincipal), 0.2784645427610738, 1e-14);
}

TEST(LambertW, ResidualsOnStatedGrid) {
  const double xs[] = {-kInvE + 1e-9, -0.1, 0.0, 0.5, 1.0, std::exp(1.0), 10.0, 1000.0};
  for (double x : xs) {
    const double w = lambert_w(x, LambertBranch::kPrincipal);
    EXPECT_LE(std::fabs(w * std::exp(w) - x), 1e-12) << "x=" << x;
  }
  const double lower_xs[] = {-kInvE + 1e-9, -0.35, -0.2, -0.1, -0.01};
  for (double x : lower_xs) {
    const double w = lambert_w(x, LambertBranch::kLower);
    EXPECT_LE(w, -1.0 + 1e-6);
    EXPECT_LE(std::fabs(w * std::exp(w) - x), 1e-12) << "x=" << x;
  }
}

TEST(LambertW, DomainErrors) {
  EXPECT_THROW(lambert_w(-0.5, LambertBranch::kPrincipal), ParameterError);
  EXPECT_THROW(lambert_w(-0.5, LambertBranch::kLower), ParameterError);
  EXPECT_THROW(lambert_w(0.1, LambertBranch::kLower), ParameterError);
}

TEST(PoissonizationThreshold, Examples) {
  EXPECT_NEAR(poissonization_tail_threshold(1.0, 1.0), std::exp(1.0), 1e-12);  // W(0) = 0
  EXPECT_NEAR(poissonization_tail_threshold(7.5, 7.5), 7.5 * std::exp(1.0), 1e-12);
  EXPECT_NEAR(poissonization_tail_threshold(5.0, 10.0), 17.955607383343114, 1e-9);
  EXPECT_NEAR(poissonization_tail_threshold(10.0, 20.0), 35.911214766686228, 1e-9);
  EXPECT_THROW(poissonization_tail_threshold(10.0, 5.0), ParameterError);
  EXPECT_THROW(poissonization_tail_threshold(0.0, 1.0), ParameterError);
}

TEST(PoissonizationThreshold, DominatesExactTails) {
  const double cases[][2] = {{1.0, 1.0}, {5.0, 10.0}, {10.0, 20.0}};
  for (const auto& c : cases) {
    const double mu = c[0], t = c[1];
    const double tau = poissonization_tail_threshold(mu, t);
    EXPECT_LE(exact_poisson_upper_tail(mu, tau), std::exp(-t)) << "mu=" << mu << " t=" << t;
  }
  // Binomial cross-check with matched mean: Bin(1000, 0.01), mu = 10.
  const double tau = poissonization_tail_threshold(10.0, 20.0);
  EXPECT_LE(exact_binomial_upper_tail(1000, 0.01, tau), std::exp(-20.0));
}

TEST(TailBoundReports, ExactNeverExceedsBound) {
  const TailBoundReport upper = chernoff_upper_report(30.0, 0.5, 100);
  ASSERT_TRUE(upper.exact.has_value());
  EXPECT_LE(*upper.exact, upper.bound);
  EXPECT_NEAR(upper.bound, 0.038932345700194597, 1e-12);

  const TailBoundReport lower = chernoff_lower_report(10.0, 1.0, 100);
  ASSERT_TRUE(lower.exact.has_value());
  EXPECT_LE(*lower.exact, lower.bound);

  const TailBoundReport pois = poissonization_report(5.0, 10.0);
  ASSERT_TRUE(pois.exact.has_value());
  EXPECT_NEAR(pois.bound, std::exp(-10.0), 1e-18);
  EXPECT_LE(*pois.exact, pois.bound);
  EXPECT_DOUBLE_EQ(pois.deviation, 10.0);  // reports t; the threshold itself is tau
  EXPECT_DOUBLE_EQ(*pois.exact,
                   exact_poisson_upper_tail(5.0, poissonization_tail_threshold(5.0, 10.0)));
}

TEST(Zeta, PrintedExample) {
  const ZetaResult z = zeta(100, 100, 3, 0.1, 0.1);  // s^2 = 0.01
  EXPECT_NEAR(z.gamma, 1.0470916391836396, 1e-9);
  EXPECT_NEAR(z.zeta, 447.09641129411727, 1e-6);
}

TEST(Zeta, SmallGammaExpansionRegime) {
  // Parameters tuned so gamma = 1e-4; the ratio zeta / (C(k,m) p s^2) must
  // stay within the first-order expansion window 1 + 3*sqrt(2*gamma).
  const int k = 400, n = 400, m = 3;
  const double p = 0.8, s = 0.894231581398;
  const ZetaResult z = zeta(k, n, m, p, s);
  EXPECT_NEAR(z.gamma, 1e-4, 1e-6);
  const double ratio = z.zeta / (static_cast<double>(binomial(k, m)) * p * s * s);
  EXPECT_NEAR(ratio, 1.0141754298207493, 1e-9);
  EXPECT_LE(std::fabs(ratio - 1.0), 3.0 * std::sqrt(2.0 * z.gamma));
}

TEST(Zeta, SmallestAdmissibleK) {
  const ZetaResult z = zeta(3, 100, 3, 0.5, 0.5);  // C(3,3) = 1
  EXPECT_TRUE(std::isfinite(z.zeta));
  EXPECT_GT(z.zeta, 0.0);
  EXPECT_THROW(zeta(2, 100, 3, 0.5, 0.5), ParameterError);
  EXPECT_THROW(zeta(101, 100, 3, 0.5, 0.5), ParameterError);
  EXPECT_THROW(zeta(50, 100, 3, 0.5, 0.0), ParameterError);
}

TEST(HansonWright, Examples) {
  EXPECT_NEAR(hanson_wright_bound(100.0, 0.01), 26.064830448881565, 1e-12);
  EXPECT_NEAR(hanson_wright_bound(100.0, 1.0 - 1e-12), 0.0, 1e-4);
  // Doubling d scales the sqrt term by exactly sqrt(2).
  const double log_term = std::log(1.0 / 0.01);
  const double first_d = hanson_wright_bound(100.0, 0.01) - log_term;
  const double first_2d = hanson_wright_bound(200.0, 0.01) - log_term;
  EXPECT_NEAR(first_2d, std::sqrt(2.0) * first_d, 1e-12);
  EXPECT_THROW(hanson_wright_bound(0.5, 0.01), ParameterError);
  EXPECT_THROW(hanson_wright_bound(100.0, 0.0), ParameterError);
  EXPECT_THROW(hanson_wright_bound(100.0, 1.5), ParameterError);
}

TEST(HansonWright, ConstantScalesLinearly) {
  EXPECT_NEAR(hanson_wright_bound(100.0, 0.01, 2.0), 2.0 * hanson_wright_bound(100.0, 0.01),
              1e-12);
}

}  // namespace
}  // namespace hypercorr
