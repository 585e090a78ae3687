#include <probo/acquisition.hpp>
#include <probo/error.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace probo {
namespace {

TEST(Lcb, Examples) {
  EXPECT_EQ(score_lcb({2.0, 0.0}, 5.0).value, 2.0);
  EXPECT_EQ(score_lcb({2.0, 4.0}, 1.0).value, 0.0);
  EXPECT_EQ(score_lcb({-3.5, 17.0}, 0.0).value, -3.5);
}

TEST(Glcb, Examples) {
  EXPECT_EQ(score_glcb({1.0, 1.0}, 2.0, 1.0, 0.5).value, -1.0);
  // Zero width, as at a training point: identical to LCB.
  EXPECT_EQ(score_glcb({0.7, 0.3}, 0.0, 2.0, 3.0).value, score_lcb({0.7, 0.3}, 2.0).value);
}

TEST(Glcb, ReducesToLcbWithZeroRho) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0), pos(0.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const Prediction p{u(rng), pos(rng)};
    const double tau = pos(rng);
    EXPECT_NEAR(score_glcb(p, pos(rng), tau, 0.0).value, score_lcb(p, tau).value, 1e-12);
  }
}

TEST(Glcb, NonincreasingInWidth) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const Prediction p{u(rng), pos(rng)};
    const double w1 = pos(rng), w2 = w1 + pos(rng);
    const double tau = pos(rng), rho = pos(rng) + 1e-3;
    EXPECT_LE(score_glcb(p, w2, tau, rho).value, score_glcb(p, w1, tau, rho).value);
  }
}

TEST(ExpectedImprovement, DegenerateVariance) {
  EXPECT_EQ(expected_improvement({1.0, 0.0}, 1.0), 0.0);
  EXPECT_EQ(expected_improvement({0.0, 0.0}, 1.0), 1.0);
  EXPECT_EQ(expected_improvement({3.0, 0.0}, 1.0), 0.0);
  EXPECT_EQ(score_ei({0.0, 0.0}, 1.0).value, -1.0);
}

TEST(ExpectedImprovement, StandardNormalValue) {
  EXPECT_NEAR(expected_improvement({0.0, 1.0}, 0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-14);
}

TEST(ExpectedImprovement, AgreesWithMonteCarlo) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0), v(0.01, 4.0);
  for (int i = 0; i < 10; ++i) {
    const Prediction p{u(rng), v(rng)};
    const double psi = u(rng);
    const auto mc = oracle::monte_carlo_ei(p.mu, p.var, psi, 100000, 100 + i);
    EXPECT_NEAR(expected_improvement(p, psi), mc.mean, 3.0 * mc.stderr_) << "case " << i;
  }
}

TEST(ExpectedImprovement, NonnegativeAndNonincreasingInMu) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-20.0, 20.0), v(0.0, 9.0);
  for (int i = 0; i < 5000; ++i) {
    const double var = i % 10 == 0 ? 0.0 : v(rng);
    const double psi = u(rng), mu = u(rng), mu2 = mu + std::abs(u(rng));
    const double a = expected_improvement({mu, var}, psi);
    EXPECT_GE(a, 0.0);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_LE(expected_improvement({mu2, var}, psi), a + 1e-15);
  }
}

TEST(Acquisition, ShiftingMuShiftsScoresUniformly) {
  // Adding a constant to mu (and to the incumbent, for EI) moves every score
  // by the same amount, so the argmin over candidates is unchanged.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0), v(0.0, 2.0);
  std::vector<Prediction> cands(50);
  std::vector<double> widths(50);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    cands[i] = {u(rng), v(rng)};
    widths[i] = v(rng);
  }
  const double shift = 12.5, psi = -1.0;
  auto argmin = [&](auto score) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
      if (score(i) < score(best)) best = i;
    }
    return best;
  };
  auto shifted = [&](std::size_t i) { return Prediction{cands[i].mu + shift, cands[i].var}; };
  EXPECT_EQ(argmin([&](std::size_t i) { return score_lcb(cands[i], 1.0).value; }),
            argmin([&](std::size_t i) { return score_lcb(shifted(i), 1.0).value; }));
  EXPECT_EQ(argmin([&](std::size_t i) { return score_glcb(cands[i], widths[i], 1.0, 0.7).value; }),
            argmin([&](std::size_t i) { return score_glcb(shifted(i), widths[i], 1.0, 0.7).value; }));
  EXPECT_EQ(argmin([&](std::size_t i) { return score_ei(cands[i], psi).value; }),
            argmin([&](std::size_t i) { return score_ei(shifted(i), psi + shift).value; }));
  for (std::size_t i = 0; i < cands.size(); ++i) {
    EXPECT_NEAR(score_lcb(shifted(i), 1.0).value - score_lcb(cands[i], 1.0).value, shift, 1e-12);
  }
}

TEST(NormalFunctions, ReferenceValues) {
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-13);
  EXPECT_NEAR(normal_cdf(-3.0), 0.0013498980316301, 1e-15);
  EXPECT_NEAR(normal_pdf(1.0), 0.24197072451914337, 1e-15);
  for (double z = -8.0; z <= 8.0; z += 0.25) EXPECT_NEAR(normal_cdf(z) + normal_cdf(-z), 1.0, 1e-15);
}

TEST(AcquisitionSpec, ParsesLongAndShortForms) {
  const auto glcb = AcquisitionSpec::parse("glcb:tau=1,rho=1,c=100");
  EXPECT_EQ(glcb.kind, AcquisitionKind::GLCB);
  EXPECT_EQ(glcb.tau, 1.0);
  EXPECT_EQ(glcb.rho, 1.0);
  EXPECT_EQ(glcb.c, 100.0);
  EXPECT_EQ(AcquisitionSpec::parse("glcb-1-100"), glcb);
  EXPECT_EQ(glcb.label(), "glcb-1-100");

  const auto four = AcquisitionSpec::parse("glcb-2-0.5-10");
  EXPECT_EQ(four.tau, 2.0);
  EXPECT_EQ(four.rho, 0.5);
  EXPECT_EQ(four.c, 10.0);

  EXPECT_EQ(AcquisitionSpec::parse("lcb-2").tau, 2.0);
  EXPECT_EQ(AcquisitionSpec::parse("lcb:tau=2"), AcquisitionSpec::parse("lcb-2"));
  EXPECT_EQ(AcquisitionSpec::parse("ei").kind, AcquisitionKind::EI);
}

TEST(AcquisitionSpec, RoundTripsThroughText) {
  for (const char* text : {"ei", "lcb", "lcb:tau=0.25", "glcb:tau=1,rho=0,c=1e-12", "glcb-3-7"}) {
    const auto spec = AcquisitionSpec::parse(text);
    EXPECT_EQ(AcquisitionSpec::parse(spec.to_string()), spec) << text;
    EXPECT_EQ(AcquisitionSpec::parse(spec.label()), spec) << text;
  }
}

TEST(AcquisitionSpec, RejectsMalformedText) {
  for (const char* text : {"pi", "ei:tau=1", "lcb:tau", "lcb:rho=1", "glcb:c=0", "glcb:tau=-1", "lcb-1-2",
                           "glcb:tau=x"}) {
    EXPECT_THROW(AcquisitionSpec::parse(text), InvalidArgument) << text;
  }
}

}  // namespace
}  // namespace probo
