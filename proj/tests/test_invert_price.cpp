#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "asianq/error.hpp"
#include "asianq/invert_price.hpp"
#include "asianq/normalize.hpp"

using asianq::cplx;
using asianq::InversionConfig;

TEST(Invert, ElementaryPairs) {
  const InversionConfig cfg;
  EXPECT_NEAR(asianq::invert([](cplx z) { return 1.0 / z; }, 1.0, 0.0, cfg), 1.0, 1e-10);
  EXPECT_NEAR(asianq::invert([](cplx z) { return 1.0 / (z * z); }, 3.0, 0.0, cfg), 3.0, 1e-10);
  EXPECT_NEAR(asianq::invert([](cplx z) { return 1.0 / (z + 1.0); }, 2.0, 0.0, cfg),
              std::exp(-2.0), 1e-10);
  // Exponential growth: the abscissa is 0.5.
  EXPECT_NEAR(asianq::invert([](cplx z) { return 1.0 / (z - 0.5); }, 2.0, 0.5, cfg),
              std::exp(1.0), 1e-10);
}

TEST(Invert, TalbotOnLeftHalfPlaneTransforms) {
  InversionConfig cfg;
  cfg.algorithm = asianq::InversionAlgorithm::fixed_talbot;
  EXPECT_NEAR(asianq::invert([](cplx z) { return 1.0 / (z * z); }, 3.0, 0.0, cfg), 3.0, 1e-10);
  EXPECT_NEAR(asianq::invert([](cplx z) { return 1.0 / (z + 1.0); }, 2.0, 0.0, cfg),
              std::exp(-2.0), 1e-9);
  try {
    asianq::invert([](cplx z) { return 1.0 / (z - 0.5); }, 2.0, 0.5, cfg);
    FAIL();
  } catch (const asianq::Error& e) {
    EXPECT_EQ(e.kind(), asianq::ErrorKind::invalid_input);
  }
}

TEST(Invert, MomentTransformRoundTrip) {
  // 1/(z(z - 2(nu + 1))) is the transform of E[A_h]. The scheme is accurate
  // to about 1e-10 relative; rounding in the alternating series limits the
  // absolute error once the moment is large.
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> unu(-2.0, 4.0);
  std::uniform_real_distribution<double> uh(0.0, 3.0);
  InversionConfig cfg;
  cfg.target_abs_tol = INFINITY;
  for (int i = 0; i < 50; ++i) {
    const double nu = unu(gen);
    const double h = std::max(uh(gen), 1e-3);
    auto F = [nu](cplx z) { return 1.0 / (z * (z - 2.0 * (nu + 1.0))); };
    const double got = asianq::invert(F, h, std::max(0.0, 2.0 * (nu + 1.0)), cfg);
    const double want = asianq::moment_A(nu, h);
    EXPECT_LT(std::abs(got - want), 1e-9 * want) << "nu=" << nu << " h=" << h;
    if (want <= 100.0) {
      EXPECT_LT(std::abs(got - want), 1e-8) << "nu=" << nu << " h=" << h;
    }
  }
}

TEST(Invert, RejectsBadConfig) {
  auto F = [](cplx z) { return 1.0 / z; };
  InversionConfig cfg;
  cfg.terms = 8;
  EXPECT_THROW(asianq::invert(F, 1.0, 0.0, cfg), asianq::Error);
  cfg = {};
  cfg.contour_shift = -1.0;
  EXPECT_THROW(asianq::invert(F, 1.0, 0.0, cfg), asianq::Error);
  EXPECT_THROW(asianq::invert(F, 0.0, 0.0, {}), asianq::Error);
}

TEST(Invert, NonconvergenceIsReported) {
  // Too few terms for this tolerance.
  InversionConfig cfg;
  cfg.terms = 10;
  cfg.target_abs_tol = 1e-15;
  try {
    asianq::invert([](cplx z) { return 1.0 / std::sqrt(z * z + 1.0); }, 20.0, 0.0, cfg);
    FAIL();
  } catch (const asianq::Error& e) {
    EXPECT_EQ(e.kind(), asianq::ErrorKind::nonconvergence);
  }
}

TEST(PriceAsianLaplace, NormalizedTableValues) {
  // mpmath Talbot inversion at 40 digits, tests/oracles/pricing_oracle.py
  struct Case {
    double nu, h, q, want;
  };
  const Case cases[] = {
      {3.0, 0.0025, 0.0025, 7.13962932575045e-5},
      {3.0, 0.0225, 0.0225, 0.00294139533008011},
      {-0.6, 0.03125, 0.03125, 0.00275983976499186},
      {-0.6, 0.0625, 0.0625 * 2.0 / 1.9, 0.0066801981021369},
      {-0.6, 0.0625, 0.0625, 0.00809530290966369},
      {-0.6, 0.0625, 0.0625 * 2.0 / 2.1, 0.00958097079256067},
      {-0.6, 0.125, 0.125, 0.024182190909868},
      {3.5, 0.01, 0.01, 0.00074155998824107764},
      {1.0, 0.0225, 0.0225, 0.0021735450462465183},
      {0.125, 0.04, 0.04, 0.0047810032834186355},
      {-0.28, 0.0625, 0.0625, 0.0089094204521271969},
  };
  for (const auto& c : cases) {
    const auto r = asianq::price_asian_laplace(c.nu, c.h, c.q);
    EXPECT_NEAR(r.value, c.want, 1e-12) << c.nu << " " << c.h << " " << c.q;
    EXPECT_LE(r.error_estimate, 1e-9);
    EXPECT_EQ(r.method, asianq::PriceMethod::laplace_euler);
    EXPECT_FALSE(std::get<bool>(r.diagnostics.at("clipped")));
  }
}

TEST(PriceAsianLaplace, ContinuousAtZeroStrike) {
  for (double nu : {-0.6, 1.0, 3.0}) {
    const double h = 0.0625;
    const double q = 1e-7;
    const double c = asianq::price_asian_laplace(nu, h, q).value;
    EXPECT_NEAR(c, asianq::price_nonpositive_q(nu, h, 0.0) - q, 1e-6) << nu;
  }
}

TEST(PriceAsianLaplace, Monotone) {
  for (double nu : {-0.6, 1.0}) {
    double prev = INFINITY;
    for (double q : {0.01, 0.03, 0.06, 0.1, 0.2}) {
      const double c = asianq::price_asian_laplace(nu, 0.0625, q).value;
      EXPECT_LT(c, prev);
      prev = c;
    }
    prev = 0.0;
    for (double h : {0.01, 0.03, 0.06, 0.1, 0.2}) {
      const double c = asianq::price_asian_laplace(nu, h, 0.05).value;
      EXPECT_GT(c, prev);
      prev = c;
    }
  }
}

TEST(PriceAsianLaplace, DoublingTermsWithinErrorEstimate) {
  for (double nu : {-0.6, 3.0}) {
    InversionConfig cfg;
    const auto base = asianq::price_asian_laplace(nu, 0.0625, 0.0625, cfg);
    cfg.terms *= 2;
    const auto fine = asianq::price_asian_laplace(nu, 0.0625, 0.0625, cfg);
    EXPECT_LE(std::abs(fine.value - base.value), base.error_estimate + 1e-15) << nu;
  }
}

TEST(PriceAsianLaplace, RejectsNonpositiveStrike) {
  EXPECT_THROW(asianq::price_asian_laplace(0.0, 0.1, 0.0), asianq::Error);
  EXPECT_THROW(asianq::price_asian_laplace(0.0, 0.0, 0.1), asianq::Error);
}
