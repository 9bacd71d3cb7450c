#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "asianq/complexfn.hpp"
#include "asianq/error.hpp"
#include "asianq/quadrature.hpp"

using asianq::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Frozen values from tests/oracles/complexfn_oracle.py (mpmath, 40 digits).
struct Pair {
  cplx z, want;
};
struct Triple {
  cplx mu, z, want;
};

}  // namespace

TEST(PrincipalSqrt, BasicValues) {
  EXPECT_EQ(asianq::principal_sqrt({4.0, 0.0}), cplx(2.0, 0.0));
  EXPECT_EQ(asianq::principal_sqrt(0.0), cplx(0.0, 0.0));
  const cplx r = asianq::principal_sqrt({-1.0, 0.0});
  EXPECT_DOUBLE_EQ(r.real(), 0.0);
  EXPECT_DOUBLE_EQ(r.imag(), 1.0);
  // A negative zero imaginary part still lands on the upper half plane.
  EXPECT_GT(asianq::principal_sqrt({-4.0, -0.0}).imag(), 0.0);
}

TEST(PrincipalSqrt, SquaresBackOnRandomSample) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> expo(-8.0, 8.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100000; ++i) {
    const cplx z = std::polar(std::pow(10.0, expo(rng)), angle(rng));
    const cplx s = asianq::principal_sqrt(z);
    ASSERT_GE(s.real(), 0.0);
    ASSERT_LE(std::abs(s * s - z), 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z))
        << z;
  }
}

TEST(MuOfZ, Examples) {
  EXPECT_NEAR(std::abs(asianq::mu_of_z(0.0, 2.0) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(asianq::mu_of_z(3.0, 0.0) - 3.0), 0.0, 1e-15);
  EXPECT_TRUE(asianq::mu_on_branch_cut(0.0, -1.0));
  EXPECT_FALSE(asianq::mu_on_branch_cut(1.0, 1.0));
}

TEST(MuOfZ, SquareRootInequality) {
  std::mt19937_64 rng(5);
  for (double eps : {0.0, 0.5, 1.0, 2.0}) {
    std::uniform_real_distribution<double> re_nu(-6.0, 6.0);
    std::uniform_real_distribution<double> im_nu(-eps, eps);
    std::uniform_real_distribution<double> frac(1e-6, 30.0);
    std::uniform_real_distribution<double> im_z(-50.0, 50.0);
    for (int i = 0; i < 20000; ++i) {
      const cplx nu(re_nu(rng), im_nu(rng));
      const cplx z(2.0 * eps * eps + frac(rng), im_z(rng));
      ASSERT_GT(asianq::mu_of_z(nu, z).real(), std::abs(nu.real())) << nu << " " << z;
    }
  }
}

TEST(LnGamma, Examples) {
  EXPECT_NEAR(std::abs(asianq::ln_gamma(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(asianq::ln_gamma(5.0).real(), std::log(24.0), 1e-14);
  EXPECT_NEAR(asianq::ln_gamma(0.5).real(), std::log(std::sqrt(kPi)), 1e-14);
  EXPECT_THROW(asianq::ln_gamma(-3.0), asianq::Error);
  try {
    asianq::ln_gamma(0.0);
  } catch (const asianq::Error& e) {
    EXPECT_EQ(e.kind(), asianq::ErrorKind::pole);
  }
}

TEST(LnGamma, MatchesOracle) {
  const std::vector<Pair> cases = {
      {{0.5, 0.0}, {0.57236494292470009, 0.0}},
      {{5.0, 0.0}, {3.1780538303479456, 0.0}},
      {{-2.5, 0.1}, {-0.1031492440428192, -9.3144442683598381}},
      {{3.0, 40.0}, {-52.689155060822637, 111.40513241545997}},
      {{-7.3, 0.0}, {-7.7791016298268517, -25.132741228718346}},
      {{0.01, -0.02}, {3.7944367207828294, 1.1183633070517473}},
      {{48.2, 0.0}, {137.57529272012998, 0.0}},
  };
  for (const auto& c : cases) {
    // Compare Gamma itself so that branches of the imaginary part do not matter.
    const cplx got = std::exp(asianq::ln_gamma(c.z) - c.want);
    EXPECT_LT(std::abs(got - 1.0), 1e-12) << c.z;
  }
}

TEST(BesselI, HalfOrderClosedForm) {
  const cplx v = asianq::bessel_i(0.5, 1.0);
  EXPECT_LT(rel_err(v, std::sqrt(2.0 / kPi) * std::sinh(1.0)), 1e-14);
  EXPECT_NEAR(asianq::bessel_i(0.0, 1e-300).real(), 1.0, 1e-15);
  EXPECT_NEAR(asianq::bessel_i(0.0, 0.0).real(), 1.0, 0.0);
}

TEST(BesselI, LargeArgumentAsymptotic) {
  const cplx v = asianq::bessel_i(2.0, 100.0);
  const double lead = std::exp(100.0) / std::sqrt(200.0 * kPi);
  // The leading term alone is 1.9% high at this order and argument; the first
  // correction (4 mu^2 - 1) / (8x) accounts for it.
  EXPECT_LT(std::abs(v.real() / lead - 1.0), 0.02);
  EXPECT_LT(std::abs(v.real() / (lead * (1.0 - 15.0 / 800.0)) - 1.0), 1e-3);
  EXPECT_THROW(asianq::bessel_i(1.0, 800.0), asianq::Error);
  EXPECT_NO_THROW(asianq::bessel_i_scaled(1.0, 800.0));
}

TEST(BesselI, MatchesOracle) {
  struct Case {
    cplx mu;
    double x;
    cplx want;
  };
  const std::vector<Case> cases = {
      {{0.5, 0.0}, 1.0, {0.34495131388824463, 0.0}},
      {{2.0, 0.0}, 100.0, {0.039149496238594078, 0.0}},
      {{1.5, 2.0}, 12.0, {0.12122986381676373, -0.032531703774804284}},
      {{3.25, 0.0}, 45.0, {0.052966081591415393, 0.0}},
      {{10.0, 5.0}, 80.0, {0.02255170537320651, -0.016363296640823439}},
      {{-0.3, 0.0}, 2.0, {0.30279932966305298, 0.0}},
      {{0.2, 0.7}, 250.0, {0.025266740895538538, -1.4177815751815601e-5}},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel_err(asianq::bessel_i_scaled(c.mu, c.x), c.want), 1e-12) << c.mu << " " << c.x;
  }
}

TEST(BesselI, SeriesAndAsymptoticOverlap) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x_dist(30.0, 60.0);
  std::uniform_real_distribution<double> re(-2.0, 3.0);
  std::uniform_real_distribution<double> im(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const cplx mu(re(rng), im(rng));
    const double x = x_dist(rng);
    const cplx a = asianq::detail::bessel_i_scaled_asymptotic(mu, x);
    ASSERT_TRUE(std::isfinite(a.real())) << mu << " " << x;
    const cplx s = asianq::detail::bessel_i_scaled_series(mu, x);
    EXPECT_LT(rel_err(a, s), 1e-8) << mu << " " << x;
  }
}

TEST(KummerPhi, Examples) {
  EXPECT_EQ(asianq::kummer_phi({2.3, 1.0}, {0.7, -0.4}, 0.0), cplx(1.0));
  EXPECT_LT(rel_err(asianq::kummer_phi({1.7, 0.2}, {1.7, 0.2}, 1.0), std::exp(1.0)), 1e-14);
  EXPECT_LT(rel_err(asianq::kummer_phi(1.0, 2.0, 1.0), std::exp(1.0) - 1.0), 1e-14);
  EXPECT_THROW(asianq::kummer_phi(1.0, -2.0, 1.0), asianq::Error);
}

TEST(KummerPhi, ScaledMatchesOracle) {
  struct Case {
    cplx a, b;
    double x;
    cplx want;
  };
  const std::vector<Case> cases = {
      {{1.0, 0.0}, {2.0, 0.0}, 1.0, {0.63212055882855768, 0.0}},
      {{3.5, 2.0}, {4.0, 4.0}, 200.0, {0.018449363118572509, -0.029292717577832812}},
      {{0.3, 0.0}, {1.7, 0.0}, -40.0, {79466073806906086.0, 0.0}},
      {{2.2, 1.0}, {0.5, -3.0}, 30.0, {7.8188966228740631, 2.8372317558739846}},
      {{4.9, 60.0}, {120.0, 120.0}, 400.0, {-3.8350812581152549e-90, -5.0519944313670031e-90}},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel_err(asianq::kummer_phi_scaled(c.a, c.b, c.x), c.want), 1e-10)
        << c.a << " " << c.b << " " << c.x;
  }
}

TEST(KummerPhi, NegativeArguments) {
  // mpmath hyp1f1(0.4+0.3i, 2.5-0.5i, x); the plain series loses digits here.
  const std::vector<std::pair<double, cplx>> cases = {
      {-1.0, {0.88282806589611873, -0.11526903784024727}},
      {-10.0, {0.43156055304433966, -0.31811312760804966}},
      {-25.0, {0.23888955210861553, -0.30476580577621328}},
      {-50.0, {0.13142553290904484, -0.26691300734549805}},
  };
  for (const auto& [x, want] : cases) {
    EXPECT_LT(rel_err(asianq::kummer_phi({0.4, 0.3}, {2.5, -0.5}, x), want), 1e-12) << x;
  }
}

TEST(KummerPhi, LargeArgumentAsymptotic) {
  // tests/oracles/complexfn_oracle.py
  const cplx a(2.5, 1.0), b(1.5, 2.0);
  EXPECT_LT(rel_err(asianq::kummer_phi_scaled(a, b, 5000.0),
                    cplx(-661.26952925843845219, -834.36931082225301111)),
            1e-12);
  EXPECT_LT(rel_err(asianq::kummer_phi_scaled(3.7, 2.1, 2e6), 3028156796.910717961), 1e-12);
}

TEST(Erfc, Examples) {
  EXPECT_EQ(asianq::erfc_c(0.0), cplx(1.0));
  EXPECT_LT(rel_err(asianq::erfc_c(1.0), 0.157299207050285130658779364917390740703933002034), 1e-14);
}

TEST(Erfc, MatchesOracle) {
  const std::vector<Pair> cases = {
      {{1.0, 0.0}, {0.15729920705028513, 0.0}},
      {{0.5, 0.5}, {0.35738708514517947, -0.45788139443519222}},
      {{2.5, -1.0}, {0.00061731486220015465, -0.00084694454339379262}},
      {{0.1, 6.5}, {-1.8632652030061015e+17, -54906374431341338.0}},
      {{3.0, 7.0}, {11930862314097288.0, 12859127259900899.0}},
      {{-1.5, 2.0}, {0.89495071022598247, -0.69951168616312446}},
      {{0.0, 9.5}, {1.0, -9.3587702885323339e+37}},
      {{0.3, 9.0}, {6.8880974396045606e+33, -5.2785067210093494e+33}},
      {{1.9, 4.0}, {-25709.328217997083, 17511.808509464373}},
      {{5.0, 0.0}, {1.5374597944280349e-12, 0.0}},
      {{-4.0, -3.0}, {1.9999106617853917, -4.9720260544966036e-5}},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel_err(asianq::erfc_c(c.z), c.want), 1e-12) << c.z;
    EXPECT_LT(rel_err(asianq::erfcx_c(c.z), std::exp(c.z * c.z) * c.want), 1e-11) << c.z;
  }
}

TEST(Erfc, ReflectionAndRealRange) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  // Below about -5.9 erfc rounds to exactly 2 in double precision.
  std::uniform_real_distribution<double> real_line(-5.5, 26.0);
  for (int i = 0; i < 5000; ++i) {
    const cplx z(u(rng), u(rng));
    const cplx sum = asianq::erfc_c(z) + asianq::erfc_c(-z);
    EXPECT_LT(std::abs(sum - 2.0), 1e-12 * std::max(1.0, std::abs(asianq::erfc_c(z)))) << z;
    const double x = real_line(rng);
    const cplx e = asianq::erfc_c(x);
    EXPECT_GT(e.real(), 0.0);
    EXPECT_LT(e.real(), 2.0);
    EXPECT_EQ(e.imag(), 0.0);
  }
}

TEST(HermiteH, Polynomials) {
  const cplx z(0.7, -1.3);
  EXPECT_EQ(asianq::hermite_h(0.0, z), cplx(1.0));
  EXPECT_LT(rel_err(asianq::hermite_h(1.0, z), 2.0 * z), 1e-15);
  EXPECT_LT(rel_err(asianq::hermite_h(2.0, z), 4.0 * z * z - 2.0), 1e-14);
  EXPECT_LT(rel_err(asianq::hermite_h(3.0, z), 8.0 * z * z * z - 12.0 * z), 1e-14);
}

TEST(HermiteH, MinusOneIsScaledErfc) {
  for (cplx z : {cplx(1.0), cplx(-2.0, 0.5), cplx(3.0, 4.0), cplx(0.0, -7.0), cplx(-0.3)}) {
    const cplx want = std::sqrt(kPi) / 2.0 * asianq::erfcx_c(z);
    EXPECT_LT(rel_err(asianq::hermite_h(-1.0, z), want), 1e-12) << z;
  }
}

TEST(HermiteH, IntegralRepresentationExample) {
  // (1/Gamma(2.5)) int_0^inf exp(-u^2 - 0.6u) u^1.5 du
  EXPECT_LT(rel_err(asianq::hermite_h(-2.5, 0.3), 0.1927128580061686348), 1e-12);
}

TEST(HermiteH, MatchesOracle) {
  const std::vector<Triple> cases = {
      {{-2.5, 0.0}, {0.3, 0.0}, {0.19271285800616863, 0.0}},
      {{-5.0, 0.0}, {-3.0, 1.0}, {18162.928177905738, -20852.703322083862}},
      {{-5.5, 0.0}, {0.0, 4.0}, {-1.6429708673695761e-5, -1.7479777031217617e-5}},
      {{-7.0, 0.0}, {-20.0, 3.0}, {6.9864645853419021e+173, -1.1022024819412562e+175}},
      {{-4.72, 0.0}, {-14.1, 2.2}, {3.7742050769398486e+87, 8.4325321815711827e+86}},
      {{-4.72, 0.0}, {0.0, -30.0}, {1.7361169349406808e-9, 3.6894362879990687e-9}},
      {{-1.3, 0.4}, {3.0, -2.0}, {0.004609179316947143, 0.092462761501134878}},
      {{0.7, 0.0}, {3.5, 0.0}, {3.9207943986850175, 0.0}},
      {{1.4, 0.3}, {-3.0, 1.0}, {41.410569291593095, 179.62789336287077}},
      {{2.6, 0.0}, {0.4, -1.2}, {-16.421326920185196, 5.9790238873365749}},
      {{-0.4, 0.0}, {-4.0, 0.0}, {3141038.2418430575, 0.0}},
      {{-3.2, 0.0}, {5.0, 1.0}, {0.00044067747509130223, -0.00029430477156385648}},
      {{-6.0, 0.0}, {0.5, 0.0}, {0.001771627546362289, 0.0}},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel_err(asianq::hermite_h(c.mu, c.z), c.want), 1e-10) << c.mu << " " << c.z;
  }
}

TEST(HermiteH, CosineIntegralRepresentation) {
  // H_mu(z) = 2^{mu+1}/sqrt(pi) e^{z^2} int_0^inf e^{-x^2} x^mu cos(2zx - mu pi/2) dx
  // for Re mu > -1. The substitution x = t^m removes the endpoint singularity.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> re_mu(-0.95, 3.0);
  std::uniform_real_distribution<double> im_mu(-0.5, 0.5);
  std::uniform_real_distribution<double> zc(-1.5, 1.5);
  for (int i = 0; i < 60; ++i) {
    const cplx mu(re_mu(rng), im_mu(rng));
    const cplx z(zc(rng), zc(rng));
    const double m = std::ceil(1.0 / (mu.real() + 1.0));
    auto f = [&](double t) -> cplx {
      if (t == 0.0) return 0.0;
      const double x = std::pow(t, m);
      const cplx xmu = std::exp(mu * std::log(x));
      return m * std::pow(t, m - 1.0) * std::exp(-x * x) * xmu *
             std::cos(2.0 * z * x - mu * kPi / 2.0);
    };
    asianq::quad::Options opts;
    opts.rel_tol = 1e-13;
    opts.abs_tol = 1e-16;
    const cplx integral = asianq::quad::integrate(f, 0.0, std::pow(9.0, 1.0 / m), opts).value;
    const cplx want = std::pow(cplx(2.0), mu + 1.0) / std::sqrt(kPi) * std::exp(z * z) * integral;
    EXPECT_LT(rel_err(asianq::hermite_h(mu, z), want), 1e-8) << mu << " " << z;
  }
}

TEST(ComplexFn, RejectsNonFiniteInput) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(asianq::erfc_c({nan, 0.0}), asianq::Error);
  EXPECT_THROW(asianq::hermite_h(1.5, {0.0, nan}), asianq::Error);
}
