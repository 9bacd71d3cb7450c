#include "asianq/complexfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "asianq/error.hpp"
#include "asianq/quadrature.hpp"

namespace asianq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeriesTerms = 200000;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

bool is_nonnegative_integer(cplx z) {
  return z.imag() == 0.0 && z.real() >= 0.0 && z.real() == std::floor(z.real());
}

// Neumaier compensated summation, applied per component.
class CompensatedSum {
 public:
  void add(cplx v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

// Sums t_0 + t_1 + ... times exp(-offset), with t_0 = exp(log_t0) and
// t_{n+1} = t_n * ratio(n). Terms are carried as mantissa and log scale so
// that neither the terms nor the unscaled sum need to be representable.
template <class Ratio>
cplx scaled_series(cplx log_t0, double offset, Ratio&& ratio, double min_terms,
                   const char* what) {
  double s = log_t0.real();
  cplx m = std::polar(1.0, log_t0.imag());
  double factor = std::exp(s - offset);
  CompensatedSum sum;
  int quiet = 0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    sum.add(m * factor);
    const cplx r = ratio(n);
    m *= r;
    if (m == cplx(0.0)) return sum.value();
    const double am = std::abs(m);
    if (am > 1e150 || am < 1e-150) {
      s += std::log(am);
      m /= am;
      factor = std::exp(s - offset);
    }
    if (n >= min_terms && std::abs(r) < 1.0 &&
        std::abs(m) * factor <= 1e-17 * std::abs(sum.value())) {
      if (++quiet >= 2) return sum.value();
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorKind::nonconvergence, std::string(what) + ": series did not converge");
}

// log(sin(pi z)) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx w = kPi * z;
  const cplx i(0.0, 1.0);
  if (w.imag() > 20.0) {
    return -i * w + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * w));
  }
  if (w.imag() < -20.0) {
    return i * w + std::log(cplx(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * w));
  }
  return std::log(std::sin(w));
}

cplx erf_maclaurin(cplx z) {
  const cplx z2 = z * z;
  cplx term = z;
  CompensatedSum sum;
  sum.add(z);
  for (int n = 1; n < 2000; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / static_cast<double>(2 * n + 1);
    sum.add(add);
    if (n > std::abs(z2) && std::abs(add) <= 1e-17 * std::abs(sum.value())) break;
  }
  return sum.value() * (2.0 / std::sqrt(kPi));
}

// Laplace continued fraction for exp(z^2) erfc(z), Re z >= 0, evaluated with
// the modified Lentz algorithm.
cplx erfcx_continued_fraction(cplx z) {
  constexpr double tiny = 1e-300;
  cplx f = z;
  cplx c = f;
  cplx d = 0.0;
  for (int n = 1; n < 100000; ++n) {
    const double an = 0.5 * n;
    d = z + an * d;
    if (d == cplx(0.0)) d = tiny;
    c = z + an / c;
    if (c == cplx(0.0)) c = tiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return 1.0 / (std::sqrt(kPi) * f);
  }
  throw Error(ErrorKind::nonconvergence, "erfcx: continued fraction did not converge");
}

bool erf_series_region(cplx z) { return z.real() < 2.0 && std::abs(z) < 8.0; }

}  // namespace

void require_finite(cplx z, const char* name) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::invalid_input, std::string(name) + " must be finite");
  }
}

cplx Scaled::value() const {
  if (mantissa == cplx(0.0)) return 0.0;
  return mantissa * std::exp(log_scale);
}

cplx principal_sqrt(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  if (x == 0.0 && y == 0.0) return 0.0;
  const double r = std::abs(z);
  if (x >= 0.0) {
    const double t = std::sqrt(0.5 * (r + x));
    return {t, y / (2.0 * t)};
  }
  // Negative real axis maps to the positive imaginary axis, including -0.
  const double t = std::sqrt(0.5 * (r - x));
  const double im = (y < 0.0) ? -t : t;
  return {std::abs(y) / (2.0 * t), im};
}

cplx mu_of_z(cplx nu, cplx z) { return principal_sqrt(2.0 * z + nu * nu); }

bool mu_on_branch_cut(cplx nu, cplx z) {
  const cplx w = 2.0 * z + nu * nu;
  return w.imag() == 0.0 && w.real() <= 0.0;
}

cplx ln_gamma(cplx z) {
  require_finite(z, "ln_gamma argument");
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::pole, "ln_gamma: pole at non-positive integer " +
                                     std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - ln_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Stirling series; coefficients B_{2k} / (2k (2k-1)).
  static constexpr std::array<double, 10> c = {
      1.0 / 12.0,         -1.0 / 360.0,       1.0 / 1260.0,      -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0,  1.0 / 156.0,       -3617.0 / 122400.0,
      43867.0 / 244188.0, -174611.0 / 125400.0};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (double ck : c) {
    series += ck * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-ln_gamma(z));
}

namespace detail {

cplx bessel_i_scaled_series(cplx mu, double x) {
  const double half = 0.5 * x;
  const double h2 = half * half;
  const cplx log_t0 = mu * std::log(half) - ln_gamma(mu + 1.0);
  auto ratio = [&](int n) { return h2 / ((n + 1.0) * (mu + 1.0 + static_cast<double>(n))); };
  return scaled_series(log_t0, x, ratio, half + std::abs(mu), "bessel_i");
}

cplx bessel_i_scaled_asymptotic(cplx mu, double x) {
  const cplx four_mu2 = 4.0 * mu * mu;
  cplx term = 1.0;
  CompensatedSum sum;
  sum.add(term);
  double previous = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(four_mu2 - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag == 0.0) return sum.value() / std::sqrt(2.0 * kPi * x);
    if (mag > previous) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    sum.add(term);
    if (mag <= 1e-17 * std::abs(sum.value())) {
      return sum.value() / std::sqrt(2.0 * kPi * x);
    }
    previous = mag;
  }
  return {std::numeric_limits<double>::quiet_NaN(), 0.0};
}

}  // namespace detail

cplx bessel_i_scaled(cplx mu, double x) {
  require_finite(mu, "bessel_i order");
  if (!std::isfinite(x) || x < 0.0) {
    throw Error(ErrorKind::invalid_input, "bessel_i: argument must be positive");
  }
  // I_{-n} = I_n for integer n.
  if (is_nonpositive_integer(mu)) mu = -mu;
  if (x == 0.0) {
    if (mu == cplx(0.0)) return 1.0;
    if (mu.real() > 0.0) return 0.0;
    throw Error(ErrorKind::domain, "bessel_i: singular at x = 0 for Re(mu) <= 0");
  }
  if (x >= 30.0 && kPi * std::abs(mu.imag()) < 2.0 * x - 40.0) {
    const cplx v = detail::bessel_i_scaled_asymptotic(mu, x);
    if (std::isfinite(v.real())) return v;
  }
  return detail::bessel_i_scaled_series(mu, x);
}

cplx bessel_i(cplx mu, double x) {
  const cplx v = bessel_i_scaled(mu, x);
  if (x > 700.0) {
    const double lg = std::log(std::abs(v)) + x;
    if (lg > 709.0) {
      throw Error(ErrorKind::overflow,
                  "bessel_i: result overflows at x = " + std::to_string(x) +
                      "; use bessel_i_scaled");
    }
  }
  return v * std::exp(x);
}

cplx kummer_phi_series(cplx a, cplx b, cplx x) {
  if (is_nonpositive_integer(b)) {
    throw Error(ErrorKind::pole, "kummer_phi: b is a non-positive integer");
  }
  CompensatedSum sum;
  cplx term = 1.0;
  sum.add(term);
  const double floor_n = std::abs(x) + std::abs(a) + std::abs(b);
  int quiet = 0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    term *= (a + static_cast<double>(n)) * x / ((b + static_cast<double>(n)) * (n + 1.0));
    if (term == cplx(0.0)) return sum.value();
    sum.add(term);
    if (n >= floor_n && std::abs(term) <= 1e-17 * std::abs(sum.value())) {
      if (++quiet >= 2) return sum.value();
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorKind::nonconvergence, "kummer_phi: series did not converge");
}

Scaled kummer_phi_log_scaled(cplx a, cplx b, double x) {
  require_finite(a, "kummer_phi a");
  require_finite(b, "kummer_phi b");
  if (!std::isfinite(x)) throw Error(ErrorKind::invalid_input, "kummer_phi: x must be finite");
  if (is_nonpositive_integer(b)) {
    throw Error(ErrorKind::pole, "kummer_phi: b is a non-positive integer");
  }
  if (x < 0.0) {
    // Kummer's transformation turns this into a positive-argument series.
    Scaled t = kummer_phi_log_scaled(b - a, b, -x);
    t.log_scale -= x;
    return t;
  }
  if (x > 1000.0 && x > 20.0 * (std::abs(a) + 1.0) * (std::abs(b - a) + 1.0) &&
      !is_nonpositive_integer(a)) {
    // e^{-x} Phi ~ Gamma(b)/Gamma(a) x^{a-b} sum (b-a)_n (1-a)_n / (n! x^n); the
    // companion term carries e^{-x} and is negligible here.
    CompensatedSum sum;
    cplx term = 1.0;
    for (int n = 0; n < 200; ++n) {
      sum.add(term);
      const cplx next = term * (b - a + static_cast<double>(n)) * (1.0 - a + static_cast<double>(n)) /
                        ((n + 1.0) * x);
      if (std::abs(next) <= 1e-17 * std::abs(sum.value())) {
        const cplx lead = ln_gamma(b) - ln_gamma(a) + (a - b) * std::log(x);
        return {std::polar(1.0, lead.imag()) * sum.value(), lead.real()};
      }
      term = next;
    }
  }
  auto ratio = [&](int n) {
    return (a + static_cast<double>(n)) * x / ((b + static_cast<double>(n)) * (n + 1.0));
  };
  return {scaled_series(0.0, x, ratio, x + std::abs(a) + std::abs(b), "kummer_phi"), 0.0};
}

cplx kummer_phi_scaled(cplx a, cplx b, double x) {
  return kummer_phi_log_scaled(a, b, x).value();
}

cplx kummer_phi(cplx a, cplx b, double x) {
  if (x < 0.0) {
    // Phi(a, b; x) = e^x Phi(b - a, b; -x)
    return kummer_phi_scaled(b - a, b, -x);
  }
  const cplx v = kummer_phi_scaled(a, b, x);
  if (x > 700.0 && std::log(std::abs(v)) + x > 709.0) {
    throw Error(ErrorKind::overflow, "kummer_phi: result overflows; use kummer_phi_scaled");
  }
  return v * std::exp(x);
}

cplx erfc_c(cplx z) {
  require_finite(z, "erfc argument");
  if (z.real() < 0.0) return 2.0 - erfc_c(-z);
  if (erf_series_region(z)) return 1.0 - erf_maclaurin(z);
  return erfcx_continued_fraction(z) * std::exp(-z * z);
}

cplx erfcx_c(cplx z) {
  require_finite(z, "erfcx argument");
  if (z.real() < 0.0) return 2.0 * std::exp(z * z) - erfcx_c(-z);
  if (erf_series_region(z)) return std::exp(z * z) * (1.0 - erf_maclaurin(z));
  return erfcx_continued_fraction(z);
}

namespace {

cplx hermite_polynomial(int n, cplx z) {
  cplx prev = 1.0;
  if (n == 0) return prev;
  cplx cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const cplx next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx hermite_kummer(cplx mu, cplx z) {
  const cplx z2 = z * z;
  const cplx first = rgamma((1.0 - mu) / 2.0) * kummer_phi_series(-mu / 2.0, 0.5, z2);
  const cplx second = rgamma(-mu / 2.0) * kummer_phi_series((1.0 - mu) / 2.0, 1.5, z2);
  return std::pow(cplx(2.0), mu) * std::sqrt(kPi) * (first - 2.0 * z * second);
}

// t^{p} with the convention 0^0 = 1, for Re p >= 0.
cplx power(cplx base, cplx p) {
  if (base == cplx(0.0)) return p == cplx(0.0) ? cplx(1.0) : cplx(0.0);
  return std::exp(p * std::log(base));
}

// H_{-s}(z) = (1/Gamma(s)) int_0^inf exp(-u^2 - 2zu) u^{s-1} du for Re s >= 1,
// with the path deformed through the saddle of the Gaussian.
Scaled hermite_negative_degree(cplx s, cplx z) {
  const bool flip = z.imag() < 0.0;
  if (flip) {
    z = std::conj(z);
    s = std::conj(s);
  }
  quad::Options opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-14;
  opts.max_intervals = 2000;
  opts.throw_on_failure = false;

  const cplx sm1 = s - 1.0;
  cplx integral = 0.0;
  double shift = 0.0;
  if (z.real() <= 0.0) {
    const double a = -z.real();
    const double b = z.imag();
    const cplx p = -z;
    const cplx z2 = z * z;
    shift = (a >= b) ? a * a - b * b : 0.0;
    if (p != cplx(0.0)) {
      const cplx log_p = std::log(p);
      auto seg1 = [&](double t) -> cplx {
        if (t == 0.0) return sm1 == cplx(0.0) ? std::exp(s * log_p - shift) : cplx(0.0);
        return std::exp(s * log_p + sm1 * std::log(t) + z2 * (2.0 * t - t * t) - shift);
      };
      auto r1 = quad::integrate(seg1, 0.0, 1.0, opts);
      integral += r1.value;
    }
    const double tau_max = std::sqrt(std::max(0.0, sm1.real()) / 2.0) + 9.0;
    auto seg2 = [&](double tau) -> cplx {
      return power(p + tau, sm1) * std::exp(z2 - tau * tau - shift);
    };
    integral += quad::integrate(seg2, 0.0, tau_max, opts).value;
  } else {
    const double theta = -std::min(std::arg(z), kPi / 4.0);
    const cplx dir = std::polar(1.0, theta);
    auto ray = [&](double r) -> cplx {
      const cplx u = r * dir;
      return power(u, sm1) * std::exp(-u * u - 2.0 * z * u) * dir;
    };
    integral = quad::integrate_to_infinity(ray, 0.0, opts).value;
  }
  const cplx lg = ln_gamma(s);
  Scaled out;
  out.mantissa = integral * std::polar(1.0, -lg.imag());
  out.log_scale = shift - lg.real();
  if (flip) out.mantissa = std::conj(out.mantissa);
  return out;
}

}  // namespace

Scaled hermite_h_scaled(cplx mu, cplx z) {
  require_finite(mu, "hermite_h degree");
  require_finite(z, "hermite_h argument");
  if (is_nonnegative_integer(mu) && mu.real() <= 400.0) {
    return {hermite_polynomial(static_cast<int>(mu.real()), z), 0.0};
  }
  if (mu.real() <= -1.0) return hermite_negative_degree(-mu, z);
  if (std::abs(z) <= 2.5) return {hermite_kummer(mu, z), 0.0};

  // Upward recurrence H_{m+1} = 2z H_m - 2m H_{m-1} from two negative degrees.
  const int steps = static_cast<int>(std::floor(mu.real())) + 2;
  const cplx m0 = mu - static_cast<double>(steps);
  Scaled lo = hermite_negative_degree(-(m0 - 1.0), z);
  Scaled hi = hermite_negative_degree(-m0, z);
  const double scale = std::max(lo.log_scale, hi.log_scale);
  cplx prev = lo.mantissa * std::exp(lo.log_scale - scale);
  cplx cur = hi.mantissa * std::exp(hi.log_scale - scale);
  cplx m = m0;
  for (int k = 0; k < steps; ++k) {
    const cplx next = 2.0 * z * cur - 2.0 * m * prev;
    prev = cur;
    cur = next;
    m += 1.0;
  }
  return {cur, scale};
}

cplx hermite_h(cplx mu, cplx z) { return hermite_h_scaled(mu, z).value(); }

}  // namespace asianq
