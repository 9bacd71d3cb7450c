#include "asianq/yor_triple.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "asianq/error.hpp"
#include "asianq/quadrature.hpp"

namespace asianq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn10 = 2.302585092994045684;

void check_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_input, "h must be positive");
}

// Integral over the payoff variable for fixed a = x y:
//   G(a) = int_{qa}^inf x^{nu-1} e^{-a(x + 1/x)/2} (x/a - q) dx,
// taken in s = log x where the integrand decays double exponentially.
double payoff_kernel(double nu, double q, double a) {
  const double log_a = std::log(a);
  const double s_lo = std::log(q) + log_a;
  // a cosh s > 750 is far below double resolution relative to the peak.
  const double s_cut = std::acosh(std::max(1.0, 750.0 / a)) + 1.0;
  const double hi = std::max(s_cut, s_lo + 1.0);
  const double lo = std::max(s_lo, -s_cut);
  auto g = [&](double s) {
    const double base = nu * s - a * std::cosh(s);
    return std::exp(base + s - log_a) - q * std::exp(base);
  };
  quad::Options opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-290;
  double total = 0.0;
  if (lo < 0.0 && hi > 0.0) {
    total = quad::integrate(g, lo, 0.0, opts).value + quad::integrate(g, 0.0, hi, opts).value;
  } else {
    total = quad::integrate(g, lo, hi, opts).value;
  }
  return total;
}

}  // namespace

double c_const_log10(double nu, double h) {
  check_h(h);
  return (kPi * kPi / (2.0 * h) - nu * nu * h / 2.0 - 0.5 * std::log(2.0 * kPi * kPi * kPi * h)) /
         kLn10;
}

double c_const_log10_printed(double nu, double h) {
  return c_const_log10(nu, h) - std::log10(kPi);
}

Scaled psi_scaled(double a, double h) {
  check_h(h);
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::invalid_input, "a must be positive");
  // The integrand extends to an entire function f(w) whose imaginary part on
  // the real axis is the psi integrand, and whose integral up the imaginary
  // axis is real. So psi = Im of the integral of f along any path from i*y0 to
  // +inf. The Gaussian saddle sits at w = i*pi, where -a cosh w turns large;
  // y0 balances the two.
  const double offset = kPi * kPi / (2.0 * h);
  auto f = [&](cplx w) {
    return std::exp(-w * w / (2.0 * h) + cplx(0.0, kPi / h) * w - a * std::cosh(w) + offset) *
           std::sinh(w);
  };
  // log|f| relative to the offset: -(u^2 - (y - pi)^2)/(2h) - a cosh(u) cos(y).
  auto expo = [&](double u, double y) {
    return -(u * u - (y - kPi) * (y - kPi)) / (2.0 * h) - a * std::cosh(u) * std::cos(y);
  };
  // Two path shapes. For y0 < pi/2 the integrand decays along Im w = y0, so
  // the path is the single ray i y0 -> +inf + i y0. Otherwise it is
  // i y0 -> U + i y0 -> U + i pi/2 -> +inf + i pi/2; at y0 = pi the first leg
  // is real (f is real on Im w = pi) and is skipped. Pick (y0, U) with the
  // smallest peak of |f| along the legs that contribute.
  const double u_top = std::max(4.0, std::sqrt(kPi * kPi + 2.0 * h * (a + 40.0)));
  auto peak = [&](double y0, double U, int samples) {
    double m = -INFINITY;
    if (y0 < kPi / 2.0) {
      for (int i = 0; i <= 4 * samples; ++i) m = std::max(m, expo(u_top * i / (4.0 * samples), y0));
      return m;
    }
    for (int i = 0; i <= samples; ++i) {
      const double s = static_cast<double>(i) / samples;
      if (y0 < kPi) m = std::max(m, expo(U * s, y0));
      m = std::max(m, expo(U, kPi / 2.0 + (y0 - kPi / 2.0) * s));
    }
    return m;
  };
  // Coarse grid, then a local refinement around the best point.
  double y0 = kPi / 2.0;
  double U = kPi / 2.0;
  double best = peak(y0, U, 16);
  auto consider = [&](double y, double u, int samples) {
    const double e = peak(y, u, samples);
    if (e < best) {
      best = e;
      y0 = y;
      U = u;
    }
  };
  for (int k = 0; k < 16; ++k) consider(k * kPi / 32.0, 0.0, 16);
  for (int k = 16; k <= 32; ++k) {
    for (int j = 1; j <= 20; ++j) consider(k * kPi / 32.0, 0.2 * j, 16);
  }
  best = peak(y0, U, 64);
  const double yc = y0;
  const double uc = U;
  for (int k = -2; k <= 2; ++k) {
    const double y = std::clamp(yc + k * kPi / 128.0, 0.0, kPi);
    for (int j = -4; j <= 4; ++j) {
      const double u = uc + 0.05 * j;
      if (y < kPi / 2.0 ? j == 0 : u > 0.0) consider(y, u, 64);
    }
  }
  // Whole path is below the double range relative to the scale.
  if (best < -650.0) return {0.0, -offset};
  quad::Options opts;
  opts.rel_tol = 1e-13;
  // Cancellation along the path is bounded by exp(best); nothing below that
  // scale is resolvable anyway.
  opts.abs_tol = 1e-17 * std::exp(best);
  opts.max_intervals = 20000;
  auto segment = [&](cplx p0, cplx p1) {
    const cplx d = p1 - p0;
    auto g = [&](double s) { return (f(p0 + d * s) * d).imag(); };
    return quad::integrate(g, 0.0, 1.0, opts).value;
  };
  if (y0 < kPi / 2.0) {
    // Gaussian factor alone is 40 e-folds below the peak past u_end.
    const double u_end = std::sqrt((y0 - kPi) * (y0 - kPi) + 2.0 * h * std::max(0.0, 40.0 - best));
    return {segment({0.0, y0}, {u_end, y0}), -offset};
  }
  // The tail decays like exp(-(u^2 - U^2)/(2h)) beyond U.
  const double u_max = U + std::sqrt(160.0 * h);
  double v = segment({U, y0}, {U, kPi / 2.0}) + segment({U, kPi / 2.0}, {u_max, kPi / 2.0});
  if (y0 < kPi) v += segment({0.0, y0}, {U, y0});
  return {v, -offset};
}

double psi(double a, double h) { return psi_scaled(a, h).value().real(); }

double psi_real_line(double a, double h) {
  check_h(h);
  // Gaussian factor below 1e-300 of its peak beyond this point.
  const double w_max = std::sqrt(2.0 * h * 690.8);
  auto g = [&](double w) {
    return std::exp(-w * w / (2.0 * h) - a * std::cosh(w)) * std::sinh(w) * std::sin(kPi * w / h);
  };
  quad::Options opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-300;
  opts.max_intervals = 100000;
  // One panel per half period keeps the oscillation resolved.
  const int panels = std::max(1, static_cast<int>(std::ceil(w_max / h)));
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    total += quad::integrate(g, w_max * i / panels, w_max * (i + 1) / panels, opts).value;
  }
  return total;
}

TripleIntegralReport price_yor_triple(double nu, double h, double q) {
  check_h(h);
  if (!std::isfinite(nu)) throw Error(ErrorKind::invalid_input, "nu must be finite");
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::invalid_input, "triple integral route needs q > 0");
  }
  if (h < kYorMinH * (1.0 - 1e-12)) {
    throw Error(ErrorKind::practicality,
                "triple integral needs h >= 0.02: at h = " + std::to_string(h) +
                    " the constant is 10^" + std::to_string(c_const_log10(nu, h)) +
                    " and the integral must be resolved beyond double precision");
  }
  // Reordered as c * int psi_a(h) G(a) da with a = x y.
  TripleIntegralReport rep;
  auto outer = [&](double a) {
    ++rep.inner_psi_evals;
    return psi_scaled(a, h).mantissa.real() * payoff_kernel(nu, q, a);
  };
  // psi_a(h) vanishes faster than any power of a as a -> 0 (about
  // exp(-log(2/a)^2 / (2h))) and like exp(pi^2/(2h) - a) e^{-a} jointly with G
  // for large a.
  const double a_min = 2.0 * std::exp(-std::sqrt(100.0 * h));
  const double a_max = kPi * kPi / (4.0 * h) + 60.0;
  // One globally adaptive pass in log a, so that the tolerance is relative to
  // the whole integral rather than to panels where psi is pure rounding noise.
  auto outer_log = [&](double t) {
    const double a = std::exp(t);
    return outer(a) * a;
  };
  quad::Options opts;
  opts.rel_tol = 1e-9;
  opts.abs_tol = 1e-300;
  const auto r = quad::integrate(outer_log, std::log(a_min), std::log(a_max), opts);
  const double scaled_integral = r.value;
  const double err = r.abs_error;
  const double offset = kPi * kPi / (2.0 * h);
  rep.ln_c = c_const_log10(nu, h) * kLn10;
  rep.c_log10 = c_const_log10(nu, h);
  if (scaled_integral > 0.0) {
    rep.ln_integral = std::log(scaled_integral) - offset;
    rep.integral_value = std::exp(rep.ln_integral);
    rep.price = std::exp(rep.ln_c + rep.ln_integral);
    rep.abs_error = rep.price * err / scaled_integral;
  } else {
    rep.ln_integral = -INFINITY;
    rep.integral_value = 0.0;
    rep.price = 0.0;
    rep.abs_error = std::exp(rep.ln_c - offset) * err;
  }
  return rep;
}

}  // namespace asianq
