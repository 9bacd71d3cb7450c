#include "asianq/hermite_price.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "asianq/error.hpp"
#include "asianq/quadrature.hpp"

namespace asianq {

namespace {

constexpr double kPi = std::numbers::pi;

void check_args(double nu, double h, double q) {
  if (!std::isfinite(nu)) throw Error(ErrorKind::invalid_input, "nu must be finite");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_input, "h must be positive");
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::invalid_input, "Hermite route needs q > 0");
  }
  if (!(nu > -4.0)) {
    throw Error(ErrorKind::invalid_input, "Hermite route needs nu > -4 (Gamma(nu + 4) factor)");
  }
}

// E_xi(w) as mantissa * exp(log_scale).
Scaled weighted_erfc_scaled(double xi, double h, cplx w) {
  const double s2h = std::sqrt(2.0 * h);
  const cplx zeta = w / s2h + 0.5 * xi * s2h;
  // e^{w xi} = exp(zeta^2 - w^2/(2h) - xi^2 h / 2)
  const cplx gauss = -w * w / (2.0 * h) - 0.5 * xi * xi * h;
  if (zeta.real() >= 0.0) {
    return {erfcx_c(zeta) * std::polar(1.0, gauss.imag()), gauss.real()};
  }
  // Erfc(zeta) = 2 - Erfc(-zeta)
  const cplx lin = w * xi;
  const double scale = std::max(lin.real(), gauss.real());
  const cplx m = 2.0 * std::exp(lin - scale) - std::exp(gauss - scale) * erfcx_c(-zeta);
  return {m, scale};
}

struct Integrand {
  double nu, h, q, xi;
  cplx mu;
  double sq;

  Integrand(double nu_, double h_, double q_, double xi_)
      : nu(nu_), h(h_), q(q_), xi(xi_), mu(-(nu_ + 4.0)), sq(std::sqrt(2.0 * q_)) {}

  // H_{-(nu+4)}(-cosh(w)/sqrt(2q)) E_xi(w) exp(-extra)
  cplx product(cplx w, cplx cosh_w, double extra) const {
    const Scaled hv = hermite_h_scaled(mu, -cosh_w / sq);
    const Scaled ev = weighted_erfc_scaled(xi, h, w);
    if (hv.mantissa == cplx(0.0) || ev.mantissa == cplx(0.0)) return 0.0;
    return hv.mantissa * ev.mantissa * std::exp(hv.log_scale + ev.log_scale - extra);
  }
};

quad::Options term_options() {
  quad::Options opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-18;
  opts.max_intervals = 4000;
  return opts;
}

// Integrals along the path rho -> rho + L e^{i theta} (Im = pi/2) -> +inf + i pi/2.
// With theta = pi/2 the two legs are the trigonometric and hyperbolic terms.
// Every integrand value is multiplied by exp(-extra).
double slanted_leg(const Integrand& in, const HermitePath& path, double extra) {
  const cplx dir = std::polar(1.0, path.theta);
  const double len = (kPi / 2.0) / std::sin(path.theta);
  auto f = [&](double t) {
    const cplx w = path.rho + t * dir;
    return (in.product(w, std::cosh(w), extra) * dir).imag();
  };
  return quad::integrate(f, 0.0, len, term_options()).value;
}

double horizontal_leg(const Integrand& in, const HermitePath& path, double extra) {
  const double x0 = path.rho + (kPi / 2.0) / std::tan(path.theta);
  auto f = [&](double y) {
    const cplx w(y, kPi / 2.0);
    return in.product(w, cplx(0.0, std::sinh(y)), extra).imag();
  };
  // Beyond y_max the Gaussian factor exp(-(y^2 - pi^2/4)/(2h) + |xi| y) is
  // below e^{-80} of its peak.
  const double y_max = x0 + std::abs(in.xi) * in.h + std::sqrt(160.0 * in.h) + 2.0;
  return quad::integrate(f, x0, y_max, term_options()).value;
}

double trig_scaled(double nu, double h, double q, double xi, double rho, double extra) {
  return slanted_leg(Integrand(nu, h, q, xi), {rho, kPi / 2.0}, extra);
}

double hyp_scaled(double nu, double h, double q, double xi, double rho, double extra) {
  return horizontal_leg(Integrand(nu, h, q, xi), {rho, kPi / 2.0}, extra);
}

// Neumaier summation of a handful of terms.
double compensated_sum(std::initializer_list<double> xs) {
  double s = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = s + x;
    c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + c;
}

HermiteTerms terms_scaled(double nu, double h, double q, double xi, const HermitePath& path,
                          double extra) {
  const Integrand plus(nu, h, q, xi);
  const Integrand minus(nu, h, q, -xi);
  HermiteTerms t;
  t.rho = path.rho;
  t.trig = compensated_sum({slanted_leg(plus, path, extra), slanted_leg(minus, path, extra)});
  t.hyp_plus = horizontal_leg(plus, path, extra);
  t.hyp_minus = horizontal_leg(minus, path, extra);
  t.s_xi = compensated_sum({t.trig, t.hyp_plus, t.hyp_minus});
  return t;
}

struct Assembled {
  double value;
  HermiteTerms s_nu, s_nu2;
};

Assembled assemble(double nu, double h, double q, const HermitePath& path) {
  // Every term carries exp(-1/(2q)) so the prefactor loses its exponential.
  const double extra = 1.0 / (2.0 * q);
  Assembled a;
  a.s_nu2 = terms_scaled(nu, h, q, nu + 2.0, path, extra);
  a.s_nu = terms_scaled(nu, h, q, nu, path, extra);
  const double ln_c = ln_gamma(nu + 4.0).real() + 0.5 * (nu + 2.0) * std::log(2.0 * q) -
                      std::log(2.0 * kPi * std::abs(nu + 1.0));
  const double c = std::copysign(std::exp(ln_c), nu + 1.0);
  const double grow = std::exp(2.0 * h * (nu + 1.0));
  a.value = c * compensated_sum({grow * a.s_nu2.s_xi, -a.s_nu.s_xi});
  return a;
}

}  // namespace

cplx weighted_erfc(double xi, double h, cplx w) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_input, "h must be positive");
  require_finite(w, "weighted_erfc argument");
  return weighted_erfc_scaled(xi, h, w).value();
}

double trig_term(double nu, double h, double q, double xi, double rho) {
  check_args(nu, h, q);
  return trig_scaled(nu, h, q, xi, rho, 0.0);
}

double hyp_term(double nu, double h, double q, double xi, double rho) {
  check_args(nu, h, q);
  return hyp_scaled(nu, h, q, xi, rho, 0.0);
}

HermiteTerms s_terms(double nu, double h, double q, double xi, double rho) {
  check_args(nu, h, q);
  if (!(rho >= 0.0)) throw Error(ErrorKind::invalid_input, "rho must be non-negative");
  return terms_scaled(nu, h, q, xi, {rho, kPi / 2.0}, 0.0);
}

double path_max_exponent(double h, double q, const HermitePath& path) {
  // Re(sinh(w)^2/(2q) - w^2/(2h)): the log-size of the integrand relative to
  // exp(1/(2q)). The horizontal leg is largest at its start.
  auto expo = [&](cplx w) {
    const cplx s = std::sinh(w);
    return (s * s / (2.0 * q) - w * w / (2.0 * h)).real();
  };
  const cplx dir = std::polar(1.0, path.theta);
  const double len = (kPi / 2.0) / std::sin(path.theta);
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 128; ++i) m = std::max(m, expo(path.rho + (len * i / 128.0) * dir));
  return m;
}

namespace {

HermitePath best_path_at(double h, double q, double rho, double* value) {
  HermitePath best{rho, kPi / 2.0};
  double best_v = path_max_exponent(h, q, best);
  for (int j = 2; j < 32; ++j) {
    const HermitePath p{rho, j * (kPi / 2.0) / 32.0};
    const double v = path_max_exponent(h, q, p);
    if (v < best_v) {
      best_v = v;
      best = p;
    }
  }
  if (value) *value = best_v;
  return best;
}

}  // namespace

HermitePath auto_path(double h, double q) {
  double best_v = 0.0;
  HermitePath best = best_path_at(h, q, 0.0, &best_v);
  for (int k = 1; k <= 60; ++k) {
    double v = 0.0;
    const HermitePath p = best_path_at(h, q, 0.05 * k, &v);
    if (v < best_v) {
      best_v = v;
      best = p;
    }
  }
  return best;
}

PriceResult price_hermite(double nu, double h, double q, std::optional<double> rho) {
  check_args(nu, h, q);
  if (std::abs(nu + 1.0) < 1e-6) {
    throw Error(ErrorKind::invalid_input,
                "Hermite route is singular at nu = -1; use the Laplace route");
  }
  HermitePath path{};
  HermitePath alt_path{};
  if (rho) {
    if (!(*rho >= 0.0) || !std::isfinite(*rho)) {
      throw Error(ErrorKind::invalid_input, "rho must be non-negative");
    }
    path = {*rho, kPi / 2.0};
    alt_path = {*rho + 0.25, kPi / 2.0};
  } else {
    path = auto_path(h, q);
    // A second contour through the same point, tilted by pi/16 towards the
    // side with the smaller peak.
    const HermitePath lower{path.rho, path.theta - kPi / 16.0};
    const HermitePath upper{path.rho, std::min(path.theta + kPi / 16.0, kPi / 2.0)};
    alt_path = upper;
    if (upper.theta == path.theta ||
        (lower.theta > 0.0 && path_max_exponent(h, q, lower) < path_max_exponent(h, q, upper))) {
      alt_path = lower;
    }
  }
  const Assembled main = assemble(nu, h, q, path);
  const Assembled alt = assemble(nu, h, q, alt_path);

  PriceResult res;
  res.method = PriceMethod::hermite;
  res.value = main.value;
  res.error_estimate = std::abs(main.value - alt.value);
  res.diagnostics["rho"] = path.rho;
  res.diagnostics["path_angle"] = path.theta;
  res.diagnostics["path_max_exponent"] = path_max_exponent(h, q, path);
  res.diagnostics["rho_auto"] = !rho.has_value();
  // Scaled by exp(-1/(2q)), the units in which the terms are summed.
  res.diagnostics["s_nu"] = main.s_nu.s_xi;
  res.diagnostics["s_nu_plus_2"] = main.s_nu2.s_xi;
  res.diagnostics["max_term_magnitude"] =
      std::max({std::abs(main.s_nu.trig), std::abs(main.s_nu.hyp_plus),
                std::abs(main.s_nu.hyp_minus), std::abs(main.s_nu2.trig),
                std::abs(main.s_nu2.hyp_plus), std::abs(main.s_nu2.hyp_minus)});
  return res;
}

}  // namespace asianq
