#include "asianq/gy_transform.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "asianq/error.hpp"
#include "asianq/quadrature.hpp"

namespace asianq {

namespace {

void check_inputs(double nu, double a, cplx z) {
  if (!std::isfinite(nu)) throw Error(ErrorKind::invalid_input, "nu must be finite");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::invalid_input, "a must be a positive real");
  }
  require_finite(z, "transform abscissa z");
  const double sigma = abscissa_of_convergence(nu);
  if (!(z.real() > sigma)) {
    throw Error(ErrorKind::domain, "Re(z) = " + std::to_string(z.real()) +
                                       " is not right of the abscissa " + std::to_string(sigma));
  }
}

}  // namespace

double abscissa_of_convergence(cplx nu) {
  return std::max(0.0, 0.5 * nu.imag() * nu.imag() + 2.0 * (nu.real() + 1.0));
}

cplx d_weber(double nu, double a, cplx z) {
  check_inputs(nu, a, z);
  const cplx mu = mu_of_z(nu, z);
  // e^{-1/(2a)} e^{-x^2/(2a)} I_mu(x/a) = e^{-(x-1)^2/(2a)} e^{-x/a} I_mu(x/a)
  auto integrand = [&](double x) -> cplx {
    if (x == 0.0) return 0.0;
    const double d = x - 1.0;
    return std::exp(-d * d / (2.0 * a) + (nu + 3.0) * std::log(x)) * bessel_i_scaled(mu, x / a);
  };
  const double x_max = 1.0 + a * (mu.real() + nu + 4.0) + 12.0 * std::sqrt(a) + 40.0 * a;
  quad::Options opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 0.0;
  opts.max_intervals = 5000;
  // Split at the Gaussian centre so the peak is always resolved.
  const double mid = std::min(1.0 + a * (mu.real() + nu + 4.0), 0.5 * x_max);
  const cplx left = quad::integrate(integrand, 0.0, mid, opts).value;
  const cplx right = quad::integrate(integrand, mid, x_max, opts).value;
  return (left + right) / a;
}

cplx d_closed(double nu, double a, cplx z) {
  check_inputs(nu, a, z);
  const cplx mu = mu_of_z(nu, z);
  const cplx A = 0.5 * (nu + 4.0 + mu);
  const Scaled phi = kummer_phi_log_scaled(A, mu + 1.0, 1.0 / (2.0 * a));
  if (phi.mantissa == cplx(0.0)) return 0.0;
  const cplx log_pref =
      ln_gamma(A) - ln_gamma(mu + 1.0) + 0.5 * (nu + 2.0 - mu) * std::log(2.0 * a);
  return std::exp(log_pref + phi.log_scale + std::log(phi.mantissa));
}

cplx f_gy(double nu, double a, cplx z) {
  const cplx denom = z * (z - 2.0 * (nu + 1.0));
  if (denom == cplx(0.0)) {
    throw Error(ErrorKind::pole, "f_gy: pole at z = 0 or z = 2(nu + 1)");
  }
  return d_closed(nu, a, z) / denom;
}

TransformPoint evaluate_transform(double nu, double a, cplx z, TransformMethod method) {
  TransformPoint p;
  p.z = z;
  p.method = method;
  p.abscissa_ok = z.real() > abscissa_of_convergence(nu);
  if (!p.abscissa_ok) {
    p.value = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    return p;
  }
  const cplx d = method == TransformMethod::weber_quadrature ? d_weber(nu, a, z) : d_closed(nu, a, z);
  const cplx denom = z * (z - 2.0 * (nu + 1.0));
  if (denom == cplx(0.0)) throw Error(ErrorKind::pole, "f_gy: pole at z = 0 or z = 2(nu + 1)");
  p.value = d / denom;
  return p;
}

}  // namespace asianq
