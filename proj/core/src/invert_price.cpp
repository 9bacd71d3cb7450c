#include "asianq/invert_price.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "asianq/error.hpp"
#include "asianq/gy_transform.hpp"

namespace asianq {

namespace {

constexpr double kPi = std::numbers::pi;
// Number of binomially averaged partial sums in the Euler scheme.
constexpr int kEulerAveraging = 11;
// Fixed Talbot amplifies rounding by about e^{2M/5}; beyond 32 nodes the
// result gets worse in double precision.
constexpr int kTalbotMaxNodes = 32;

double euler_from_samples(const std::vector<double>& re_f, int n, double A, double t) {
  // partial sums s_j for j = n .. n + m
  std::vector<double> partial(kEulerAveraging + 1);
  double s = 0.5 * re_f[0];
  for (int k = 1; k <= n; ++k) s += ((k % 2) ? -1.0 : 1.0) * re_f[k];
  partial[0] = s;
  for (int j = 1; j <= kEulerAveraging; ++j) {
    const int k = n + j;
    s += ((k % 2) ? -1.0 : 1.0) * re_f[k];
    partial[j] = s;
  }
  double avg = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= kEulerAveraging; ++j) {
    avg += binom * partial[j];
    binom = binom * (kEulerAveraging - j) / (j + 1.0);
  }
  avg /= std::ldexp(1.0, kEulerAveraging);
  return std::exp(A / 2.0) / t * avg;
}

double talbot(const Transform& F, double t, double sigma0, int M, int& evals) {
  const double r = 2.0 * M / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * F(cplx(sigma0 + r, 0.0)).real();
  ++evals;
  for (int k = 1; k < M; ++k) {
    const double theta = k * kPi / M;
    const double cot = std::cos(theta) / std::sin(theta);
    const cplx S(r * theta * cot, r * theta);
    const double sig = theta + (theta * cot - 1.0) * cot;
    sum += (std::exp(t * S) * F(S + sigma0) * cplx(1.0, sig)).real();
    ++evals;
  }
  return std::exp(sigma0 * t) * r / M * sum;
}

}  // namespace

InversionResult invert_detailed(const Transform& transform, double t_eval, double abscissa,
                                const InversionConfig& cfg) {
  if (!(t_eval > 0.0) || !std::isfinite(t_eval)) {
    throw Error(ErrorKind::invalid_input, "inversion time must be positive");
  }
  if (!std::isfinite(abscissa)) throw Error(ErrorKind::invalid_input, "abscissa must be finite");
  if (cfg.terms < 10) throw Error(ErrorKind::invalid_input, "inversion needs terms >= 10");
  const double shift = cfg.contour_shift.value_or(kDefaultShiftFactor / t_eval);
  if (!(shift > 0.0) || !std::isfinite(shift)) {
    throw Error(ErrorKind::invalid_input, "contour shift must be positive");
  }

  InversionResult out;
  double coarse = 0.0;
  if (cfg.algorithm == InversionAlgorithm::fixed_talbot) {
    if (abscissa > 0.0) {
      throw Error(ErrorKind::invalid_input,
                  "fixed Talbot contour leaves the half plane of convergence when the "
                  "abscissa is positive; use Euler summation");
    }
    const int nodes = std::min(cfg.terms, kTalbotMaxNodes);
    out.value = talbot(transform, t_eval, abscissa, nodes, out.evaluations);
    coarse = talbot(transform, t_eval, abscissa, nodes / 2, out.evaluations);
  } else {
    // Bromwich line at Re z = abscissa + shift, trapezoid nodes spaced pi / t.
    const double A = 2.0 * shift * t_eval;
    const int n = cfg.terms;
    std::vector<double> re_f(n + kEulerAveraging + 1);
    for (int k = 0; k <= n + kEulerAveraging; ++k) {
      const cplx z(abscissa + shift, k * kPi / t_eval);
      re_f[k] = transform(z).real();
      if (!std::isfinite(re_f[k])) {
        throw Error(ErrorKind::nonconvergence, "transform is not finite on the Bromwich line");
      }
    }
    out.evaluations = n + kEulerAveraging + 1;
    const double growth = std::exp(abscissa * t_eval);
    out.value = growth * euler_from_samples(re_f, n, A, t_eval);
    coarse = growth * euler_from_samples(re_f, n / 2, A, t_eval);
  }
  out.error_estimate = std::abs(out.value - coarse);
  if (!std::isfinite(out.value) || out.error_estimate > cfg.target_abs_tol) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "Laplace inversion error estimate %.3e exceeds tolerance %.3e",
                  out.error_estimate, cfg.target_abs_tol);
    throw Error(ErrorKind::nonconvergence, msg);
  }
  return out;
}

double invert(const Transform& transform, double t_eval, double abscissa,
              const InversionConfig& cfg) {
  return invert_detailed(transform, t_eval, abscissa, cfg).value;
}

PriceResult price_asian_laplace(double nu, double h, double q, const InversionConfig& cfg) {
  if (!std::isfinite(nu)) throw Error(ErrorKind::invalid_input, "nu must be finite");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_input, "h must be positive");
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::invalid_input, "Laplace route needs q > 0; use the closed form");
  }
  const double abscissa = abscissa_of_convergence(nu);
  auto F = [nu, q](cplx z) { return f_gy(nu, q, z); };
  const InversionResult inv = invert_detailed(F, h, abscissa, cfg);

  PriceResult res;
  res.method = cfg.algorithm == InversionAlgorithm::fixed_talbot ? PriceMethod::laplace_talbot
                                                                 : PriceMethod::laplace_euler;
  res.value = inv.value;
  res.error_estimate = inv.error_estimate;
  res.diagnostics["abscissa"] = abscissa;
  res.diagnostics["contour_shift"] = cfg.contour_shift.value_or(kDefaultShiftFactor / h);
  res.diagnostics["terms"] = static_cast<std::int64_t>(cfg.terms);
  res.diagnostics["transform_evaluations"] = static_cast<std::int64_t>(inv.evaluations);
  res.diagnostics["clipped"] = false;
  if (res.value < 0.0) {
    if (res.value < -1e-9) {
      char msg[120];
      std::snprintf(msg, sizeof msg, "Laplace inversion produced a negative price %.3e", res.value);
      throw Error(ErrorKind::nonconvergence, msg);
    }
    res.diagnostics["clipped"] = true;
    res.diagnostics["unclipped_value"] = res.value;
    res.value = 0.0;
  }
  return res;
}

}  // namespace asianq
