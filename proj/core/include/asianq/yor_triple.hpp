#pragma once

// Yor's triple-integral representation of the normalized price,
//   C(h, q) = c_{nu,h} int_0^inf x^nu int_0^inf e^{-(1+x^2)y/2} (1/y - q)^+ psi_{xy}(h) dy dx.
// The constant is astronomically large for small h; everything is composed
// in log space.

#include <cstdint>

#include "asianq/complexfn.hpp"

namespace asianq {

/// Smallest normalized maturity accepted by price_yor_triple.
inline constexpr double kYorMinH = 0.02;

struct TripleIntegralReport {
  double c_log10 = 0.0;
  /// The triple integral itself (without c); may be tiny but stays normal for
  /// h >= kYorMinH.
  double integral_value = 0.0;
  double price = 0.0;
  std::int64_t inner_psi_evals = 0;
  double ln_c = 0.0;
  double ln_integral = 0.0;
  double abs_error = 0.0;
};

/// log10 of exp(pi^2/(2h) - nu^2 h/2) / sqrt(2 pi^3 h), the constant that makes
/// the triple integral equal the price.
double c_const_log10(double nu, double h);

/// log10 of the same constant with the additional 1/pi factor as it is
/// commonly printed; kept for comparison with published tables.
double c_const_log10_printed(double nu, double h);

/// psi_a(h) = int_0^inf e^{-w^2/(2h)} e^{-a cosh w} sinh w sin(pi w / h) dw,
/// returned as mantissa * exp(-pi^2/(2h)).
Scaled psi_scaled(double a, double h);

/// psi_a(h); underflows to zero for small h, use psi_scaled there.
double psi(double a, double h);

/// psi by direct adaptive quadrature along the real line. Suffers from
/// cancellation of order exp(pi^2/(2h)); reference use for moderate h only.
double psi_real_line(double a, double h);

TripleIntegralReport price_yor_triple(double nu, double h, double q);

}  // namespace asianq
