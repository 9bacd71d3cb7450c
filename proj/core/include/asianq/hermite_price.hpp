#pragma once

// Normalized Asian price as a difference of two sums S_xi of single integrals
// over products of Hermite functions H_{-(nu+4)} and weighted complementary
// error functions E_xi.

#include <optional>

#include "asianq/complexfn.hpp"
#include "asianq/price_result.hpp"

namespace asianq {

struct HermiteTerms {
  double rho = 0.0;
  /// trig_term(xi) + trig_term(-xi)
  double trig = 0.0;
  double hyp_plus = 0.0;
  double hyp_minus = 0.0;
  double s_xi = 0.0;
};

/// E_xi(h)(w) = e^{w xi} Erfc(w / sqrt(2h) + (xi/2) sqrt(2h)).
cplx weighted_erfc(double xi, double h, cplx w);

/// int_0^{pi/2} Re(H_{-(nu+4)}(-cosh(rho + i phi) / sqrt(2q)) E_xi(rho + i phi)) dphi
double trig_term(double nu, double h, double q, double xi, double rho);

/// int_rho^inf Im(H_{-(nu+4)}(-i sinh(y) / sqrt(2q)) E_xi(y + i pi/2)) dy
double hyp_term(double nu, double h, double q, double xi, double rho);

/// The three-term sum S_xi at split point rho. Values are unscaled.
HermiteTerms s_terms(double nu, double h, double q, double xi, double rho);

/// Integration path for S_xi: a straight leg from the real point rho at angle
/// theta up to Im w = pi/2, then horizontal to +inf. The integrand is real on
/// the real axis, so S_xi does not depend on the choice. theta = pi/2 gives
/// the trigonometric / hyperbolic split.
struct HermitePath {
  double rho = 0.0;
  double theta = 1.5707963267948966;
};

/// Largest Re(sinh(w)^2/(2q) - w^2/(2h)) along the path: the log of the
/// largest integrand magnitude, which sets the cancellation in S_xi.
double path_max_exponent(double h, double q, const HermitePath& path);

/// Grid search over rho in [0, 3] and theta in (0, pi/2] minimizing
/// path_max_exponent.
HermitePath auto_path(double h, double q);

/// C(h, q) = c e^{2h(nu+1)} S_{nu+2} - c S_nu. With rho given the integrals run
/// along the trigonometric / hyperbolic path through rho, otherwise along
/// auto_path. The error estimate is the difference to a second path: rho + 0.25
/// for an explicit rho, the auto path tilted by pi/16 otherwise.
PriceResult price_hermite(double nu, double h, double q, std::optional<double> rho = {});

}  // namespace asianq
