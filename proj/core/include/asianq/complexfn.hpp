#pragma once

// Complex special functions used by the transform and pricing layers.
// All multivalued functions use the principal branch: the log cut lies on the
// non-positive real axis and Im(log z) is in (-pi, pi].

#include <complex>

namespace asianq {

using cplx = std::complex<double>;

/// Throws ErrorKind::invalid_input when either component is NaN or infinite.
void require_finite(cplx z, const char* name);

cplx principal_sqrt(cplx z);

/// sqrt(2z + nu^2) on the principal branch.
cplx mu_of_z(cplx nu, cplx z);

/// True when 2z + nu^2 lies on the closed negative real axis, where mu_of_z
/// sits on the branch cut.
bool mu_on_branch_cut(cplx nu, cplx z);

cplx ln_gamma(cplx z);

/// 1/Gamma(z); zero at the non-positive integers.
cplx rgamma(cplx z);

/// Modified Bessel function of the first kind, complex order, real x > 0.
cplx bessel_i(cplx mu, double x);
/// e^{-x} I_mu(x); usable where I_mu itself overflows.
cplx bessel_i_scaled(cplx mu, double x);

namespace detail {
// Exposed for the overlap test between the two regimes.
cplx bessel_i_scaled_series(cplx mu, double x);
// Returns NaN when the asymptotic expansion does not reach full accuracy.
cplx bessel_i_scaled_asymptotic(cplx mu, double x);
}  // namespace detail

/// Kummer's confluent hypergeometric function 1F1(a; b; x).
cplx kummer_phi(cplx a, cplx b, double x);
/// e^{-x} 1F1(a; b; x).
cplx kummer_phi_scaled(cplx a, cplx b, double x);
/// Ascending series with complex argument, for moderate |x|.
cplx kummer_phi_series(cplx a, cplx b, cplx x);

cplx erfc_c(cplx z);
/// exp(z^2) erfc(z).
cplx erfcx_c(cplx z);

/// Hermite function H_mu(z) of complex degree.
cplx hermite_h(cplx mu, cplx z);

/// A complex value stored as mantissa * exp(log_scale).
struct Scaled {
  cplx mantissa;
  double log_scale = 0.0;
  cplx value() const;
};

/// H_mu(z) with the dominant exponential factored out. Valid for every
/// finite mu, z; used where H itself over- or underflows.
Scaled hermite_h_scaled(cplx mu, cplx z);

/// e^{-x} 1F1(a; b; x) as mantissa * exp(log_scale), for parameters where the
/// scaled value itself under- or overflows.
Scaled kummer_phi_log_scaled(cplx a, cplx b, double x);

}  // namespace asianq
