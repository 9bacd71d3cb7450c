#pragma once

// The Laplace transform F(z) = D_nu(a, z) / (z (z - 2(nu + 1))) of the
// constant-strike value function, in normalized maturity.

#include "asianq/complexfn.hpp"

namespace asianq {

enum class TransformMethod { weber_quadrature, hypergeometric_closed_form };

struct TransformPoint {
  cplx z;
  cplx value;
  bool abscissa_ok = false;
  TransformMethod method = TransformMethod::hypergeometric_closed_form;
};

/// max{0, Im(nu)^2 / 2 + 2(Re(nu) + 1)}
double abscissa_of_convergence(cplx nu);

/// Weber integral for D_nu(a, z) by adaptive quadrature. Validation only.
cplx d_weber(double nu, double a, cplx z);

/// Confluent hypergeometric closed form of D_nu(a, z).
cplx d_closed(double nu, double a, cplx z);

cplx f_gy(double nu, double a, cplx z);

/// Evaluates F at z with either method; never throws on the abscissa check,
/// reporting it in the result instead (value is NaN when outside).
TransformPoint evaluate_transform(double nu, double a, cplx z, TransformMethod method);

}  // namespace asianq
