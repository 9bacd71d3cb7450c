#pragma once

#include <functional>
#include <optional>

#include "asianq/complexfn.hpp"
#include "asianq/price_result.hpp"

namespace asianq {

enum class InversionAlgorithm { euler_summation, fixed_talbot };

struct InversionConfig {
  InversionAlgorithm algorithm = InversionAlgorithm::euler_summation;
  /// Series terms for Euler summation; fixed Talbot uses min(terms, 32) nodes.
  int terms = 80;
  /// Distance of the Bromwich line right of the abscissa. Unset means
  /// kDefaultShiftFactor / t_eval.
  std::optional<double> contour_shift;
  double target_abs_tol = 1e-8;
};

/// Default shift times t_eval. With the Euler scheme the discretization error
/// is about exp(-2 * shift * t_eval) relative; 15 keeps it near 1e-13 while
/// the e^{shift * t_eval} amplification of rounding stays below 1e-9.
inline constexpr double kDefaultShiftFactor = 15.0;

struct InversionResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

using Transform = std::function<cplx(cplx)>;

/// Bromwich inverse of `transform` at t_eval. Throws nonconvergence when the
/// difference between `terms` and `terms / 2` exceeds cfg.target_abs_tol.
InversionResult invert_detailed(const Transform& transform, double t_eval, double abscissa,
                                const InversionConfig& cfg);

double invert(const Transform& transform, double t_eval, double abscissa,
              const InversionConfig& cfg);

/// Normalized Asian price C(h, q) for q > 0 by inverting F_{GY,q} at h.
PriceResult price_asian_laplace(double nu, double h, double q, const InversionConfig& cfg = {});

}  // namespace asianq
