#pragma once

#include <optional>

namespace asianq {

/// Raw contract and market inputs. Times are in years, rates per year.
struct MarketParams {
  double r = 0.0;
  double delta = 0.0;
  double sigma = 0.0;
  double t0 = 0.0;
  double t = 0.0;
  double T = 1.0;
  double K = 0.0;
  double spot = 0.0;
  /// Integral of the spot over [t0, t]; zero when t == t0.
  double accrued = 0.0;
  /// Cost of carry; r - delta when unset.
  std::optional<double> carry;
};

struct NormalizedParams {
  double nu = 0.0;
  double h = 0.0;
  double q = 0.0;
  double k = 0.0;
  double q_star = 0.0;
};

/// Throws ErrorKind::invalid_input when the inputs are inconsistent.
void validate(const MarketParams& m);

NormalizedParams normalize(const MarketParams& m);

/// e^{-r(T-t)} / (T - t0) * 4 spot / sigma^2 * c_norm
double denormalize_price(const MarketParams& m, double c_norm);

/// E[A_h] = (e^{2h(nu+1)} - 1) / (2(nu+1)), with the limit h at nu = -1.
double moment_A(double nu, double h);

/// The normalized price when q <= 0, where the payoff is linear.
double price_nonpositive_q(double nu, double h, double q);

}  // namespace asianq
