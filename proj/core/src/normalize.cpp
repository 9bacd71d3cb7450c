#include "asianq/normalize.hpp"

#include <cmath>
#include <string>

#include "asianq/error.hpp"

namespace asianq {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::invalid_input, what);
}

}  // namespace

void validate(const MarketParams& m) {
  for (double v : {m.r, m.delta, m.sigma, m.t0, m.t, m.T, m.K, m.spot, m.accrued}) {
    require(std::isfinite(v), "market parameters must be finite");
  }
  if (m.carry) require(std::isfinite(*m.carry), "carry must be finite");
  require(m.sigma > 0.0, "sigma must be positive");
  require(m.spot > 0.0, "spot must be positive");
  require(m.t0 <= m.t, "valuation time t must not precede the averaging start t0");
  require(m.t < m.T, "valuation time t must be before maturity T");
  require(m.accrued >= 0.0, "accrued average integral must be non-negative");
  require(m.t > m.t0 || m.accrued == 0.0, "accrued must be zero when t == t0");
}

NormalizedParams normalize(const MarketParams& m) {
  validate(m);
  const double carry = m.carry.value_or(m.r - m.delta);
  const double s2 = m.sigma * m.sigma;
  NormalizedParams n;
  n.nu = 2.0 * carry / s2 - 1.0;
  n.h = s2 * (m.T - m.t) / 4.0;
  n.k = m.K / m.spot;
  n.q_star = s2 / (4.0 * m.spot) * (m.K * (m.t - m.t0) - m.accrued);
  n.q = n.k * n.h + n.q_star;
  return n;
}

double denormalize_price(const MarketParams& m, double c_norm) {
  validate(m);
  if (!(c_norm >= 0.0)) {
    throw Error(ErrorKind::invalid_input, "normalized price must be non-negative");
  }
  if (m.T == m.t0) throw Error(ErrorKind::invalid_input, "T must differ from t0");
  return std::exp(-m.r * (m.T - m.t)) / (m.T - m.t0) * (4.0 * m.spot / (m.sigma * m.sigma)) *
         c_norm;
}

double moment_A(double nu, double h) {
  if (!(h >= 0.0) || !std::isfinite(nu) || !std::isfinite(h)) {
    throw Error(ErrorKind::invalid_input, "moment_A needs finite nu and h >= 0");
  }
  const double x = 2.0 * (nu + 1.0);
  if (std::abs(x) < 1e-10) {
    // (e^{xh} - 1) / x = h + x h^2 / 2 + x^2 h^3 / 6 + ...
    return h + 0.5 * x * h * h + x * x * h * h * h / 6.0;
  }
  return std::expm1(x * h) / x;
}

double price_nonpositive_q(double nu, double h, double q) {
  if (!(q <= 0.0)) throw Error(ErrorKind::invalid_input, "closed form requires q <= 0");
  return moment_A(nu, h) - q;
}

}  // namespace asianq
