#pragma once

// Monte Carlo simulation of A_h = int_0^h exp(2(B_w + nu w)) dw, used as an
// independent check on the analytic routes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asianq {

enum class McScheme { trapezoid_log_euler };

struct McConfig {
  std::int64_t paths = 100000;
  int steps = 2048;
  std::uint64_t seed = 20240607;
  McScheme scheme = McScheme::trapezoid_log_euler;
  /// 0 uses std::thread::hardware_concurrency().
  int threads = 0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t paths = 0;
  /// Set when fewer than 1000 paths make the standard error unreliable.
  std::optional<std::string> warning;
};

/// Paths are generated in fixed blocks, each with its own seeded stream, so
/// the sample set depends only on (nu, h, cfg.paths, cfg.steps, cfg.seed).
std::vector<double> simulate_A(double nu, double h, const McConfig& cfg);

/// Sample mean and standard error of (A_h - q)^+.
McEstimate mc_price(double nu, double h, double q, const McConfig& cfg);

/// Sample mean and standard error of A_h itself.
McEstimate mc_moment(double nu, double h, const McConfig& cfg);

}  // namespace asianq
