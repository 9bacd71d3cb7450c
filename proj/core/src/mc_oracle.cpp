#include "asianq/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "asianq/error.hpp"

namespace asianq {

namespace {

constexpr std::int64_t kBlockPaths = 1024;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check(double h, const McConfig& cfg) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_input, "h must be positive");
  if (cfg.paths < 1) throw Error(ErrorKind::invalid_input, "paths must be positive");
  if (cfg.steps < 1) throw Error(ErrorKind::invalid_input, "steps must be positive");
}

void simulate_block(double nu, double h, const McConfig& cfg, std::int64_t block,
                    double* out, std::int64_t count) {
  std::mt19937_64 gen(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(block))));
  std::normal_distribution<double> normal;
  const double dt = h / cfg.steps;
  const double sd = 2.0 * std::sqrt(dt);
  const double drift = 2.0 * nu * dt;
  for (std::int64_t p = 0; p < count; ++p) {
    // x is the exponent 2(B_w + nu w) at the grid nodes, exact in distribution.
    double x = 0.0;
    double prev = 1.0;
    double sum = 0.0;
    for (int s = 0; s < cfg.steps; ++s) {
      x += drift + sd * normal(gen);
      const double cur = std::exp(x);
      sum += prev + cur;
      prev = cur;
    }
    out[p] = 0.5 * dt * sum;
  }
}

McEstimate summarize(const std::vector<double>& values) {
  // Welford's update keeps the variance accurate for large samples.
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t n = 0;
  for (double v : values) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  McEstimate est;
  est.mean = mean;
  est.paths = n;
  est.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  if (n < 1000) est.warning = "fewer than 1000 paths; standard error is unreliable";
  return est;
}

}  // namespace

std::vector<double> simulate_A(double nu, double h, const McConfig& cfg) {
  if (!std::isfinite(nu)) throw Error(ErrorKind::invalid_input, "nu must be finite");
  check(h, cfg);
  std::vector<double> samples(static_cast<std::size_t>(cfg.paths));
  const std::int64_t blocks = (cfg.paths + kBlockPaths - 1) / kBlockPaths;
  std::int64_t threads = cfg.threads > 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::int64_t>(threads, 1, blocks);

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t b = next++; b < blocks; b = next++) {
      const std::int64_t first = b * kBlockPaths;
      const std::int64_t count = std::min(kBlockPaths, cfg.paths - first);
      simulate_block(nu, h, cfg, b, samples.data() + first, count);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::int64_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return samples;
}

McEstimate mc_price(double nu, double h, double q, const McConfig& cfg) {
  if (!std::isfinite(q)) throw Error(ErrorKind::invalid_input, "q must be finite");
  std::vector<double> a = simulate_A(nu, h, cfg);
  for (double& v : a) v = std::max(v - q, 0.0);
  return summarize(a);
}

McEstimate mc_moment(double nu, double h, const McConfig& cfg) {
  return summarize(simulate_A(nu, h, cfg));
}

}  // namespace asianq
