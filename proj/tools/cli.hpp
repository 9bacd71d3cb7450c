#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asianq/invert_price.hpp"
#include "asianq/mc_oracle.hpp"
#include "asianq/normalize.hpp"

namespace asianq::cli {

enum class Command { price, transform, tables, mc, xcheck };
enum class Route { laplace, hermite, yor, mc, automatic };
enum class OutputFormat { json, csv };

struct RunRequest {
  Command command = Command::price;
  MarketParams market;
  Route route = Route::automatic;
  OutputFormat output_format = OutputFormat::json;
  InversionConfig inversion;
  /// Double the inversion terms on nonconvergence (up to 8x); cleared when
  /// --terms is given explicitly.
  bool escalate_terms = true;
  McConfig mc;
  /// tables: "1", "2", "3" or "all".
  std::string which = "all";
  /// transform: evaluation point; unset real part means abscissa + 1.
  std::optional<double> z_re;
  double z_im = 0.0;
};

struct RunOutput {
  int exit_status = 0;
  std::string out;
  std::string err;
};

/// Exit statuses. Table 3 drifting past its tolerance is reported separately
/// so scripts can tell a regression from a crash.
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTableRegression = 3;

struct ParseOutcome {
  std::optional<RunRequest> request;
  /// Filled when parsing ends the run (help, usage error).
  RunOutput early;
};

/// args excludes the program name. env_seed is the value of ASIANQ_SEED, if set.
ParseOutcome parse_args(const std::vector<std::string>& args, const char* env_seed);

/// Which pricing route a request ends up on, given its normalized parameters.
/// "closed" when q <= 0, whatever was requested.
std::string resolve_route(Route requested, const NormalizedParams& p);

RunOutput run(const RunRequest& req);

}  // namespace asianq::cli
