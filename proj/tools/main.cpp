#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto parsed = asianq::cli::parse_args(args, std::getenv("ASIANQ_SEED"));
  const asianq::cli::RunOutput out =
      parsed.request ? asianq::cli::run(*parsed.request) : parsed.early;
  std::fputs(out.out.c_str(), stdout);
  std::fputs(out.err.c_str(), stderr);
  return out.exit_status;
}
