#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace asianq {

enum class PriceMethod {
  closed_form,
  laplace_euler,
  laplace_talbot,
  hermite,
  yor_triple,
  monte_carlo,
};

std::string_view to_string(PriceMethod method) noexcept;

using DiagnosticValue = std::variant<bool, std::int64_t, double, std::string>;

struct PriceResult {
  double value = 0.0;
  PriceMethod method = PriceMethod::closed_form;
  double error_estimate = 0.0;
  /// Ordered so that serialized reports are deterministic.
  std::map<std::string, DiagnosticValue> diagnostics;
};

}  // namespace asianq
