#include "asianq/price_result.hpp"

namespace asianq {

std::string_view to_string(PriceMethod method) noexcept {
  switch (method) {
    case PriceMethod::closed_form: return "closed_form";
    case PriceMethod::laplace_euler: return "laplace_euler";
    case PriceMethod::laplace_talbot: return "laplace_talbot";
    case PriceMethod::hermite: return "hermite";
    case PriceMethod::yor_triple: return "yor_triple";
    case PriceMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

}  // namespace asianq
