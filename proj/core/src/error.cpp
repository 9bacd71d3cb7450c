#include "asianq/error.hpp"

namespace asianq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::nonconvergence: return "nonconvergence";
    case ErrorKind::practicality: return "practicality";
    case ErrorKind::overflow: return "overflow";
  }
  return "unknown";
}

}  // namespace asianq
