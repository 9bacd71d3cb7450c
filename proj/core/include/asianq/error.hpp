#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asianq {

enum class ErrorKind {
  invalid_input,
  domain,
  pole,
  nonconvergence,
  practicality,
  overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// command line can report it as a structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace asianq
