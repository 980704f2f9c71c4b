#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tightham {

enum class ErrorKind {
  invalid_argument,
  out_of_range,
  degenerate_triple,
  parse_error,
  budget_exhausted,
  stuck,
  not_found,
  not_found_within_budget,
  infeasible,
  capacity_unreachable,
  wiring_not_found,
  no_absorber,
  hypothesis_violated,
  verification_failed,
  stage_failure,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure is reported through this type (or a subclass carrying
// extra diagnostics). Callers switch on kind() rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace tightham
