#include "tightham/error.hpp"

namespace tightham {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::degenerate_triple: return "degenerate_triple";
    case ErrorKind::parse_error: return "parse_error";
    case ErrorKind::budget_exhausted: return "budget_exhausted";
    case ErrorKind::stuck: return "stuck";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::not_found_within_budget: return "not_found_within_budget";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::capacity_unreachable: return "capacity_unreachable";
    case ErrorKind::wiring_not_found: return "wiring_not_found";
    case ErrorKind::no_absorber: return "no_absorber";
    case ErrorKind::hypothesis_violated: return "hypothesis_violated";
    case ErrorKind::verification_failed: return "verification_failed";
    case ErrorKind::stage_failure: return "stage_failure";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace tightham
