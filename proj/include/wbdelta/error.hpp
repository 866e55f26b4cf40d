#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wbdelta {

enum class Errc {
  invalid_weights,
  chamber_violation,
  not_contractible,
  plan_mismatch,
  domain,
  out_of_range,
  degenerate_configuration,
  not_applicable,
  parse,
  invariant_failure,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_weights: return "invalid-weights";
    case Errc::chamber_violation: return "chamber-violation";
    case Errc::not_contractible: return "not-contractible";
    case Errc::plan_mismatch: return "plan-mismatch";
    case Errc::domain: return "domain-error";
    case Errc::out_of_range: return "out-of-range";
    case Errc::degenerate_configuration: return "degenerate-configuration";
    case Errc::not_applicable: return "not-applicable";
    case Errc::parse: return "parse-error";
    case Errc::invariant_failure: return "invariant-failure";
  }
  return "unknown";
}

/// Every failure in the library is reported through this one exception type;
/// `code()` carries the category so callers (and the CLI) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wbdelta
