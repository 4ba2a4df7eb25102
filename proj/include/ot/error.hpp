#pragma once

#include <stdexcept>
#include <string>

namespace ot {

// Error kinds surfaced by the library. Every throwing path uses OtError so
// callers (CLI, bindings, tests) can branch on the kind without string
// matching.
enum class Errc {
  dimension_mismatch,
  negative_weight,
  mass_not_one,
  incomplete_assignment,
  index_out_of_range,
  support_mismatch,
  size_limit_exceeded,
  base_mismatch,
  source_mismatch,
  non_differentiable_cost,
  unsupported_cost_variant,
  infeasible,
  unbounded,
  numerical_failure,
  budget_exceeded,
  mode_mismatch,
  parse_error,
  invalid_argument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::negative_weight: return "NegativeWeight";
    case Errc::mass_not_one: return "MassNotOne";
    case Errc::incomplete_assignment: return "IncompleteAssignment";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::support_mismatch: return "SupportMismatch";
    case Errc::size_limit_exceeded: return "SizeLimitExceeded";
    case Errc::base_mismatch: return "BaseMismatch";
    case Errc::source_mismatch: return "SourceMismatch";
    case Errc::non_differentiable_cost: return "NonDifferentiableCost";
    case Errc::unsupported_cost_variant: return "UnsupportedCostVariant";
    case Errc::infeasible: return "Infeasible";
    case Errc::unbounded: return "Unbounded";
    case Errc::numerical_failure: return "NumericalFailure";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::mode_mismatch: return "ModeMismatch";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class OtError : public std::runtime_error {
 public:
  OtError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw OtError(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace ot
