#include "rkit/error.hpp"

namespace rkit {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::division_by_zero_constant_term: return "DivisionByZeroConstantTerm";
    case Errc::nonzero_inner_constant_term: return "NonzeroInnerConstantTerm";
    case Errc::radius_exceeded: return "RadiusExceeded";
    case Errc::coefficient_overflow: return "CoefficientOverflow";
    case Errc::non_finite_coefficient: return "NonFiniteCoefficient";
    case Errc::param_out_of_range: return "ParamOutOfRange";
    case Errc::not_a_schwarz_function: return "NotASchwarzFunction";
    case Errc::tail_tolerance_unmet: return "TailToleranceUnmet";
    case Errc::xi_out_of_range: return "XiOutOfRange";
    case Errc::quadrature_not_converged: return "QuadratureNotConverged";
    case Errc::root_not_bracketed: return "RootNotBracketed";
    case Errc::search_budget_exhausted: return "SearchBudgetExhausted";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rkit
