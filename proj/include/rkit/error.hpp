#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rkit {

enum class Errc {
  division_by_zero_constant_term,
  nonzero_inner_constant_term,
  radius_exceeded,
  coefficient_overflow,
  non_finite_coefficient,
  param_out_of_range,
  not_a_schwarz_function,
  tail_tolerance_unmet,
  xi_out_of_range,
  quadrature_not_converged,
  root_not_bracketed,
  search_budget_exhausted,
  invalid_argument,
  parse_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the toolkit surfaces as an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace rkit
