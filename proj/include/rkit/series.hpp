#pragma once

// Truncated complex power series about the origin.
//
// A TruncatedSeries of order N holds c_0..c_N. Binary operations truncate to
// the smaller of the two orders. All values are immutable once built.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rkit {

using cplx = std::complex<double>;

namespace series_limits {
inline constexpr double tol_div = 1e-14;
inline constexpr double overflow_guard = 1e100;
inline constexpr std::size_t max_order = std::size_t{1} << 16;
}  // namespace series_limits

class TruncatedSeries {
 public:
  /// The zero series of order 0.
  TruncatedSeries();
  /// Throws non_finite_coefficient / coefficient_overflow on bad input.
  explicit TruncatedSeries(std::vector<cplx> coeffs);
  TruncatedSeries(std::initializer_list<cplx> coeffs);

  static TruncatedSeries zero(std::size_t order);
  static TruncatedSeries constant(cplx c, std::size_t order);
  /// The series of z.
  static TruncatedSeries identity(std::size_t order);
  /// 1/(1-z) = sum z^n.
  static TruncatedSeries geometric(std::size_t order, cplx ratio = 1.0);

  [[nodiscard]] std::size_t order() const noexcept { return coeffs_.size() - 1; }
  [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] cplx operator[](std::size_t n) const noexcept {
    return n < coeffs_.size() ? coeffs_[n] : cplx{};
  }

  [[nodiscard]] TruncatedSeries truncated(std::size_t order) const;
  /// Pads with zeros or truncates to exactly `order`.
  [[nodiscard]] TruncatedSeries resized(std::size_t order) const;
  /// Returns a copy with c_n replaced.
  [[nodiscard]] TruncatedSeries with_coeff(std::size_t n, cplx value) const;

  /// Largest |c_n|.
  [[nodiscard]] double max_abs() const noexcept;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<cplx> coeffs_;
};

enum class ArithKind { add, sub, mul, div };

TruncatedSeries s_arith(const TruncatedSeries& a, const TruncatedSeries& b, ArithKind kind);

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(cplx s, const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, cplx s);
TruncatedSeries operator+(const TruncatedSeries& a, cplx s);
TruncatedSeries operator+(cplx s, const TruncatedSeries& a);
TruncatedSeries operator-(cplx s, const TruncatedSeries& a);

/// Multiplication by z^shift, keeping the order (high terms drop off).
TruncatedSeries s_shift_up(const TruncatedSeries& a, std::size_t shift);
/// Division by z^shift; requires c_0..c_{shift-1} to vanish (|c| <= tol_div).
TruncatedSeries s_shift_down(const TruncatedSeries& a, std::size_t shift);

/// Term-by-term derivative; order drops by one (order 0 stays 0).
TruncatedSeries s_deriv(const TruncatedSeries& a);
/// Antiderivative with zero constant term; order rises by one up to `cap`.
TruncatedSeries s_integ(const TruncatedSeries& a, std::size_t cap = series_limits::max_order);

TruncatedSeries s_exp(const TruncatedSeries& a);
/// Principal branch at c_0.
TruncatedSeries s_log(const TruncatedSeries& a);
TruncatedSeries s_pow(const TruncatedSeries& a, cplx exponent);
/// a'/a.
TruncatedSeries s_log_derivative(const TruncatedSeries& a);

/// a(b(z)); requires b(0) = 0.
TruncatedSeries s_compose(const TruncatedSeries& a, const TruncatedSeries& b);

struct SeriesValue {
  cplx value;
  double tail_bound;  ///< Estimated magnitude of the neglected tail at |z|.
};

/// Horner evaluation. Throws radius_exceeded when |z| > r_trunc or r_trunc >= 1.
SeriesValue s_eval(const TruncatedSeries& a, cplx z, double r_trunc);
/// Horner evaluation without tail accounting or radius checks.
cplx s_horner(const TruncatedSeries& a, cplx z) noexcept;

/// Geometric-ratio estimate of |sum_{n>N} c_n z^n| for |z| = r.
/// Returns +inf when the estimated growth ratio reaches 1/r.
double s_tail_bound(const TruncatedSeries& a, double r);

}  // namespace rkit
