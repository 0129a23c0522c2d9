#pragma once

// Reference computations used by the tests. None of these call into the
// series kernel, so they can serve as independent checks of it.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "rkit/series.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Coefficients of (1 - z)^{-k}: (k)_n / n!, built by the rising-factorial recurrence.
inline std::vector<double> rising_factorial_coeffs(double k, std::size_t order) {
  std::vector<double> c(order + 1);
  c[0] = 1.0;
  for (std::size_t n = 0; n < order; ++n) c[n + 1] = c[n] * (k + static_cast<double>(n)) / static_cast<double>(n + 1);
  return c;
}

/// Direct Cauchy product, truncated.
inline std::vector<cplx> cauchy(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t order) {
  std::vector<cplx> c(order + 1);
  for (std::size_t i = 0; i <= order && i < a.size(); ++i) {
    for (std::size_t j = 0; i + j <= order && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// sum c_n z^n with explicit powers.
inline cplx power_sum(const std::vector<cplx>& c, cplx z) {
  cplx s{};
  for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * std::pow(z, static_cast<double>(n));
  return s;
}

template <class F>
cplx central_difference(F&& f, cplx z, double h = 1e-5) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

inline std::vector<cplx> coeffs(const rkit::TruncatedSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

inline double max_diff(const rkit::TruncatedSeries& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t n = 0; n <= a.order() && n < b.size(); ++n) d = std::max(d, std::abs(a[n] - b[n]));
  return d;
}

inline double max_diff(const rkit::TruncatedSeries& a, const rkit::TruncatedSeries& b) {
  return max_diff(a, coeffs(b));
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  cplx in_disk(double radius = 1.0) { return std::polar(radius * std::sqrt(uniform()), uniform(0.0, 2.0 * M_PI)); }
  /// Order-n series with |c_j| <= scale.
  rkit::TruncatedSeries series(std::size_t order, double scale = 1.0) {
    std::vector<cplx> c(order + 1);
    for (auto& x : c) x = in_disk(scale);
    return rkit::TruncatedSeries(std::move(c));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
