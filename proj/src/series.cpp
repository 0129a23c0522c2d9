#include "rkit/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rkit/error.hpp"

namespace rkit {

namespace {

void check_coeffs(const std::vector<cplx>& c) {
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double re = c[n].real();
    const double im = c[n].imag();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      raise(Errc::non_finite_coefficient, "coefficient " + std::to_string(n) + " is not finite");
    }
    if (std::abs(re) > series_limits::overflow_guard || std::abs(im) > series_limits::overflow_guard) {
      raise(Errc::coefficient_overflow, "coefficient " + std::to_string(n) + " exceeds 1e100");
    }
  }
}

std::size_t common_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  return std::min(a.order(), b.order());
}

void require_invertible(cplx c0, const char* op) {
  if (std::abs(c0) <= series_limits::tol_div) {
    raise(Errc::division_by_zero_constant_term, std::string(op) + ": |c0| <= tol_div");
  }
}

// Cauchy product truncated to `order`.
std::vector<cplx> cauchy(std::span<const cplx> a, std::span<const cplx> b, std::size_t order) {
  std::vector<cplx> out(order + 1);
  const std::size_t na = std::min(a.size(), order + 1);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == cplx{}) continue;
    const std::size_t nb = std::min(b.size(), order + 1 - i);
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

TruncatedSeries::TruncatedSeries() : coeffs_{cplx{}} {}

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) raise(Errc::invalid_argument, "series needs at least one coefficient");
  if (coeffs_.size() - 1 > series_limits::max_order) raise(Errc::invalid_argument, "series order exceeds max_order");
  check_coeffs(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<cplx> coeffs)
    : TruncatedSeries(std::vector<cplx>(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(std::size_t order) {
  return TruncatedSeries(std::vector<cplx>(order + 1));
}

TruncatedSeries TruncatedSeries::constant(cplx c, std::size_t order) {
  std::vector<cplx> v(order + 1);
  v[0] = c;
  return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::identity(std::size_t order) {
  std::vector<cplx> v(order + 1);
  if (order >= 1) v[1] = 1.0;
  return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::geometric(std::size_t order, cplx ratio) {
  std::vector<cplx> v(order + 1);
  cplx p = 1.0;
  for (auto& c : v) {
    c = p;
    p *= ratio;
  }
  return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  if (order >= this->order()) return *this;
  return TruncatedSeries(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
}

TruncatedSeries TruncatedSeries::resized(std::size_t order) const {
  std::vector<cplx> v(coeffs_);
  v.resize(order + 1);
  return TruncatedSeries(std::move(v));
}

TruncatedSeries TruncatedSeries::with_coeff(std::size_t n, cplx value) const {
  std::vector<cplx> v(coeffs_);
  if (n >= v.size()) raise(Errc::invalid_argument, "with_coeff: index beyond order");
  v[n] = value;
  return TruncatedSeries(std::move(v));
}

double TruncatedSeries::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

TruncatedSeries s_arith(const TruncatedSeries& a, const TruncatedSeries& b, ArithKind kind) {
  const std::size_t order = common_order(a, b);
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  switch (kind) {
    case ArithKind::add:
    case ArithKind::sub: {
      std::vector<cplx> out(order + 1);
      const double sign = kind == ArithKind::add ? 1.0 : -1.0;
      for (std::size_t n = 0; n <= order; ++n) out[n] = ca[n] + sign * cb[n];
      return TruncatedSeries(std::move(out));
    }
    case ArithKind::mul:
      return TruncatedSeries(cauchy(ca, cb, order));
    case ArithKind::div: {
      require_invertible(cb[0], "s_div");
      std::vector<cplx> q(order + 1);
      const cplx inv_b0 = 1.0 / cb[0];
      for (std::size_t n = 0; n <= order; ++n) {
        cplx acc = ca[n];
        for (std::size_t j = 1; j <= n; ++j) acc -= cb[j] * q[n - j];
        q[n] = acc * inv_b0;
      }
      return TruncatedSeries(std::move(q));
    }
  }
  raise(Errc::invalid_argument, "unknown arithmetic kind");
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return s_arith(a, b, ArithKind::add); }
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return s_arith(a, b, ArithKind::sub); }
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return s_arith(a, b, ArithKind::mul); }
TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return s_arith(a, b, ArithKind::div); }

TruncatedSeries operator-(const TruncatedSeries& a) { return cplx{-1.0} * a; }

TruncatedSeries operator*(cplx s, const TruncatedSeries& a) {
  std::vector<cplx> v(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : v) c *= s;
  return TruncatedSeries(std::move(v));
}

TruncatedSeries operator*(const TruncatedSeries& a, cplx s) { return s * a; }

TruncatedSeries operator+(const TruncatedSeries& a, cplx s) { return a.with_coeff(0, a[0] + s); }
TruncatedSeries operator+(cplx s, const TruncatedSeries& a) { return a + s; }
TruncatedSeries operator-(cplx s, const TruncatedSeries& a) { return (-a) + s; }

TruncatedSeries s_shift_up(const TruncatedSeries& a, std::size_t shift) {
  std::vector<cplx> v(a.order() + 1);
  for (std::size_t n = shift; n < v.size(); ++n) v[n] = a[n - shift];
  return TruncatedSeries(std::move(v));
}

TruncatedSeries s_shift_down(const TruncatedSeries& a, std::size_t shift) {
  if (shift == 0) return a;
  for (std::size_t n = 0; n < shift; ++n) {
    if (std::abs(a[n]) > series_limits::tol_div) {
      raise(Errc::invalid_argument, "s_shift_down: low-order coefficient does not vanish");
    }
  }
  if (shift > a.order()) return TruncatedSeries::zero(0);
  std::vector<cplx> v(a.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), a.coeffs().end());
  v.resize(a.order() + 1);
  return TruncatedSeries(std::move(v));
}

TruncatedSeries s_deriv(const TruncatedSeries& a) {
  const std::size_t order = a.order();
  if (order == 0) return TruncatedSeries::zero(0);
  std::vector<cplx> v(order);
  for (std::size_t n = 1; n <= order; ++n) v[n - 1] = static_cast<double>(n) * a[n];
  return TruncatedSeries(std::move(v));
}

TruncatedSeries s_integ(const TruncatedSeries& a, std::size_t cap) {
  const std::size_t order = std::min(a.order() + 1, std::min(cap, series_limits::max_order));
  std::vector<cplx> v(order + 1);
  for (std::size_t n = 1; n <= order; ++n) v[n] = a[n - 1] / static_cast<double>(n);
  return TruncatedSeries(std::move(v));
}

// (exp a)' = a' exp a  =>  n e_n = sum_{j=1}^n j a_j e_{n-j}.
TruncatedSeries s_exp(const TruncatedSeries& a) {
  const std::size_t order = a.order();
  std::vector<cplx> e(order + 1);
  e[0] = std::exp(a[0]);
  for (std::size_t n = 1; n <= order; ++n) {
    cplx acc{};
    for (std::size_t j = 1; j <= n; ++j) acc += static_cast<double>(j) * a[j] * e[n - j];
    e[n] = acc / static_cast<double>(n);
  }
  return TruncatedSeries(std::move(e));
}

// a l' = a'  =>  n a_0 l_n = n a_n - sum_{j=1}^{n-1} j l_j a_{n-j}.
TruncatedSeries s_log(const TruncatedSeries& a) {
  require_invertible(a[0], "s_log");
  const std::size_t order = a.order();
  std::vector<cplx> l(order + 1);
  l[0] = std::log(a[0]);
  const cplx inv_a0 = 1.0 / a[0];
  for (std::size_t n = 1; n <= order; ++n) {
    cplx acc = static_cast<double>(n) * a[n];
    for (std::size_t j = 1; j < n; ++j) acc -= static_cast<double>(j) * l[j] * a[n - j];
    l[n] = acc * inv_a0 / static_cast<double>(n);
  }
  return TruncatedSeries(std::move(l));
}

TruncatedSeries s_pow(const TruncatedSeries& a, cplx exponent) {
  require_invertible(a[0], "s_pow");
  return s_exp(exponent * s_log(a));
}

TruncatedSeries s_log_derivative(const TruncatedSeries& a) {
  require_invertible(a[0], "s_log_derivative");
  return s_deriv(a) / a;
}

TruncatedSeries s_compose(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (std::abs(b[0]) > series_limits::tol_div) {
    raise(Errc::nonzero_inner_constant_term, "s_compose: inner series must vanish at 0");
  }
  const std::size_t order = common_order(a, b);
  const TruncatedSeries inner = b.with_coeff(0, 0.0).truncated(order);
  // Horner from the top; the partial sum at level n is later multiplied by b^n,
  // so only its first order-n coefficients can reach the result.
  std::vector<cplx> acc{a[order]};
  for (std::size_t n = order; n-- > 0;) {
    const std::size_t level_order = order - n;
    std::vector<cplx> next = cauchy(acc, inner.coeffs(), level_order);
    next[0] += a[n];
    acc = std::move(next);
  }
  acc.resize(order + 1);
  return TruncatedSeries(std::move(acc));
}

cplx s_horner(const TruncatedSeries& a, cplx z) noexcept {
  const auto c = a.coeffs();
  cplx acc = c.back();
  for (std::size_t n = c.size() - 1; n-- > 0;) acc = acc * z + c[n];
  return acc;
}

SeriesValue s_eval(const TruncatedSeries& a, cplx z, double r_trunc) {
  if (!(r_trunc < 1.0)) raise(Errc::radius_exceeded, "s_eval: r_trunc must be < 1");
  if (std::abs(z) > r_trunc) raise(Errc::radius_exceeded, "s_eval: |z| > r_trunc");
  return {s_horner(a, z), s_tail_bound(a, std::abs(z))};
}

double s_tail_bound(const TruncatedSeries& a, double r) {
  if (r < 0.0) raise(Errc::invalid_argument, "s_tail_bound: negative radius");
  const std::size_t order = a.order();
  const std::size_t count = order + 1;
  const std::size_t window = std::min(std::max<std::size_t>(8, order / 4), count);
  if (r == 0.0) return 0.0;
  const auto c = a.coeffs();
  if (window < 2) {
    const double rho = a.max_abs();
    if (rho == 0.0) return 0.0;
    return r >= 1.0 ? std::numeric_limits<double>::infinity() : rho * std::pow(r, double(order + 1)) / (1.0 - r);
  }
  const std::size_t half = window / 2;
  const std::size_t first = count - window;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t n = first; n < first + half; ++n) m1 = std::max(m1, std::abs(c[n]));
  for (std::size_t n = first + half; n < count; ++n) m2 = std::max(m2, std::abs(c[n]));
  if (m1 == 0.0 && m2 == 0.0) return 0.0;
  if (m1 == 0.0) return std::numeric_limits<double>::infinity();
  const double span = static_cast<double>(window - half);
  double q = std::pow(m2 / m1, 1.0 / static_cast<double>(half));
  q = std::max(q, 0.0);
  if (q * r >= 1.0) return std::numeric_limits<double>::infinity();
  const double grow = std::max(q, 1.0);
  const double rho = m2 * std::pow(grow, span);
  return rho * grow * std::pow(r, double(order + 1)) / (1.0 - q * r);
}

}  // namespace rkit
