#include "rkit/robertson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rkit/error.hpp"

namespace rkit {

namespace {

constexpr double unimodular_tol = 1e-12;
/// Absorbs rounding in |polar(r, t)| for points placed exactly on an evaluable radius.
constexpr double radius_slack = 1.0 + 1e-12;

bool is_unimodular(cplx c) { return std::abs(std::abs(c) - 1.0) <= unimodular_tol; }

// (z - a)/(1 - conj(a) z) = -a + (1 - |a|^2) sum_{n>=1} conj(a)^{n-1} z^n
TruncatedSeries blaschke_factor_series(cplx a, std::size_t order) {
  std::vector<cplx> c(order + 1);
  c[0] = -a;
  const cplx ab = std::conj(a);
  const double scale = 1.0 - std::norm(a);
  cplx p = 1.0;
  for (std::size_t n = 1; n <= order; ++n) {
    c[n] = scale * p;
    p *= ab;
  }
  return TruncatedSeries(std::move(c));
}

}  // namespace

ClassParams make_params(double alpha, double beta) {
  const double half_pi = std::numbers::pi / 2.0;
  if (!std::isfinite(alpha) || !(alpha > -half_pi && alpha < half_pi)) {
    raise(Errc::param_out_of_range, "alpha must lie in (-pi/2, pi/2)");
  }
  if (!std::isfinite(beta) || !(beta >= 0.0 && beta < 1.0)) {
    raise(Errc::param_out_of_range, "beta must lie in [0, 1)");
  }
  ClassParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.k = (1.0 - beta) * std::cos(alpha);
  const cplx rot = std::polar(1.0, -alpha);
  p.a_sub = rot * (rot - 2.0 * beta * std::cos(alpha));
  p.g1 = (p.a_sub + 1.0) / 2.0;
  return p;
}

SchwarzSpec SchwarzSpec::polynomial(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      raise(Errc::not_a_schwarz_function, "polynomial coefficient is not finite");
    }
  }
  if (coeffs[0] != cplx{}) raise(Errc::not_a_schwarz_function, "omega(0) must vanish");
  SchwarzSpec s;
  s.kind_ = SchwarzKind::polynomial;
  s.coeffs_ = std::move(coeffs);
  for (std::size_t n = 1; n < s.coeffs_.size(); ++n) {
    if (s.coeffs_[n] != cplx{}) {
      s.vanishing_order_ = n;
      break;
    }
  }
  return s;
}

SchwarzSpec SchwarzSpec::blaschke(std::vector<cplx> zeros, cplx rotation) {
  if (!is_unimodular(rotation)) raise(Errc::not_a_schwarz_function, "Blaschke rotation must be unimodular");
  std::size_t at_origin = 0;
  for (const auto& a : zeros) {
    if (!(std::abs(a) < 1.0)) raise(Errc::not_a_schwarz_function, "Blaschke zeros must lie in the open disk");
    if (a == cplx{}) ++at_origin;
  }
  if (at_origin == 0) raise(Errc::not_a_schwarz_function, "omega(0) must vanish: no Blaschke zero at the origin");
  SchwarzSpec s;
  s.kind_ = SchwarzKind::blaschke_product;
  s.zeros_ = std::move(zeros);
  s.rotation_ = rotation;
  s.vanishing_order_ = at_origin;
  return s;
}

SchwarzSpec SchwarzSpec::unit_constant(cplx rotation) {
  if (!is_unimodular(rotation)) raise(Errc::not_a_schwarz_function, "rotation must be unimodular");
  SchwarzSpec s;
  s.kind_ = SchwarzKind::unit_constant_times_z;
  s.rotation_ = rotation;
  s.vanishing_order_ = 1;
  return s;
}

SchwarzSpec SchwarzSpec::zero() { return polynomial({0.0}); }

cplx SchwarzSpec::phi(cplx z) const {
  switch (kind_) {
    case SchwarzKind::polynomial: {
      cplx acc{};
      for (std::size_t n = coeffs_.size(); n-- > 1;) acc = acc * z + coeffs_[n];
      return acc;
    }
    case SchwarzKind::blaschke_product: {
      cplx acc = rotation_;
      bool skipped_origin = false;
      for (const auto& a : zeros_) {
        if (a == cplx{} && !skipped_origin) {
          skipped_origin = true;
          continue;
        }
        acc *= (z - a) / (1.0 - std::conj(a) * z);
      }
      return acc;
    }
    case SchwarzKind::unit_constant_times_z:
      return rotation_;
  }
  return {};
}

cplx SchwarzSpec::omega(cplx z) const { return z * phi(z); }

TruncatedSeries SchwarzSpec::phi_series(std::size_t order) const {
  switch (kind_) {
    case SchwarzKind::polynomial: {
      std::vector<cplx> c(order + 1);
      for (std::size_t n = 1; n < coeffs_.size() && n - 1 <= order; ++n) c[n - 1] = coeffs_[n];
      return TruncatedSeries(std::move(c));
    }
    case SchwarzKind::blaschke_product: {
      TruncatedSeries acc = TruncatedSeries::constant(rotation_, order);
      bool skipped_origin = false;
      for (const auto& a : zeros_) {
        if (a == cplx{} && !skipped_origin) {
          skipped_origin = true;
          continue;
        }
        if (a == cplx{}) {
          acc = s_shift_up(acc, 1);
        } else {
          acc = acc * blaschke_factor_series(a, order);
        }
      }
      return acc;
    }
    case SchwarzKind::unit_constant_times_z:
      return TruncatedSeries::constant(rotation_, order);
  }
  return TruncatedSeries::zero(order);
}

TruncatedSeries SchwarzSpec::omega_series(std::size_t order) const { return s_shift_up(phi_series(order), 1); }

GridSpec default_schwarz_grid() { return GridSpec::chebyshev(256, 256, 0.999); }

GridSpec default_validation_grid() { return GridSpec::chebyshev(64, 64, 0.9); }

SchwarzReport validate_schwarz(const SchwarzSpec& spec, const GridSpec& grid) {
  SchwarzReport rep;
  rep.vanishing_order = spec.vanishing_order();
  for (double r : grid.radii) {
    for (double t : grid.angles) rep.grid_max = std::max(rep.grid_max, std::abs(spec.omega(std::polar(r, t))));
  }
  if (spec.kind() == SchwarzKind::polynomial && rep.grid_max >= 1.0 - schwarz_safety_margin) {
    raise(Errc::not_a_schwarz_function, "polynomial omega reaches modulus " + std::to_string(rep.grid_max) + " on the grid");
  }
  return rep;
}

namespace {

struct PowerTerms {
  cplx u, du, d2u;
};

PowerTerms power_terms(const ClosedForm& cf, cplx z) {
  if (cf.power == 1) return {cf.lambda * z, cf.lambda, cplx{}};
  return {cf.lambda * z * z, 2.0 * cf.lambda * z, 2.0 * cf.lambda};
}

}  // namespace

cplx ClosedForm::f_prime(cplx z) const {
  const auto t = power_terms(*this, z);
  return std::exp(-exponent * std::log(1.0 - t.u));
}

cplx ClosedForm::pre(cplx z) const {
  const auto t = power_terms(*this, z);
  return exponent * t.du / (1.0 - t.u);
}

cplx ClosedForm::pre_deriv(cplx z) const {
  const auto t = power_terms(*this, z);
  const cplx d = 1.0 - t.u;
  return exponent * (t.d2u * d + t.du * t.du) / (d * d);
}

cplx ClosedForm::schwarzian(cplx z) const {
  const cplx p = pre(z);
  return pre_deriv(z) - 0.5 * p * p;
}

double series_trusted_radius(const TruncatedSeries& a, double tol, double r_cap) {
  if (s_tail_bound(a, r_cap) <= tol) return r_cap;
  double lo = 0.0;
  double hi = r_cap;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (s_tail_bound(a, mid) <= tol ? lo : hi) = mid;
  }
  return lo;
}

MemberSeries::MemberSeries(TruncatedSeries f, TruncatedSeries f_prime, ClassParams params, Provenance provenance,
                           std::optional<ClosedForm> closed_form)
    : f_(std::move(f)),
      f_prime_(std::move(f_prime)),
      params_(params),
      provenance_(std::move(provenance)),
      closed_form_(closed_form) {
  if (f_.order() < 1 || f_[0] != cplx{} || f_[1] != cplx{1.0}) {
    raise(Errc::invalid_argument, "member must satisfy f(0) = 0, f'(0) = 1 exactly");
  }
  if (f_prime_[0] != cplx{1.0}) raise(Errc::invalid_argument, "member f' must have constant term 1");
  pre_ = s_log_derivative(f_prime_);
  eval_radius_ = closed_form_ ? 1.0 : series_trusted_radius(pre_, eval_tail_tol);
  f_radius_ = series_trusted_radius(f_, eval_tail_tol);
  f_prime_radius_ = series_trusted_radius(f_prime_, eval_tail_tol);
}

bool MemberSeries::in_sp0() const noexcept { return std::abs(f_second_at_zero()) <= 1e-12; }

cplx MemberSeries::eval_pre(cplx z) const {
  if (closed_form_) {
    if (!(std::abs(z) < 1.0)) raise(Errc::radius_exceeded, "closed-form evaluation needs |z| < 1");
    return closed_form_->pre(z);
  }
  if (std::abs(z) > eval_radius_ * radius_slack) {
    raise(Errc::radius_exceeded, "|z| = " + std::to_string(std::abs(z)) + " beyond evaluable radius " +
                                     std::to_string(eval_radius_));
  }
  return s_horner(pre_, z);
}

cplx MemberSeries::eval_f_prime(cplx z) const {
  if (closed_form_) {
    if (!(std::abs(z) < 1.0)) raise(Errc::radius_exceeded, "closed-form evaluation needs |z| < 1");
    return closed_form_->f_prime(z);
  }
  if (std::abs(z) > f_prime_radius_ * radius_slack) raise(Errc::radius_exceeded, "beyond evaluable radius of f'");
  return s_horner(f_prime_, z);
}

cplx MemberSeries::eval_f(cplx z) const {
  if (std::abs(z) > f_radius_ * radius_slack) raise(Errc::radius_exceeded, "beyond evaluable radius of f");
  return s_horner(f_, z);
}

MemberSeries generate_member(const ClassParams& params, const SchwarzSpec& spec, std::size_t order) {
  if (order < 8) raise(Errc::invalid_argument, "generate_member needs order >= 8");
  const TruncatedSeries phi = spec.phi_series(order);
  const TruncatedSeries z_phi = s_shift_up(phi, 1);
  const TruncatedSeries pre = (2.0 * params.g1) * phi / (cplx{1.0} - z_phi);
  const TruncatedSeries f_prime = s_exp(s_integ(pre, order));
  TruncatedSeries f = s_integ(f_prime, order).with_coeff(0, 0.0).with_coeff(1, 1.0);
  std::optional<ClosedForm> cf;
  if (spec.kind() == SchwarzKind::unit_constant_times_z) {
    cf = ClosedForm{1, spec.rotation(), 2.0 * params.g1};
  }
  return MemberSeries(std::move(f), f_prime.with_coeff(0, 1.0), params, spec, cf);
}

MemberSeries extremal_member(const ClassParams& params, ExtremalVariant variant, cplx lambda, std::size_t order) {
  if (!is_unimodular(lambda)) raise(Errc::param_out_of_range, "extremal lambda must be unimodular");
  if (order < 2) raise(Errc::invalid_argument, "extremal_member needs order >= 2");
  const int power = variant == ExtremalVariant::plane ? 1 : 2;
  std::vector<cplx> base(order + 1);
  base[0] = 1.0;
  base[static_cast<std::size_t>(power)] = -lambda;
  const TruncatedSeries f_prime = s_pow(TruncatedSeries(std::move(base)), -params.k).with_coeff(0, 1.0);
  TruncatedSeries f = s_integ(f_prime, order).with_coeff(0, 0.0).with_coeff(1, 1.0);
  return MemberSeries(std::move(f), f_prime, params, ExtremalTag{variant, lambda},
                      ClosedForm{power, lambda, cplx{params.k}});
}

MarginReport subordination_membership_check(const MemberSeries& m, const GridSpec& grid) {
  MarginReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const cplx rot = std::polar(1.0, m.params().alpha);
  const double floor = m.params().beta * std::cos(m.params().alpha);
  for (double r : grid.radii) {
    for (double t : grid.angles) {
      const cplx z = std::polar(r, t);
      const double margin = (rot * (1.0 + z * m.eval_pre(z))).real() - floor;
      ++rep.samples;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.witness = z;
      }
    }
  }
  return rep;
}

double check_ii(const MemberSeries& m, cplx z) {
  const auto& p = m.params();
  const cplx w = z * m.eval_pre(z);
  const double lhs = (1.0 + std::conj(p.g1) * w).real();
  const double rhs = 1.0 - p.k * p.k + (1.0 - std::norm(z)) / 4.0 * std::norm(w);
  return lhs - rhs;
}

double check_iii(const MemberSeries& m, cplx z, CheckMode mode) {
  const auto& p = m.params();
  const cplx x = (1.0 - std::norm(z)) * m.eval_pre(z);
  if (mode == CheckMode::paper) return p.k - std::abs(x - 2.0 * p.k * std::conj(z));
  return 2.0 * p.k - std::abs(x - 2.0 * p.g1 * std::conj(z));
}

double classical_convexity_check(const MemberSeries& m, cplx z, ClassicalConvexity which) {
  const cplx pre = m.eval_pre(z);
  if (which == ClassicalConvexity::real_part_form) {
    return (1.0 + z * pre).real() - (1.0 - std::norm(z)) * std::norm(pre) / 4.0;
  }
  return 2.0 - std::abs((1.0 - std::norm(z)) * pre - 2.0 * std::conj(z));
}

}  // namespace rkit
