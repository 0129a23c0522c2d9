#include "rkit/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rkit/error.hpp"
#include "rkit/grid.hpp"

namespace rkit {

TruncatedSeries pre_schwarzian(const MemberSeries& m) { return s_log_derivative(m.f_prime()); }

TruncatedSeries schwarzian(const MemberSeries& m) {
  const TruncatedSeries& p = m.pre();
  return s_deriv(p) - cplx{0.5} * (p * p);
}

TruncatedSeries schwarzian_via_phi(const ClassParams& params, const SchwarzSpec& spec, std::size_t order) {
  const TruncatedSeries phi = spec.phi_series(order);
  const TruncatedSeries one_minus_zphi = cplx{1.0} - s_shift_up(phi, 1);
  const TruncatedSeries num = cplx{2.0} * s_deriv(phi) + (2.0 - 2.0 * params.g1) * (phi * phi);
  const TruncatedSeries den = cplx{2.0} * (one_minus_zphi * one_minus_zphi);
  return (2.0 * params.g1) * num / den;
}

DerivativeEvaluator::DerivativeEvaluator(const MemberSeries& m)
    : pre_(m.pre()), schw_(rkit::schwarzian(m)), closed_(m.closed_form()) {}

cplx DerivativeEvaluator::pre(cplx z) const { return closed_ ? closed_->pre(z) : s_horner(pre_, z); }

cplx DerivativeEvaluator::schwarzian(cplx z) const {
  return closed_ ? closed_->schwarzian(z) : s_horner(schw_, z);
}

double DerivativeEvaluator::weighted(cplx z, int weight_exponent) const {
  const double w = 1.0 - std::norm(z);
  if (weight_exponent == 1) return w * std::abs(pre(z));
  return w * w * std::abs(schwarzian(z));
}

namespace {

constexpr double inv_phi = 0.6180339887498949;

// Maximizes h on [a, b]; returns (argmax, value) and reports evaluations through `seen`.
template <class F, class Seen>
std::pair<double, double> golden_max(F&& h, double a, double b, double tol, Seen&& seen) {
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = h(x1);
  double f2 = h(x2);
  seen(x1, f1);
  seen(x2, f2);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = h(x2);
      seen(x2, f2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = h(x1);
      seen(x1, f1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct Cell {
  double value;
  std::size_t i;
  std::size_t j;
};

}  // namespace

NormEstimate norm_estimate(const DerivativeEvaluator& eval, int weight_exponent, const ScanOpts& opts) {
  if (weight_exponent != 1 && weight_exponent != 2) raise(Errc::invalid_argument, "weight exponent must be 1 or 2");
  if (opts.radial < 2 || opts.angular < 4) raise(Errc::invalid_argument, "scan needs >= 2 radii and >= 4 angles");
  NormEstimate est;
  est.weight_exponent = weight_exponent;
  est.r_max = opts.r_max.value_or(eval.has_closed_form() ? closed_form_scan_radius : series_scan_radius);
  if (!(est.r_max > 0.0 && est.r_max < 1.0)) raise(Errc::invalid_argument, "r_max must lie in (0, 1)");
  if (!eval.has_closed_form()) {
    const auto& q = weight_exponent == 1 ? eval.pre_series() : eval.schwarzian_series();
    const double w = 1.0 - est.r_max * est.r_max;
    est.tail_error = (weight_exponent == 1 ? w : w * w) * s_tail_bound(q, est.r_max);
    if (!(est.tail_error <= opts.tail_tol)) {
      raise(Errc::tail_tolerance_unmet, "series tail " + std::to_string(est.tail_error) + " at r_max " +
                                            std::to_string(est.r_max) + " exceeds tolerance");
    }
  }

  const auto radii = chebyshev_radii(opts.radial, est.r_max);
  const auto angles = uniform_angles(opts.angular);
  const std::size_t nr = radii.size();
  const std::size_t na = angles.size();
  std::vector<double> g(nr * na);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < na; ++j) g[i * na + j] = eval.weighted(std::polar(radii[i], angles[j]), weight_exponent);
  }
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const double v = g[i * na + j];
      est.scan_gap = std::max(est.scan_gap, std::abs(v - g[i * na + (j + 1) % na]));
      if (i + 1 < nr) est.scan_gap = std::max(est.scan_gap, std::abs(v - g[(i + 1) * na + j]));
    }
  }

  std::vector<Cell> cells;
  cells.reserve(g.size());
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < na; ++j) cells.push_back({g[i * na + j], i, j});
  }
  const std::size_t keep = std::min(opts.candidates, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(keep), cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value > b.value; });

  est.value = cells.front().value;
  est.argmax = std::polar(radii[cells.front().i], angles[cells.front().j]);
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(na);

  struct Start {
    double r, t, r_lo, r_hi, dt, value;
  };
  std::vector<Start> starts;
  for (std::size_t c = 0; c < keep; ++c) {
    const auto& cell = cells[c];
    starts.push_back({radii[cell.i], angles[cell.j], cell.i == 0 ? 0.0 : radii[cell.i - 1],
                      cell.i + 1 < nr ? radii[cell.i + 1] : est.r_max, dtheta, cell.value});
  }
  // Boundary-concentrated peaks are about (1 - r_max) wide in angle, far below the coarse spacing.
  const auto n_edge = static_cast<std::size_t>(
      std::max<double>(static_cast<double>(na), std::ceil(8.0 * std::numbers::pi / (1.0 - est.r_max))));
  const double dt_edge = 2.0 * std::numbers::pi / static_cast<double>(n_edge);
  Start edge{est.r_max, 0.0, radii[nr - 2], est.r_max, dt_edge, -1.0};
  for (std::size_t j = 0; j < n_edge; ++j) {
    const double t = dt_edge * static_cast<double>(j);
    const double v = eval.weighted(std::polar(est.r_max, t), weight_exponent);
    if (v > edge.value) {
      edge.value = v;
      edge.t = t;
    }
  }
  if (edge.value > est.value) {
    est.value = edge.value;
    est.argmax = std::polar(edge.r, edge.t);
  }
  starts.push_back(edge);

  for (const auto& s0 : starts) {
    double r = s0.r;
    double t = s0.t;
    double best = s0.value;
    for (int round = 0; round < 30; ++round) {
      ++est.refinement_steps;
      const double before = best;
      auto note = [&](double rr, double tt, double v) {
        if (v > est.value) {
          est.value = v;
          est.argmax = std::polar(rr, tt);
        }
      };
      const auto [r_new, v_r] = golden_max(
          [&](double rr) { return eval.weighted(std::polar(rr, t), weight_exponent); }, s0.r_lo, s0.r_hi,
          opts.refine_tol, [&](double rr, double v) { note(rr, t, v); });
      if (v_r > best) {
        best = v_r;
        r = r_new;
      }
      const auto [t_new, v_t] = golden_max(
          [&](double tt) { return eval.weighted(std::polar(r, tt), weight_exponent); }, t - s0.dt, t + s0.dt,
          opts.refine_tol, [&](double tt, double v) { note(r, tt, v); });
      if (v_t > best) {
        best = v_t;
        t = t_new;
      }
      if (best - before <= opts.refine_tol) break;
    }
  }
  return est;
}

NormEstimate norm_estimate(const MemberSeries& m, int weight_exponent, const ScanOpts& opts) {
  return norm_estimate(DerivativeEvaluator(m), weight_exponent, opts);
}

NehariCertificate nehari_certificates(const MemberSeries& m, const ScanOpts& scan) {
  NehariCertificate cert;
  cert.norm = norm_estimate(m, 2, scan);
  cert.necessary_margin = 6.0 - cert.norm.value;
  cert.sufficient_margin = 2.0 - cert.norm.value;
  const double k = cert.norm.value / 2.0;
  if (k <= 1.0) cert.qc_k = k;
  return cert;
}

}  // namespace rkit
