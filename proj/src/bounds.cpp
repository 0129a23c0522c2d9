#include "rkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rkit/error.hpp"

namespace rkit {

namespace {

void require_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) raise(Errc::param_out_of_range, "radius must lie in [0, 1)");
}

}  // namespace

double pre_norm_bound(const ClassParams& params) { return 2.0 * params.k; }

double schwarzian_norm_bound(const ClassParams& params) { return 2.0 * params.k * (2.0 - params.k); }

double xi_of_member(const MemberSeries& m) {
  const double k = m.params().k;
  if (!(k > 0.0)) raise(Errc::param_out_of_range, "order constant k must be positive");
  const double xi = std::abs(m.f_second_at_zero()) / (2.0 * k);
  if (xi > 1.0 + 1e-9) raise(Errc::xi_out_of_range, "xi = " + std::to_string(xi) + " exceeds 1: not a class member");
  return xi;
}

double schwarzian_pointwise_bound(const ClassParams& params, double xi, double r) {
  if (!(xi >= 0.0 && xi < 1.0)) raise(Errc::xi_out_of_range, "xi must lie in [0, 1)");
  require_radius(r);
  const double k = params.k;
  return 2.0 * k * (2.0 + k * (xi + r) * (xi + r) / (1.0 - xi * xi));
}

double lemma_a_bound(double phi0, double r, LemmaAVariant variant) {
  if (!(phi0 >= 0.0 && phi0 < 1.0)) raise(Errc::param_out_of_range, "|phi(0)| must lie in [0, 1)");
  require_radius(r);
  const double num = (phi0 + r) * (phi0 + r);
  const double xi_factor = variant == LemmaAVariant::hyperbolic ? 1.0 - phi0 * phi0 : (1.0 - phi0) * (1.0 - phi0);
  return num / (xi_factor * (1.0 - r * r));
}

Envelope distortion_envelope(const ClassParams& params, double r) {
  require_radius(r);
  return {r, std::pow(1.0 + r * r, -params.k), std::pow(1.0 - r * r, -params.k), EnvelopeKind::distortion};
}

Envelope growth_envelope(const ClassParams& params, double r, const QuadOpts& quad) {
  require_radius(r);
  const double k = params.k;
  const double lower = integrate_gl16([k](double t) { return std::pow(1.0 + t * t, -k); }, 0.0, r, quad).value;
  const double upper = integrate_gl16([k](double t) { return std::pow(1.0 - t * t, -k); }, 0.0, r, quad).value;
  return {r, lower, upper, EnvelopeKind::growth};
}

EnvelopeReport envelope_check(const MemberSeries& m, const std::vector<double>& radii,
                              const std::vector<double>& angles) {
  if (!m.in_sp0()) raise(Errc::invalid_argument, "envelope_check needs a member with f''(0) = 0");
  EnvelopeReport rep;
  rep.distortion_min_margin = std::numeric_limits<double>::infinity();
  rep.growth_min_margin = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    const Envelope d = distortion_envelope(m.params(), r);
    const Envelope g = growth_envelope(m.params(), r);
    for (double t : angles) {
      const cplx z = std::polar(r, t);
      const double fp = std::abs(m.eval_f_prime(z));
      const double f = std::abs(m.eval_f(z));
      const double dm = std::min(d.upper - fp, fp - d.lower);
      const double gm = std::min(g.upper - f, f - g.lower);
      ++rep.samples;
      if (dm < rep.distortion_min_margin) {
        rep.distortion_min_margin = dm;
        rep.distortion_witness = z;
      }
      if (gm < rep.growth_min_margin) {
        rep.growth_min_margin = gm;
        rep.growth_witness = z;
      }
    }
  }
  return rep;
}

std::vector<EnvelopeRow> envelope_profile(const MemberSeries& m, EnvelopeKind kind, const std::vector<double>& radii,
                                          std::size_t n_angles) {
  std::vector<EnvelopeRow> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    const Envelope env = kind == EnvelopeKind::distortion ? distortion_envelope(m.params(), r)
                                                          : growth_envelope(m.params(), r);
    EnvelopeRow row{r, env.lower, env.upper, std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t j = 0; j < n_angles; ++j) {
      const cplx z = std::polar(r, 2.0 * 3.14159265358979323846 * static_cast<double>(j) / static_cast<double>(n_angles));
      const double v = std::abs(kind == EnvelopeKind::distortion ? m.eval_f_prime(z) : m.eval_f(z));
      row.sampled_min = std::min(row.sampled_min, v);
      row.sampled_max = std::max(row.sampled_max, v);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rkit
