#pragma once

// Closed-form sharp bounds for SP_alpha(beta): norm bounds, the pointwise
// Schwarzian bound in terms of xi = |phi(0)|, the Schwarz-Pick type lemma for
// phi, and the growth/distortion envelopes.

#include <vector>

#include "rkit/quadrature.hpp"
#include "rkit/robertson.hpp"

namespace rkit {

/// 2k.
double pre_norm_bound(const ClassParams& params);
/// 2k(2 - k).
double schwarzian_norm_bound(const ClassParams& params);
/// |f''(0)|/(2k) = |phi(0)|; throws xi_out_of_range above 1 + 1e-9.
double xi_of_member(const MemberSeries& m);
/// 2k(2 + k(xi + r)^2/(1 - xi^2)), bounding (1 - |z|^2)^2 |S_f(z)| at |z| = r.
double schwarzian_pointwise_bound(const ClassParams& params, double xi, double r);

enum class LemmaAVariant {
  hyperbolic,  ///< (xi + r)^2 / ((1 - xi^2)(1 - r^2)), the Schwarz-Pick form
  literal,     ///< (xi + r)^2 / ((1 - xi)^2 (1 - r^2))
};

/// Upper bound for |phi(z)|^2/(1 - |phi(z)|^2) at |z| = r given xi = |phi(0)|.
double lemma_a_bound(double phi0, double r, LemmaAVariant variant = LemmaAVariant::hyperbolic);

enum class EnvelopeKind { distortion, growth };

struct Envelope {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  EnvelopeKind kind = EnvelopeKind::distortion;
};

/// (1 + r^2)^{-k} <= |f'| <= (1 - r^2)^{-k}.
Envelope distortion_envelope(const ClassParams& params, double r);
/// int_0^r (1 + t^2)^{-k} dt <= |f| <= int_0^r (1 - t^2)^{-k} dt.
Envelope growth_envelope(const ClassParams& params, double r, const QuadOpts& quad = {});

struct EnvelopeReport {
  double distortion_min_margin = 0.0;
  cplx distortion_witness{};
  double growth_min_margin = 0.0;
  cplx growth_witness{};
  std::size_t samples = 0;
};

/// min over samples of min(upper - |f'|, |f'| - lower) and the same for |f|.
/// Requires an SP0 member.
EnvelopeReport envelope_check(const MemberSeries& m, const std::vector<double>& radii,
                              const std::vector<double>& angles);

struct EnvelopeRow {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double sampled_min = 0.0;
  double sampled_max = 0.0;
};

/// Envelope against min/max over angles of |f'| (distortion) or |f| (growth) at each radius.
std::vector<EnvelopeRow> envelope_profile(const MemberSeries& m, EnvelopeKind kind, const std::vector<double>& radii,
                                          std::size_t n_angles);

}  // namespace rkit
