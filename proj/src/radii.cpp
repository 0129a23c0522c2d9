#include "rkit/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rkit/error.hpp"
#include "rkit/sampling.hpp"

namespace rkit {

ConcavitySetting make_concavity_setting(double a_co) {
  if (!(a_co > 1.0 && a_co <= 2.0)) raise(Errc::param_out_of_range, "A_co must lie in (1, 2]");
  return {a_co};
}

std::string_view to_string(PhiMode mode) noexcept { return mode == PhiMode::paper ? "paper" : "corrected"; }

std::string_view to_string(RadiusMethod method) noexcept {
  switch (method) {
    case RadiusMethod::closed_form:
      return "closed_form";
    case RadiusMethod::bisection:
      return "bisection";
    case RadiusMethod::formula_degenerate:
      return "formula_degenerate";
  }
  return "?";
}

std::string_view to_string(ConvexityMode mode) noexcept {
  switch (mode) {
    case ConvexityMode::paper_literal:
      return "paper_literal";
    case ConvexityMode::derived_paper:
      return "derived_paper";
    case ConvexityMode::derived_corrected:
      return "derived_corrected";
  }
  return "?";
}

Quadratic phi_quadratic(const ClassParams& params, const ConcavitySetting& setting, PhiMode mode) {
  const double a = setting.a_co;
  const double k = params.k;
  if (mode == PhiMode::paper) return {a + 1.0 - 2.0 * k, -2.0 * (a + 1.0 + k), a - 1.0};
  return {a + 3.0 - 4.0 * k, -2.0 * (a + 1.0 + 2.0 * k), a - 1.0};
}

RadiusResult radius_concavity(const ClassParams& params, const ConcavitySetting& setting, PhiMode mode) {
  const Quadratic phi = phi_quadratic(params, setting, mode);
  if (!(phi(0.0) > 0.0) || !(phi(1.0) < 0.0)) {
    raise(Errc::root_not_bracketed, "Phi does not change sign on [0, 1]");
  }
  RadiusResult res;
  res.mode = std::string(to_string(mode));
  res.method = RadiusMethod::closed_form;

  // b < 0 and c > 0, so the smaller root is c/q with no cancellation.
  const double disc = phi.b * phi.b - 4.0 * phi.a * phi.c;
  const double q = 0.5 * (-phi.b + std::sqrt(std::max(disc, 0.0)));
  res.value = phi.c / q;

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 0.0) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) > 0.0 ? lo : hi) = mid;
  }
  res.bisection_value = lo;
  res.residual = std::abs(phi(res.value));

  if (std::abs(res.value - lo) > 1e-12) res.flags.emplace_back("bisection_disagrees");
  if (res.residual > 1e-12) res.flags.emplace_back("residual_above_tolerance");
  for (int i = 0; i < 1000; ++i) {
    if (!(phi(res.value * i / 1000.0) > 0.0)) {
      res.flags.emplace_back("phi_not_positive_below_root");
      break;
    }
  }
  return res;
}

RadiusResult radius_convexity(const ClassParams& params, ConvexityMode mode) {
  RadiusResult res;
  res.mode = std::string(to_string(mode));
  const double k = params.k;
  if (mode == ConvexityMode::paper_literal) {
    const double raw = 1.0 / (k - 1.0);
    if (!(raw > 0.0 && raw <= 1.0)) {
      res.method = RadiusMethod::formula_degenerate;
      res.value = std::numeric_limits<double>::quiet_NaN();
      res.flags.emplace_back(k == 1.0 ? "division_by_zero" : "non_positive_radius");
      if (std::isfinite(raw)) res.formula_value = raw;
      return res;
    }
    res.method = RadiusMethod::closed_form;
    res.value = raw;
    return res;
  }
  const double ck = (mode == ConvexityMode::derived_paper ? 1.0 : 2.0) * k;
  res.method = RadiusMethod::closed_form;
  res.value = ck <= 1.0 ? 1.0 : std::min(1.0, 1.0 / (ck - 1.0));
  res.residual = 1.0 - ck * res.value / (1.0 + res.value);
  if (res.value == 1.0) res.flags.emplace_back("whole_disk");
  return res;
}

cplx t_operator(const MemberSeries& m, const ConcavitySetting& setting, cplx z) {
  if (z == cplx{1.0}) raise(Errc::invalid_argument, "T_f is singular at z = 1");
  const double a = setting.a_co;
  const cplx p = m.eval_pre(z);
  return (2.0 / (a - 1.0)) * ((a + 1.0) / 2.0 * (1.0 + z) / (1.0 - z) - 1.0 - z * p);
}

ConcavityScanReport concavity_soundness_scan(std::span<const MemberSeries> members, const ConcavitySetting& setting,
                                             double radius, const GridSpec& grid) {
  if (!(radius > 1e-3 && radius < 1.0)) raise(Errc::param_out_of_range, "scan radius must lie in (1e-3, 1)");
  const double reach = radius - 1e-3;
  const double scale = reach / grid.r_max();
  ConcavityScanReport rep;
  rep.min_re = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (double r : grid.radii) {
      for (double t : grid.angles) {
        const cplx z = std::polar(std::min(r * scale, reach), t);
        const double v = t_operator(members[i], setting, z).real();
        ++rep.samples;
        if (v < rep.min_re) {
          rep.min_re = v;
          rep.witness = z;
          rep.member_index = i;
        }
      }
    }
  }
  return rep;
}

CircleMin min_re_t_on_circle(const MemberSeries& m, const ConcavitySetting& setting, double r,
                             std::size_t n_angles) {
  auto g = [&](double t) { return t_operator(m, setting, std::polar(r, t)).real(); };
  CircleMin best{std::numeric_limits<double>::infinity(), {}};
  double best_t = 0.0;
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(n_angles);
  for (std::size_t j = 0; j < n_angles; ++j) {
    const double t = dt * static_cast<double>(j);
    const double v = g(t);
    if (v < best.value) {
      best.value = v;
      best_t = t;
    }
  }
  constexpr double inv_phi = 0.6180339887498949;
  double a = best_t - dt;
  double b = best_t + dt;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  while (b - a > 1e-12) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
  }
  if (std::min(f1, f2) < best.value) {
    best.value = std::min(f1, f2);
    best_t = f1 < f2 ? x1 : x2;
  }
  best.z = std::polar(r, best_t);
  return best;
}

PersonalRadius personal_radius(const MemberSeries& m, const ConcavitySetting& setting, double r_cap, double tol) {
  PersonalRadius out;
  const double cap = std::min(r_cap, m.eval_radius() >= 1.0 ? 0.999 : m.eval_radius());
  CircleMin at_cap = min_re_t_on_circle(m, setting, cap);
  ++out.circles;
  if (at_cap.value > 0.0) {
    out.value = cap;
    out.reached_cap = true;
    out.witness = at_cap.z;
    return out;
  }
  // Re T_f is harmonic with T_f(0) = 1, so its minimum over |z| <= r falls with r.
  double lo = 0.0;
  double hi = cap;
  out.witness = at_cap.z;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const CircleMin c = min_re_t_on_circle(m, setting, mid);
    ++out.circles;
    if (c.value > 0.0) {
      lo = mid;
    } else {
      hi = mid;
      out.witness = c.z;
    }
  }
  out.value = hi;
  return out;
}

namespace {

void consider(ProbeResult& best, const MemberSeries& m, const ConcavitySetting& setting, const SearchOpts& search) {
  if (best.budget_exhausted) return;
  if (best.circles >= search.budget) {
    best.budget_exhausted = true;
    return;
  }
  ++best.candidates;
  // Skip members that stay concave on the circle of the best radius found so far.
  if (best.candidates > 1) {
    const double r_cut = std::min(best.empirical_radius, m.eval_radius() >= 1.0 ? 0.999 : m.eval_radius());
    const CircleMin c = min_re_t_on_circle(m, setting, r_cut);
    ++best.circles;
    if (c.value > 0.0) return;
  }
  const std::size_t left = search.budget - best.circles;
  const PersonalRadius pr = personal_radius(m, setting, best.empirical_radius, search.tol);
  best.circles += pr.circles;
  if (pr.circles > left) best.budget_exhausted = true;
  if (!pr.reached_cap && pr.value < best.empirical_radius) {
    best.empirical_radius = pr.value;
    best.witness_spec = m.provenance();
    best.witness_z = pr.witness;
  }
}

}  // namespace

ProbeResult probe_members(std::span<const MemberSeries> members, const ConcavitySetting& setting,
                          const SearchOpts& search) {
  ProbeResult best;
  for (const auto& m : members) consider(best, m, setting, search);
  return best;
}

ProbeResult sharpness_probe(const ClassParams& params, const ConcavitySetting& setting, const SearchOpts& search) {
  ProbeResult best;
  consider(best, generate_member(params, SchwarzSpec::zero(), search.order), setting, search);
  for (std::size_t j = 0; j < search.rotations; ++j) {
    const cplx c = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(search.rotations));
    consider(best, generate_member(params, SchwarzSpec::unit_constant(c), search.order), setting, search);
  }
  for (std::size_t i = 0; i < search.samples && !best.budget_exhausted; ++i) {
    const SampleClass cls = i % 2 == 0 ? SampleClass::general : SampleClass::sp0;
    consider(best, generate_member(params, sample_spec(search.seed, i, cls), search.order), setting, search);
  }
  return best;
}

}  // namespace rkit
