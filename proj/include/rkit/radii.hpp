#pragma once

// Radius of concavity and radius of convexity for SP_alpha(beta), the
// concavity operator T_f, and a seeded numerical search for the class radius.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rkit/robertson.hpp"

namespace rkit {

/// The Co(A) parameter, 1 < a_co <= 2. Unrelated to ClassParams::a_sub.
struct ConcavitySetting {
  double a_co = 2.0;
};

/// Throws param_out_of_range unless 1 < a_co <= 2.
ConcavitySetting make_concavity_setting(double a_co);

enum class PhiMode { paper, corrected };

std::string_view to_string(PhiMode mode) noexcept;

struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  [[nodiscard]] double operator()(double r) const noexcept { return (a * r + b) * r + c; }
};

/// paper:     (A + 1 - 2k) r^2 - 2(A + 1 + k) r + (A - 1)
/// corrected: (A + 3 - 4k) r^2 - 2(A + 1 + 2k) r + (A - 1)
Quadratic phi_quadratic(const ClassParams& params, const ConcavitySetting& setting, PhiMode mode);

enum class RadiusMethod { closed_form, bisection, formula_degenerate };

std::string_view to_string(RadiusMethod method) noexcept;

struct RadiusResult {
  /// NaN when method == formula_degenerate.
  double value = 0.0;
  RadiusMethod method = RadiusMethod::closed_form;
  /// |Phi(value)| for roots; the convexity margin 1 - c k r/(1 + r) at r = value for derived bounds.
  double residual = 0.0;
  std::string mode;
  std::vector<std::string> flags;
  /// Root found independently by bisection (concavity only).
  std::optional<double> bisection_value;
  /// Raw value of the printed formula when it is degenerate.
  std::optional<double> formula_value;
};

/// Smaller root of the Phi quadratic in (0, 1), cross-checked by bisection.
/// Throws root_not_bracketed if Phi(0) <= 0 or Phi(1) >= 0.
RadiusResult radius_concavity(const ClassParams& params, const ConcavitySetting& setting, PhiMode mode);

enum class ConvexityMode {
  paper_literal,      ///< 1/(k - 1) as printed
  derived_paper,      ///< largest r with 1 - k r/(1 + r) > 0
  derived_corrected,  ///< largest r with 1 - 2k r/(1 + r) > 0
};

std::string_view to_string(ConvexityMode mode) noexcept;

RadiusResult radius_convexity(const ClassParams& params, ConvexityMode mode);

/// (2/(A - 1)) ((A + 1)/2 (1 + z)/(1 - z) - 1 - z P_f(z)).
cplx t_operator(const MemberSeries& m, const ConcavitySetting& setting, cplx z);

struct ConcavityScanReport {
  double min_re = 0.0;
  cplx witness{};
  std::size_t member_index = 0;
  std::size_t samples = 0;
};

/// min Re T_f over members and the polar grid scaled onto |z| <= R - 1e-3.
ConcavityScanReport concavity_soundness_scan(std::span<const MemberSeries> members, const ConcavitySetting& setting,
                                             double radius, const GridSpec& grid = GridSpec::chebyshev(32, 128, 1.0));

struct CircleMin {
  double value = 0.0;
  cplx z{};
};

/// min over theta of Re T_f(r e^{i theta}): sampled at n_angles points, then golden-section refined.
CircleMin min_re_t_on_circle(const MemberSeries& m, const ConcavitySetting& setting, double r,
                             std::size_t n_angles = 512);

struct PersonalRadius {
  /// Smallest r with min Re T_f <= 0 on |z| = r, or r_cap when none was found below it.
  double value = 0.0;
  bool reached_cap = false;
  cplx witness{};
  std::size_t circles = 0;
};

/// Bisection on the monotone function r -> min_{|z|=r} Re T_f(z).
PersonalRadius personal_radius(const MemberSeries& m, const ConcavitySetting& setting, double r_cap,
                               double tol = 1e-10);

struct SearchOpts {
  std::uint64_t seed = 0;
  /// Maximal number of circle minimizations.
  std::size_t budget = 2000;
  /// Seeded Schwarz specs tried after the fixed candidates.
  std::size_t samples = 256;
  std::size_t order = 128;
  /// Unit rotations e^{2 pi i j/n} used for omega = c z candidates.
  std::size_t rotations = 16;
  double tol = 1e-10;
};

struct ProbeResult {
  double empirical_radius = 1.0;
  Provenance witness_spec = SchwarzSpec::zero();
  cplx witness_z{};
  std::size_t candidates = 0;
  std::size_t circles = 0;
  bool budget_exhausted = false;
};

/// Searches f = z, omega = c z for unit c, and seeded specs for the smallest
/// radius at which some member reaches Re T_f <= 0. On budget exhaustion the
/// best result so far is returned with budget_exhausted set.
ProbeResult sharpness_probe(const ClassParams& params, const ConcavitySetting& setting, const SearchOpts& search);

/// Same search restricted to the given candidates.
ProbeResult probe_members(std::span<const MemberSeries> members, const ConcavitySetting& setting,
                          const SearchOpts& search);

}  // namespace rkit
