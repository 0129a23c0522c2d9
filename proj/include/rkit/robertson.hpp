#pragma once

// Class parameters of SP_alpha(beta), Schwarz-function data, member generation
// through the subordination representation, and pointwise characterization checks.

#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "rkit/grid.hpp"
#include "rkit/series.hpp"

namespace rkit {

struct ClassParams {
  double alpha = 0.0;
  double beta = 0.0;
  double k = 1.0;       ///< (1 - beta) cos(alpha)
  cplx a_sub{1.0};      ///< e^{-i alpha}(e^{-i alpha} - 2 beta cos(alpha))
  cplx g1{1.0};         ///< (a_sub + 1)/2, equal to k e^{-i alpha}
};

/// Throws param_out_of_range unless -pi/2 < alpha < pi/2 and 0 <= beta < 1.
ClassParams make_params(double alpha, double beta);

enum class SchwarzKind { polynomial, blaschke_product, unit_constant_times_z };

/// An analytic self-map omega of the disk with omega(0) = 0, and phi = omega/z.
///
/// polynomial:            omega(z) = sum_{n>=1} c_n z^n
/// blaschke_product:      omega(z) = rotation * prod_j (z - a_j)/(1 - conj(a_j) z),
///                        at least one a_j = 0
/// unit_constant_times_z: omega(z) = rotation * z,  |rotation| = 1
class SchwarzSpec {
 public:
  /// Order reported for omega identically zero.
  static constexpr std::size_t identically_zero = std::numeric_limits<std::size_t>::max();

  /// coeffs[n] multiplies z^n; coeffs[0] must vanish.
  static SchwarzSpec polynomial(std::vector<cplx> coeffs);
  static SchwarzSpec blaschke(std::vector<cplx> zeros, cplx rotation = 1.0);
  static SchwarzSpec unit_constant(cplx rotation);
  /// omega = 0; generates f(z) = z.
  static SchwarzSpec zero();

  [[nodiscard]] SchwarzKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const std::vector<cplx>& zeros() const noexcept { return zeros_; }
  [[nodiscard]] cplx rotation() const noexcept { return rotation_; }
  /// Order of the zero of omega at 0 (>= 1), or identically_zero.
  [[nodiscard]] std::size_t vanishing_order() const noexcept { return vanishing_order_; }

  [[nodiscard]] cplx omega(cplx z) const;
  [[nodiscard]] cplx phi(cplx z) const;
  [[nodiscard]] TruncatedSeries omega_series(std::size_t order) const;
  [[nodiscard]] TruncatedSeries phi_series(std::size_t order) const;

  friend bool operator==(const SchwarzSpec&, const SchwarzSpec&) = default;

 private:
  SchwarzSpec() = default;

  SchwarzKind kind_ = SchwarzKind::polynomial;
  std::vector<cplx> coeffs_;
  std::vector<cplx> zeros_;
  cplx rotation_{1.0};
  std::size_t vanishing_order_ = identically_zero;
};

struct SchwarzReport {
  double grid_max = 0.0;
  std::size_t vanishing_order = 0;
};

/// 256 x 256 Chebyshev grid reaching r = 0.999.
GridSpec default_schwarz_grid();
/// Radii Chebyshev-spaced in (0, 0.9], 64 angles.
GridSpec default_validation_grid();

inline constexpr double schwarz_safety_margin = 1e-9;

/// Throws not_a_schwarz_function when the grid maximum of |omega| reaches 1 - 1e-9.
SchwarzReport validate_schwarz(const SchwarzSpec& spec, const GridSpec& grid = default_schwarz_grid());

enum class ExtremalVariant { plane, disk_symmetric };

struct ExtremalTag {
  ExtremalVariant variant = ExtremalVariant::plane;
  cplx lambda{1.0};
  friend bool operator==(const ExtremalTag&, const ExtremalTag&) = default;
};

using Provenance = std::variant<SchwarzSpec, ExtremalTag>;

/// f'(z) = (1 - lambda z^power)^(-exponent), power in {1, 2}.
struct ClosedForm {
  int power = 1;
  cplx lambda{1.0};
  cplx exponent{1.0};

  [[nodiscard]] cplx f_prime(cplx z) const;
  [[nodiscard]] cplx pre(cplx z) const;
  [[nodiscard]] cplx pre_deriv(cplx z) const;
  [[nodiscard]] cplx schwarzian(cplx z) const;
  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

/// A normalized class member f(z) = z + a_2 z^2 + ... together with f'.
class MemberSeries {
 public:
  /// Tail tolerance used to derive the evaluable radius of the pre-Schwarzian series.
  static constexpr double eval_tail_tol = 1e-10;

  MemberSeries(TruncatedSeries f, TruncatedSeries f_prime, ClassParams params, Provenance provenance,
               std::optional<ClosedForm> closed_form = std::nullopt);

  [[nodiscard]] const TruncatedSeries& f() const noexcept { return f_; }
  [[nodiscard]] const TruncatedSeries& f_prime() const noexcept { return f_prime_; }
  /// f''/f' as a series.
  [[nodiscard]] const TruncatedSeries& pre() const noexcept { return pre_; }
  [[nodiscard]] const ClassParams& params() const noexcept { return params_; }
  [[nodiscard]] const Provenance& provenance() const noexcept { return provenance_; }
  [[nodiscard]] const std::optional<ClosedForm>& closed_form() const noexcept { return closed_form_; }
  [[nodiscard]] std::size_t order() const noexcept { return f_prime_.order(); }

  [[nodiscard]] cplx f_second_at_zero() const noexcept { return f_prime_[1]; }
  [[nodiscard]] bool in_sp0() const noexcept;
  /// Largest radius at which series evaluation of P_f is trusted (closed forms: any r < 1).
  [[nodiscard]] double eval_radius() const noexcept { return eval_radius_; }

  /// P_f(z); throws radius_exceeded beyond eval_radius() for series-only members.
  [[nodiscard]] cplx eval_pre(cplx z) const;
  [[nodiscard]] cplx eval_f_prime(cplx z) const;
  [[nodiscard]] cplx eval_f(cplx z) const;

 private:
  TruncatedSeries f_;
  TruncatedSeries f_prime_;
  TruncatedSeries pre_;
  ClassParams params_;
  Provenance provenance_;
  std::optional<ClosedForm> closed_form_;
  double eval_radius_ = 0.0;
  double f_radius_ = 0.0;
  double f_prime_radius_ = 0.0;
};

/// Largest r <= r_cap with s_tail_bound(a, r) <= tol (by bisection).
double series_trusted_radius(const TruncatedSeries& a, double tol, double r_cap = 0.999);

/// f''/f' = 2 G1 phi/(1 - z phi); f' = exp of its antiderivative; f = integral of f'.
MemberSeries generate_member(const ClassParams& params, const SchwarzSpec& spec, std::size_t order);

/// plane: f' = (1 - lambda z)^{-k}; disk_symmetric: f' = (1 - lambda z^2)^{-k}.
MemberSeries extremal_member(const ClassParams& params, ExtremalVariant variant, cplx lambda, std::size_t order);

struct MarginReport {
  double min_margin = 0.0;
  cplx witness{};
  std::size_t samples = 0;
};

inline constexpr double membership_tol = 1e-9;

/// min over the grid of Re(e^{i alpha}(1 + z P_f)) - beta cos(alpha).
MarginReport subordination_membership_check(const MemberSeries& m, const GridSpec& grid = default_validation_grid());

/// Re(1 + conj(G1) z P) - [1 - k^2 + (1 - |z|^2)/4 |z P|^2].
double check_ii(const MemberSeries& m, cplx z);

enum class CheckMode { paper, corrected };

/// paper:     k  - |(1 - |z|^2) P - 2 k conj(z)|
/// corrected: 2k - |(1 - |z|^2) P - 2 G1 conj(z)|
double check_iii(const MemberSeries& m, cplx z, CheckMode mode);

enum class ClassicalConvexity { real_part_form, disk_form };

/// real_part_form: Re(1 + zP) - (1 - |z|^2)|P|^2/4;  disk_form: 2 - |(1 - |z|^2) P - 2 conj(z)|.
double classical_convexity_check(const MemberSeries& m, cplx z, ClassicalConvexity which);

}  // namespace rkit
