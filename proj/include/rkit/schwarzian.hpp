#pragma once

// Pre-Schwarzian and Schwarzian operators, their hyperbolically weighted
// sup-norms over the disk, and the univalence / quasiconformal certificates
// that follow from the Schwarzian norm.

#include <cstddef>
#include <optional>

#include "rkit/robertson.hpp"
#include "rkit/series.hpp"

namespace rkit {

/// P_f = f''/f'.
TruncatedSeries pre_schwarzian(const MemberSeries& m);
/// S_f = P_f' - P_f^2/2.
TruncatedSeries schwarzian(const MemberSeries& m);
/// S_f = 2 G1 (2 phi' + (2 - 2 G1) phi^2) / (2 (1 - z phi)^2), built from the Schwarz data alone.
TruncatedSeries schwarzian_via_phi(const ClassParams& params, const SchwarzSpec& spec, std::size_t order);

/// Pointwise P_f and S_f with closed-form dispatch; series-only members use Horner.
class DerivativeEvaluator {
 public:
  explicit DerivativeEvaluator(const MemberSeries& m);

  [[nodiscard]] cplx pre(cplx z) const;
  [[nodiscard]] cplx schwarzian(cplx z) const;
  /// (1 - |z|^2)^weight |Q(z)| with Q = P_f (weight 1) or S_f (weight 2).
  [[nodiscard]] double weighted(cplx z, int weight_exponent) const;

  [[nodiscard]] const TruncatedSeries& pre_series() const noexcept { return pre_; }
  [[nodiscard]] const TruncatedSeries& schwarzian_series() const noexcept { return schw_; }
  [[nodiscard]] bool has_closed_form() const noexcept { return closed_.has_value(); }

 private:
  TruncatedSeries pre_;
  TruncatedSeries schw_;
  std::optional<ClosedForm> closed_;
};

struct ScanOpts {
  std::size_t radial = 128;
  std::size_t angular = 256;
  /// Defaults to 0.9995 for closed-form members and 0.95 for series-only ones.
  std::optional<double> r_max;
  double refine_tol = 1e-10;
  /// Largest admissible weighted series tail (1 - r_max^2)^w |tail| for series-only members.
  double tail_tol = 1e-7;
  /// Number of coarse-grid cells handed to local refinement.
  std::size_t candidates = 4;
};

inline constexpr double closed_form_scan_radius = 0.9995;
inline constexpr double series_scan_radius = 0.95;

struct NormEstimate {
  double value = 0.0;
  cplx argmax{};
  int weight_exponent = 1;
  double r_max = 0.0;
  /// Weighted truncation error at r_max; zero for closed-form members.
  double tail_error = 0.0;
  /// Largest jump between neighbouring coarse samples; value + scan_gap is the heuristic upper estimate.
  double scan_gap = 0.0;
  std::size_t refinement_steps = 0;
};

/// sup over |z| <= r_max of (1 - |z|^2)^w |Q(z)|: coarse polar scan plus a dense pass on
/// |z| = r_max, then alternating golden-section refinement in r and theta around the best cells.
/// Throws tail_tolerance_unmet when a series-only member cannot be trusted at r_max.
NormEstimate norm_estimate(const MemberSeries& m, int weight_exponent, const ScanOpts& opts = {});
NormEstimate norm_estimate(const DerivativeEvaluator& eval, int weight_exponent, const ScanOpts& opts = {});

struct NehariCertificate {
  NormEstimate norm;
  double necessary_margin = 0.0;   ///< 6 - ||S_f||
  double sufficient_margin = 0.0;  ///< 2 - ||S_f||; positive certifies univalence
  std::optional<double> qc_k;      ///< ||S_f||/2 when it does not exceed 1
};

NehariCertificate nehari_certificates(const MemberSeries& m, const ScanOpts& scan = {});

}  // namespace rkit
