#pragma once

#include <cstddef>
#include <vector>

#include "rkit/series.hpp"

namespace rkit {

/// Polar sample set in the disk: every radius paired with every angle.
struct GridSpec {
  std::vector<double> radii;
  std::vector<double> angles;

  /// Radii r_max*sin(pi*i/(2n)), i = 1..n: clustered toward r_max, never 0. Requires 0 < r_max <= 1.
  static GridSpec chebyshev(std::size_t n_radii, std::size_t n_angles, double r_max);
  static GridSpec uniform(std::size_t n_radii, std::size_t n_angles, double r_max);

  [[nodiscard]] std::size_t size() const noexcept { return radii.size() * angles.size(); }
  [[nodiscard]] std::vector<cplx> points() const;
  [[nodiscard]] double r_max() const noexcept;
};

std::vector<double> chebyshev_radii(std::size_t n, double r_max);
std::vector<double> uniform_angles(std::size_t n);

}  // namespace rkit
