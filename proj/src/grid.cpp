#include "rkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rkit/error.hpp"

namespace rkit {

std::vector<double> chebyshev_radii(std::size_t n, double r_max) {
  if (n == 0) raise(Errc::invalid_argument, "grid needs at least one radius");
  std::vector<double> r(n);
  for (std::size_t i = 1; i <= n; ++i) {
    r[i - 1] = r_max * std::sin(std::numbers::pi * static_cast<double>(i) / (2.0 * static_cast<double>(n)));
  }
  r.back() = r_max;
  return r;
}

std::vector<double> uniform_angles(std::size_t n) {
  if (n == 0) raise(Errc::invalid_argument, "grid needs at least one angle");
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  return t;
}

GridSpec GridSpec::chebyshev(std::size_t n_radii, std::size_t n_angles, double r_max) {
  // r_max = 1 is allowed for template grids that callers rescale before evaluating.
  if (!(r_max > 0.0 && r_max <= 1.0)) raise(Errc::invalid_argument, "grid r_max must lie in (0, 1]");
  return {chebyshev_radii(n_radii, r_max), uniform_angles(n_angles)};
}

GridSpec GridSpec::uniform(std::size_t n_radii, std::size_t n_angles, double r_max) {
  if (!(r_max > 0.0 && r_max <= 1.0)) raise(Errc::invalid_argument, "grid r_max must lie in (0, 1]");
  if (n_radii == 0) raise(Errc::invalid_argument, "grid needs at least one radius");
  std::vector<double> r(n_radii);
  for (std::size_t i = 0; i < n_radii; ++i) r[i] = r_max * static_cast<double>(i + 1) / static_cast<double>(n_radii);
  return {std::move(r), uniform_angles(n_angles)};
}

std::vector<cplx> GridSpec::points() const {
  std::vector<cplx> pts;
  pts.reserve(size());
  for (double r : radii) {
    for (double t : angles) pts.push_back(std::polar(r, t));
  }
  return pts;
}

double GridSpec::r_max() const noexcept {
  return radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
}

}  // namespace rkit
