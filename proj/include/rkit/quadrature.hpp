#pragma once

#include <cstddef>
#include <functional>

namespace rkit {

struct QuadOpts {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Adaptive panel bisection with a 16-point Gauss-Legendre rule on each panel.
/// Throws quadrature_not_converged when a panel still misses its share of the
/// tolerance at max_depth.
QuadResult integrate_gl16(const std::function<double(double)>& f, double a, double b, const QuadOpts& opts = {});

}  // namespace rkit
