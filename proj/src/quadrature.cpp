#include "rkit/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rkit/error.hpp"

namespace rkit {

namespace {

struct Rule {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

// Roots of P_16 by Newton iteration from the Chebyshev guesses.
Rule make_rule() {
  Rule rule;
  constexpr int n = 16;
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

const Rule& gl16() {
  static const Rule rule = make_rule();
  return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = gl16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

void refine(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
            const QuadOpts& opts, QuadResult& out) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid);
  const double right = panel(f, mid, b);
  const double err = std::abs(left + right - whole);
  if (err <= tol) {
    out.value += left + right;
    out.error_estimate += err;
    out.panels += 2;
    return;
  }
  if (depth >= opts.max_depth) raise(Errc::quadrature_not_converged, "Gauss-Legendre panel refinement hit max depth");
  refine(f, a, mid, left, 0.5 * tol, depth + 1, opts, out);
  refine(f, mid, b, right, 0.5 * tol, depth + 1, opts, out);
}

}  // namespace

QuadResult integrate_gl16(const std::function<double(double)>& f, double a, double b, const QuadOpts& opts) {
  QuadResult out;
  if (a == b) return out;
  refine(f, a, b, panel(f, a, b), opts.abs_tol, 0, opts, out);
  return out;
}

}  // namespace rkit
