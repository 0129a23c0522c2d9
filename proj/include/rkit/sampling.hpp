#pragma once

// Seeded Schwarz-function generators. A (seed, index) pair fully determines
// the Schwarz spec, independent of how many other specs are drawn or in what order.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "rkit/robertson.hpp"

namespace rkit {

enum class SampleClass {
  general,  ///< omega'(0) arbitrary
  sp0,      ///< omega vanishes to order >= 2, so f''(0) = 0
};

struct SamplerOpts {
  double blaschke_fraction = 2.0 / 3.0;
  double max_zero_modulus = 0.8;
  std::size_t max_zeros = 4;
  std::size_t max_degree = 6;
  double coeff_budget = 0.95;
};

/// mt19937_64 with uniforms taken from raw bits, so streams match across standard libraries
/// (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Blaschke products with 1..max_zeros zeros uniform in |a| <= max_zero_modulus and an
/// extra zero at 0 (two for sp0); polynomials with sum |c_n| <= coeff_budget.
SchwarzSpec sample_spec(std::uint64_t seed, std::size_t index, SampleClass cls, const SamplerOpts& opts = {});

std::vector<SchwarzSpec> sample_specs(std::uint64_t seed, std::size_t count, SampleClass cls,
                                      const SamplerOpts& opts = {});

}  // namespace rkit
