#include "rkit/sampling.hpp"

#include <cmath>
#include <numbers>

namespace rkit {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::between(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
}

namespace {

cplx uniform_in_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
}

cplx unit(Rng& rng) { return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()); }

}  // namespace

SchwarzSpec sample_spec(std::uint64_t seed, std::size_t index, SampleClass cls, const SamplerOpts& opts) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 seeder(seq);
  Rng rng(seeder());
  const std::size_t lead = cls == SampleClass::sp0 ? 2 : 1;
  if (rng.uniform() < opts.blaschke_fraction) {
    std::vector<cplx> zeros(lead, cplx{});
    const std::size_t n = rng.between(1, opts.max_zeros);
    for (std::size_t j = 0; j < n; ++j) zeros.push_back(uniform_in_disk(rng, opts.max_zero_modulus));
    return SchwarzSpec::blaschke(std::move(zeros), unit(rng));
  }
  const std::size_t degree = rng.between(1, opts.max_degree);
  std::vector<cplx> coeffs(lead + degree, cplx{});
  double total = 0.0;
  for (std::size_t n = lead; n < coeffs.size(); ++n) {
    coeffs[n] = uniform_in_disk(rng, 1.0);
    total += std::abs(coeffs[n]);
  }
  const double budget = opts.coeff_budget * (0.2 + 0.8 * rng.uniform());
  if (total > 0.0) {
    for (auto& c : coeffs) c *= budget / total;
  }
  return SchwarzSpec::polynomial(std::move(coeffs));
}

std::vector<SchwarzSpec> sample_specs(std::uint64_t seed, std::size_t count, SampleClass cls,
                                      const SamplerOpts& opts) {
  std::vector<SchwarzSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_spec(seed, i, cls, opts));
  return out;
}

}  // namespace rkit
