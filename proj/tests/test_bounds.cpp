#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rkit/bounds.hpp"
#include "rkit/error.hpp"
#include "rkit/sampling.hpp"
#include "rkit/schwarzian.hpp"

using namespace rkit;

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rkit::Error thrown";
  return Errc::invalid_argument;
}

}  // namespace

TEST(NormBounds, Values) {
  EXPECT_EQ(pre_norm_bound(make_params(0, 0)), 2.0);
  EXPECT_EQ(schwarzian_norm_bound(make_params(0, 0)), 2.0);
  EXPECT_NEAR(pre_norm_bound(make_params(0, 0.5)), 1.0, 1e-15);
  EXPECT_NEAR(schwarzian_norm_bound(make_params(0, 0.5)), 1.5, 1e-15);
  const double k = std::sqrt(0.5);
  EXPECT_NEAR(schwarzian_norm_bound(make_params(pi / 4, 0)), 2 * k * (2 - k), 1e-15);
}

TEST(PointwiseBound, Values) {
  const auto p = make_params(0, 0);
  EXPECT_NEAR(schwarzian_pointwise_bound(p, 0.0, 0.0), 4.0, 1e-15);
  EXPECT_NEAR(schwarzian_pointwise_bound(p, 0.0, 1.0 - 1e-12), 6.0, 1e-11);
  EXPECT_NEAR(schwarzian_pointwise_bound(p, 0.5, 0.5), 20.0 / 3.0, 1e-14);
}

TEST(PointwiseBound, NonDecreasingInRadius) {
  const auto p = make_params(0.4, 0.2);
  for (double xi : {0.0, 0.3, 0.9}) {
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double v = schwarzian_pointwise_bound(p, xi, i / 101.0);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(LemmaA, Values) {
  EXPECT_NEAR(lemma_a_bound(0.5, 0.5, LemmaAVariant::literal), 16.0 / 3.0, 1e-14);
  EXPECT_NEAR(lemma_a_bound(0.5, 0.5, LemmaAVariant::hyperbolic), 16.0 / 9.0, 1e-14);
  EXPECT_NEAR(lemma_a_bound(0.5, 0.5), 16.0 / 9.0, 1e-14);
  EXPECT_EQ(lemma_a_bound(0.0, 0.0), 0.0);
}

TEST(LemmaA, HoldsOnSeededSchwarzFunctions) {
  oracle::Random rng(401);
  double tightest = 1e300;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto spec = sample_spec(401, i, SampleClass::general);
    const double xi = std::abs(spec.phi(0.0));
    for (int j = 0; j < 1000; ++j) {
      const cplx z = rng.in_disk(0.99);
      const double ph = std::norm(spec.phi(z));
      const double lhs = ph / (1.0 - ph);
      const double hyp = lemma_a_bound(xi, std::abs(z), LemmaAVariant::hyperbolic);
      EXPECT_LE(lhs, hyp * (1 + 1e-9) + 1e-12) << i << " " << z;
      EXPECT_LE(hyp, lemma_a_bound(xi, std::abs(z), LemmaAVariant::literal) * (1 + 1e-15));
      tightest = std::min(tightest, hyp - lhs);
    }
  }
  EXPECT_GE(tightest, -1e-9);
}

TEST(LemmaA, AutomorphismAttainsHyperbolicForm) {
  // phi(z) = (z + c)/(1 + c z) has |phi(r)| = (c + r)/(1 + c r).
  const double c = 0.4;
  for (double r : {0.1, 0.5, 0.9}) {
    const double ph = (c + r) / (1 + c * r);
    EXPECT_NEAR(ph * ph / (1 - ph * ph), lemma_a_bound(c, r), 1e-12);
  }
}

TEST(Xi, Examples) {
  const auto p = make_params(0.3, 0.1);
  EXPECT_NEAR(xi_of_member(generate_member(p, SchwarzSpec::polynomial({0.0, 1.0}), 32)), 1.0, 1e-12);
  EXPECT_EQ(xi_of_member(generate_member(p, SchwarzSpec::zero(), 32)), 0.0);
  EXPECT_NEAR(xi_of_member(generate_member(p, SchwarzSpec::polynomial({0.0, cplx(0.3, 0.4)}), 32)), 0.5, 1e-12);
  EXPECT_EQ(xi_of_member(generate_member(p, SchwarzSpec::polynomial({0.0, 0.0, 0.9}), 32)), 0.0);
}

TEST(Envelopes, GrowthAgainstClosedForms) {
  const auto one = make_params(0, 0);
  const auto half = make_params(0, 0.5);
  for (double r : {0.0, 0.1, 0.4, 0.7, 0.9, 0.99}) {
    auto g = growth_envelope(one, r);
    EXPECT_NEAR(g.lower, std::atan(r), 1e-10);
    EXPECT_NEAR(g.upper, std::atanh(r), 1e-10);
    g = growth_envelope(half, r);
    EXPECT_NEAR(g.lower, std::asinh(r), 1e-10);
    EXPECT_NEAR(g.upper, std::asin(r), 1e-10);
  }
}

TEST(Envelopes, DistortionValues) {
  const auto e = distortion_envelope(make_params(0, 0.5), 0.6);
  EXPECT_NEAR(e.lower, 1 / std::sqrt(1.36), 1e-15);
  EXPECT_NEAR(e.upper, 1 / std::sqrt(0.64), 1e-15);
  EXPECT_EQ(e.kind, EnvelopeKind::distortion);
}

TEST(Envelopes, Monotone) {
  const auto p = make_params(0.5, 0.3);
  Envelope pd = distortion_envelope(p, 0.0), pg = growth_envelope(p, 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double r = 0.99 * i / 100.0;
    const auto d = distortion_envelope(p, r);
    const auto g = growth_envelope(p, r);
    EXPECT_LT(d.lower, pd.lower);
    EXPECT_GT(d.upper, pd.upper);
    EXPECT_GT(g.lower, pg.lower);
    EXPECT_GT(g.upper, pg.upper);
    EXPECT_LE(g.lower, g.upper);
    pd = d;
    pg = g;
  }
}

TEST(Envelopes, DiskSymmetricExtremalTouchesBothSides) {
  const auto m = extremal_member(make_params(0, 0.25), ExtremalVariant::disk_symmetric, 1.0, 512);
  const auto radii = chebyshev_radii(16, 0.9);
  const auto rep = envelope_check(m, radii, uniform_angles(64));
  EXPECT_GE(rep.distortion_min_margin, -1e-12);
  EXPECT_GE(rep.growth_min_margin, -1e-10);
  EXPECT_LT(rep.distortion_min_margin, 1e-12);
  EXPECT_EQ(rep.samples, 16u * 64u);
}

TEST(Envelopes, RequiresSp0) {
  const auto m = generate_member(make_params(0, 0), SchwarzSpec::polynomial({0.0, 0.5}), 32);
  EXPECT_EQ(code_of([&] { envelope_check(m, {0.5}, {0.0}); }), Errc::invalid_argument);
}

TEST(Envelopes, HoldForSp0MembersAtAlphaZero) {
  const auto radii = chebyshev_radii(16, 0.9);
  const auto angles = uniform_angles(64);
  for (double beta : {0.0, 0.4}) {
    const auto p = make_params(0, beta);
    for (std::size_t i = 0; i < 25; ++i) {
      const auto m = generate_member(p, sample_spec(402, i, SampleClass::sp0), 256);
      const auto rep = envelope_check(m, radii, angles);
      EXPECT_GE(rep.distortion_min_margin, -1e-9) << i;
      EXPECT_GE(rep.growth_min_margin, -1e-9) << i;
    }
  }
}

TEST(Envelopes, ProfileRows) {
  const auto m = extremal_member(make_params(0, 0), ExtremalVariant::disk_symmetric, 1.0, 512);
  const auto rows = envelope_profile(m, EnvelopeKind::growth, {0.0, 0.5}, 64);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].upper, 0.0);
  EXPECT_NEAR(rows[1].sampled_max, std::atanh(0.5), 1e-12);
  EXPECT_NEAR(rows[1].sampled_min, std::atan(0.5), 1e-12);
}

TEST(PointwiseSchwarzian, HoldsOnSeededMembers) {
  const auto grid = GridSpec::chebyshev(25, 40, 0.9);
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{pi / 4, 0.25}, std::pair{-1.0, 0.5}}) {
    const auto p = make_params(a, b);
    for (std::size_t i = 0; i < 25; ++i) {
      const auto m = generate_member(p, sample_spec(403, i, SampleClass::general), 256);
      const double xi = xi_of_member(m);
      if (xi > 1 - 1e-9) continue;
      const DerivativeEvaluator ev(m);
      for (cplx z : grid.points()) {
        const double lhs = std::pow(1 - std::norm(z), 2) * std::abs(ev.schwarzian(z));
        EXPECT_LE(lhs, schwarzian_pointwise_bound(p, xi, std::abs(z)) + 1e-9) << i << " " << z;
      }
    }
  }
}

TEST(DerivedConvexity, OrderZeroAtAlphaZero) {
  // At alpha = 0 membership is Re(1 + zP) > beta >= 0, so c = 1 admits the whole disk.
  for (double beta : {0.0, 0.5}) {
    const auto p = make_params(0, beta);
    for (std::size_t i = 0; i < 30; ++i) {
      const auto spec = sample_spec(404, i, SampleClass::sp0);
      for (int j = 0; j < 200; ++j) {
        const cplx z = std::polar(0.999 * std::sqrt(j / 200.0), 0.37 * j);
        const cplx phi = spec.phi(z);
        const cplx pre = 2.0 * p.g1 * phi / (1.0 - z * phi);
        EXPECT_GE((1.0 + z * pre).real(), -1e-12);
      }
    }
  }
}
