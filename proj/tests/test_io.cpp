#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "rkit/error.hpp"
#include "rkit/member_io.hpp"
#include "rkit/sampling.hpp"

using namespace rkit;

namespace {

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

// Round trip through text, as files and CLI output do.
Json through_text(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST(JsonIo, ComplexAndSeriesAreExact) {
  oracle::Random rng(601);
  for (int i = 0; i < 100; ++i) {
    const cplx c(rng.uniform(-1e3, 1e3), rng.uniform(-1e-8, 1e-8));
    EXPECT_EQ(cplx_from_json(through_text(cplx_to_json(c))), c);
  }
  const auto s = rng.series(64, 0.7);
  EXPECT_EQ(series_from_json(through_text(series_to_json(s))), s);
}

TEST(JsonIo, SpecsRoundTrip) {
  const std::vector<SchwarzSpec> specs{
      SchwarzSpec::zero(),
      SchwarzSpec::polynomial({0.0, cplx(0.1, 0.2), 0.0, cplx(-0.3, 0.05)}),
      SchwarzSpec::blaschke({0.0, cplx(0.3, -0.6)}, std::polar(1.0, 0.4)),
      SchwarzSpec::unit_constant(std::polar(1.0, -2.2)),
  };
  for (const auto& s : specs) EXPECT_EQ(spec_from_json(through_text(spec_to_json(s))), s);
  for (std::size_t i = 0; i < 40; ++i) {
    const auto s = sample_spec(602, i, i % 2 ? SampleClass::sp0 : SampleClass::general);
    EXPECT_EQ(spec_from_json(through_text(spec_to_json(s))), s) << i;
  }
}

TEST(JsonIo, ProvenanceRoundTrip) {
  const Provenance ext = ExtremalTag{ExtremalVariant::disk_symmetric, std::polar(1.0, 0.9)};
  EXPECT_EQ(provenance_from_json(through_text(provenance_to_json(ext))), ext);
  const Provenance sp = sample_spec(603, 0, SampleClass::general);
  EXPECT_EQ(provenance_from_json(through_text(provenance_to_json(sp))), sp);
  EXPECT_EQ(provenance_to_json(ext)["kind"], "extremal");
  EXPECT_EQ(provenance_to_json(ext)["variant"], "disk_symmetric");
}

TEST(JsonIo, ParamsRebuildDerivedConstants) {
  const auto p = make_params(0.7, 0.35);
  const auto q = params_from_json(through_text(params_to_json(p)));
  EXPECT_EQ(q.alpha, p.alpha);
  EXPECT_EQ(q.beta, p.beta);
  EXPECT_EQ(q.k, p.k);
  EXPECT_EQ(q.g1, p.g1);
  Json bad = params_to_json(p);
  bad["beta"] = 1.5;
  EXPECT_EQ(code_of([&] { params_from_json(bad); }), Errc::param_out_of_range);
}

TEST(JsonIo, MembersRoundTrip) {
  const auto a = generate_member(make_params(0.4, 0.2), sample_spec(604, 1, SampleClass::general), 128);
  const auto b = member_from_json(through_text(member_to_json(a)));
  EXPECT_EQ(b.f(), a.f());
  EXPECT_EQ(b.f_prime(), a.f_prime());
  EXPECT_EQ(b.provenance(), a.provenance());
  EXPECT_FALSE(b.closed_form().has_value());

  const auto e = extremal_member(make_params(0.1, 0.3), ExtremalVariant::plane, std::polar(1.0, 1.0), 64);
  const auto e2 = member_from_json(through_text(member_to_json(e)));
  ASSERT_TRUE(e2.closed_form().has_value());
  EXPECT_EQ(*e2.closed_form(), *e.closed_form());
  EXPECT_EQ(e2.f_prime(), e.f_prime());
  EXPECT_EQ(e2.eval_pre(cplx(0.99, 0.0)), e.eval_pre(cplx(0.99, 0.0)));
}

TEST(JsonIo, RadiusWithNanValueIsNull) {
  const auto r = radius_convexity(make_params(0, 0), ConvexityMode::paper_literal);
  const Json j = radius_to_json(r);
  EXPECT_TRUE(j["value"].is_null());
  EXPECT_EQ(j["method"], "formula_degenerate");
}

TEST(JsonIo, MalformedInputIsParseError) {
  EXPECT_EQ(code_of([] { cplx_from_json(Json::array({1.0})); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { cplx_from_json(Json("x")); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { series_from_json(Json::array()); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { spec_from_json(Json{{"kind", "spiral"}}); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { spec_from_json(Json::object()); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { provenance_from_json(Json{{"kind", "extremal"}, {"variant", "cone"}, {"lambda", {1, 0}}}); }),
            Errc::parse_error);
  EXPECT_EQ(code_of([] { member_from_json(Json{{"order", 4}}); }), Errc::parse_error);
}

TEST(JsonIo, InvalidSpecDataIsRejected) {
  const Json j{{"kind", "polynomial"}, {"coeffs", {{0.0, 0.0}, {2.0, 0.0}}}};
  EXPECT_NO_THROW(spec_from_json(j));
  EXPECT_EQ(code_of([&] { validate_schwarz(spec_from_json(j)); }), Errc::not_a_schwarz_function);
  const Json k{{"kind", "unit_constant_times_z"}, {"rotation", {0.5, 0.0}}};
  EXPECT_EQ(code_of([&] { spec_from_json(k); }), Errc::not_a_schwarz_function);
}

TEST(JsonIo, Files) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto missing = (dir / "rkit_missing_file.json").string();
  std::remove(missing.c_str());
  EXPECT_EQ(code_of([&] { read_json_file(missing); }), Errc::io_error);
  const auto bad = (dir / "rkit_bad_file.json").string();
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(code_of([&] { read_json_file(bad); }), Errc::parse_error);
  const auto good = (dir / "rkit_good_file.json").string();
  std::ofstream(good) << spec_to_json(SchwarzSpec::zero()).dump();
  EXPECT_EQ(spec_from_json(read_json_file(good)), SchwarzSpec::zero());
  std::remove(bad.c_str());
  std::remove(good.c_str());
}
