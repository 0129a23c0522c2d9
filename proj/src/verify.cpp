#include "rkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "rkit/bounds.hpp"
#include "rkit/error.hpp"
#include "rkit/parallel.hpp"
#include "rkit/sampling.hpp"

namespace rkit {

std::string_view to_string(RecordStatus s) noexcept {
  switch (s) {
    case RecordStatus::holds:
      return "holds";
    case RecordStatus::violated:
      return "violated";
    case RecordStatus::finding:
      return "finding";
    case RecordStatus::degenerate:
      return "degenerate";
  }
  return "?";
}

int VerificationReport::exit_code() const noexcept {
  if (violated > 0) return 1;
  if (findings > 0) return 3;
  return 0;
}

std::vector<std::string> suite_ids() {
  return {"2.1ii", "2.1iii", "2.2", "2.3", "2.4", "2.5", "lemma-a", "nehari", "concavity", "algebra", "all"};
}

namespace {

constexpr double sharpness_tol = 5e-3;
constexpr double norm_tol = 1e-6;
constexpr std::size_t algebra_order = 64;

MemberSeries build_member(const ClassParams& p, const Provenance& prov, std::size_t order) {
  if (const auto* spec = std::get_if<SchwarzSpec>(&prov)) return generate_member(p, *spec, order);
  const auto& tag = std::get<ExtremalTag>(prov);
  return extremal_member(p, tag.variant, tag.lambda, order);
}

double algebra_gap(const ClassParams& p, const SchwarzSpec& spec, std::size_t order) {
  const MemberSeries m = generate_member(p, spec, order);
  const TruncatedSeries direct = schwarzian(m);
  const TruncatedSeries via = schwarzian_via_phi(p, spec, order);
  const std::size_t n = std::min(direct.order(), via.order());
  double gap = 0.0;
  for (std::size_t i = 0; i <= n; ++i) gap = std::max(gap, std::abs(direct[i] - via[i]));
  return gap;
}

// Pointwise margin of one named quantity. Suites and replay share this code path.
class MarginEval {
 public:
  MarginEval(const MemberSeries& m, std::optional<double> a_co) : m_(m), ev_(m), a_co_(a_co) {}

  double operator()(const std::string& q, cplx z) const {
    const auto& p = m_.params();
    if (q == "membership") {
      return (std::polar(1.0, p.alpha) * (1.0 + z * m_.eval_pre(z))).real() - p.beta * std::cos(p.alpha);
    }
    if (q == "check_ii") return check_ii(m_, z);
    if (q == "check_iii_paper") return check_iii(m_, z, CheckMode::paper);
    if (q == "check_iii_corrected") return check_iii(m_, z, CheckMode::corrected);
    if (q == "pre_norm") return pre_norm_bound(p) - ev_.weighted(z, 1);
    if (q == "schwarzian_norm") return schwarzian_norm_bound(p) - ev_.weighted(z, 2);
    if (q == "pre_sharpness") return sharpness_tol - std::abs(ev_.weighted(z, 1) - pre_norm_bound(p));
    if (q == "schwarzian_sharpness") {
      return sharpness_tol - std::abs(ev_.weighted(z, 2) - schwarzian_norm_bound(p));
    }
    if (q == "nehari_necessary") return 6.0 - ev_.weighted(z, 2);
    if (q == "nehari_sufficient") return 2.0 - ev_.weighted(z, 2);
    if (q == "pointwise_schwarzian") {
      return schwarzian_pointwise_bound(p, std::min(xi_of_member(m_), 1.0 - 1e-15), std::abs(z)) -
             ev_.weighted(z, 2);
    }
    if (q == "lemma_a_hyperbolic" || q == "lemma_a_literal") {
      const auto* spec = std::get_if<SchwarzSpec>(&m_.provenance());
      if (!spec) raise(Errc::invalid_argument, "lemma check needs a Schwarz-spec member");
      const double phi0 = std::abs(spec->phi(0.0));
      const double s = std::norm(spec->phi(z));
      const auto variant = q == "lemma_a_hyperbolic" ? LemmaAVariant::hyperbolic : LemmaAVariant::literal;
      return lemma_a_bound(phi0, std::abs(z), variant) - s / (1.0 - s);
    }
    if (q == "distortion") {
      const Envelope e = distortion_envelope(p, std::abs(z));
      const double v = std::abs(m_.eval_f_prime(z));
      return std::min(e.upper - v, v - e.lower);
    }
    if (q == "growth") {
      const Envelope e = growth_envelope(p, std::abs(z));
      const double v = std::abs(m_.eval_f(z));
      return std::min(e.upper - v, v - e.lower);
    }
    if (q == "concavity") {
      if (!a_co_) raise(Errc::invalid_argument, "concavity witness needs a_co");
      return t_operator(m_, ConcavitySetting{*a_co_}, z).real();
    }
    raise(Errc::invalid_argument, "unknown witness quantity '" + q + "'");
  }

 private:
  const MemberSeries& m_;
  DerivativeEvaluator ev_;
  std::optional<double> a_co_;
};

struct MemberRef {
  Provenance provenance;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> index;
};

struct Best {
  double margin = std::numeric_limits<double>::infinity();
  cplx z{};
  std::size_t samples = 0;
  bool skipped = false;
};

struct Quantity {
  std::string id;
  std::string name;
  std::string statement;
  bool asserted = true;
  double tolerance = 1e-9;
};

struct SuiteContext {
  const VerifyConfig& cfg;
  ClassParams params;
  VerificationReport& out;
};

void finish_record(SuiteContext& ctx, const Quantity& q, const std::vector<MemberRef>& refs,
                   const std::vector<Best>& best, std::size_t order, std::optional<double> a_co) {
  CheckRecord rec;
  rec.id = q.id;
  rec.statement = q.statement;
  rec.asserted = q.asserted;
  rec.tolerance = q.tolerance;
  rec.min_margin = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> worst;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i].skipped) {
      ++rec.skipped;
      continue;
    }
    rec.samples += best[i].samples;
    if (best[i].samples > 0 && best[i].margin < rec.min_margin) {
      rec.min_margin = best[i].margin;
      worst = i;
    }
  }
  if (worst) {
    Witness w;
    w.quantity = q.name;
    w.alpha = ctx.params.alpha;
    w.beta = ctx.params.beta;
    w.a_co = a_co;
    w.provenance = refs[*worst].provenance;
    w.order = order;
    w.seed = refs[*worst].seed;
    w.index = refs[*worst].index;
    w.z = best[*worst].z;
    w.margin = best[*worst].margin;
    rec.witness = w;
  }
  if (rec.samples == 0) {
    rec.status = RecordStatus::degenerate;
    rec.min_margin = std::numeric_limits<double>::quiet_NaN();
    ++ctx.out.degenerate;
  } else if (rec.min_margin >= -q.tolerance) {
    rec.status = RecordStatus::holds;
    ++ctx.out.holds;
  } else if (q.asserted) {
    rec.status = RecordStatus::violated;
    ++ctx.out.violated;
  } else {
    rec.status = RecordStatus::finding;
    ++ctx.out.findings;
  }
  ctx.out.records.push_back(std::move(rec));
}

std::vector<MemberRef> sampled_refs(const VerifyConfig& cfg, SampleClass cls, std::size_t count,
                                    std::size_t first_index = 0) {
  std::vector<MemberRef> refs;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t idx = first_index + i;
    refs.push_back({sample_spec(cfg.seed, idx, cls), cfg.seed, idx});
  }
  return refs;
}

std::vector<cplx> grid_points(const GridSpec& g) { return g.points(); }

// Runs several pointwise quantities over members x points.
void run_pointwise(SuiteContext& ctx, const std::vector<MemberRef>& refs, const std::vector<Quantity>& qs,
                   const std::vector<cplx>& points, std::size_t order, std::optional<double> a_co = std::nullopt,
                   const std::map<std::size_t, std::vector<cplx>>& extra_points = {}) {
  std::vector<std::vector<Best>> best(qs.size(), std::vector<Best>(refs.size()));
  parallel_for(refs.size(), [&](std::size_t i) {
    try {
      const MemberSeries m = build_member(ctx.params, refs[i].provenance, order);
      const MarginEval eval(m, a_co);
      auto visit = [&](cplx z) {
        for (std::size_t q = 0; q < qs.size(); ++q) {
          const double v = eval(qs[q].name, z);
          Best& b = best[q][i];
          ++b.samples;
          if (v < b.margin) {
            b.margin = v;
            b.z = z;
          }
        }
      };
      for (cplx z : points) visit(z);
      if (auto it = extra_points.find(i); it != extra_points.end()) {
        for (cplx z : it->second) visit(z);
      }
    } catch (const Error& e) {
      if (e.code() != Errc::radius_exceeded && e.code() != Errc::tail_tolerance_unmet) throw;
      for (auto& per_q : best) per_q[i] = Best{std::numeric_limits<double>::infinity(), {}, 0, true};
    }
  });
  for (std::size_t q = 0; q < qs.size(); ++q) finish_record(ctx, qs[q], refs, best[q], order, a_co);
}

// One norm scan per member; the witness sits at the located maximum.
void run_norm(SuiteContext& ctx, const std::vector<MemberRef>& refs, const std::vector<Quantity>& qs, int weight,
              std::size_t order) {
  std::vector<std::vector<Best>> best(qs.size(), std::vector<Best>(refs.size()));
  parallel_for(refs.size(), [&](std::size_t i) {
    try {
      const MemberSeries m = build_member(ctx.params, refs[i].provenance, order);
      const NormEstimate est = norm_estimate(m, weight, ctx.cfg.scan);
      const MarginEval eval(m, std::nullopt);
      for (std::size_t q = 0; q < qs.size(); ++q) best[q][i] = Best{eval(qs[q].name, est.argmax), est.argmax, 1, false};
    } catch (const Error& e) {
      if (e.code() != Errc::radius_exceeded && e.code() != Errc::tail_tolerance_unmet) throw;
      for (auto& per_q : best) per_q[i].skipped = true;
    }
  });
  for (std::size_t q = 0; q < qs.size(); ++q) finish_record(ctx, qs[q], refs, best[q], order, std::nullopt);
}

std::size_t pointwise_order(const VerifyConfig& cfg) { return std::min<std::size_t>(cfg.order, 256); }

void suite_2_1ii(SuiteContext& ctx) {
  const auto refs = sampled_refs(ctx.cfg, SampleClass::general, ctx.cfg.samples);
  run_pointwise(ctx, refs,
                {{"2.1ii.membership", "membership", "Re(e^{i alpha}(1 + z P_f)) > beta cos(alpha)", true, 1e-9},
                 {"2.1ii", "check_ii", "Re(1 + conj(G1) z P_f) >= 1 - k^2 + (1 - |z|^2)/4 |z P_f|^2", true, 1e-9}},
                grid_points(default_validation_grid()), pointwise_order(ctx.cfg));
}

void suite_2_1iii(SuiteContext& ctx, CheckMode mode) {
  const bool paper = mode == CheckMode::paper;
  std::vector<MemberRef> refs;
  std::map<std::size_t, std::vector<cplx>> extra;
  const bool extremal = ctx.params.alpha == 0.0 && ctx.cfg.samples > 0;
  if (extremal) refs.push_back({ExtremalTag{ExtremalVariant::plane, 1.0}, std::nullopt, 0});
  for (auto& r : sampled_refs(ctx.cfg, SampleClass::general, ctx.cfg.samples - refs.size(), refs.size())) {
    refs.push_back(std::move(r));
  }
  const std::string suffix = paper ? ".paper" : ".corrected";
  const Quantity q{"2.1iii" + suffix, paper ? "check_iii_paper" : "check_iii_corrected",
                   paper ? "|(1 - |z|^2) P_f - 2k conj(z)| <= k" : "|(1 - |z|^2) P_f - 2 G1 conj(z)| <= 2k", !paper,
                   1e-9};
  run_pointwise(ctx, refs, {q}, grid_points(default_validation_grid()), pointwise_order(ctx.cfg));
  if (extremal) {
    const std::vector<MemberRef> anchor{refs.front()};
    Quantity qa = q;
    qa.id += ".anchor";
    qa.statement += " at z = -1/2 for f' = (1 - z)^{-k}";
    run_pointwise(ctx, anchor, {qa}, {cplx{-0.5}}, pointwise_order(ctx.cfg));
  }
}

void suite_2_2(SuiteContext& ctx) {
  std::vector<MemberRef> refs{{ExtremalTag{ExtremalVariant::disk_symmetric, 1.0}, std::nullopt, 0}};
  for (auto& r : sampled_refs(ctx.cfg, SampleClass::sp0, ctx.cfg.samples, 1)) refs.push_back(std::move(r));
  const bool asserted = ctx.params.alpha == 0.0;
  run_pointwise(ctx, refs,
                {{"2.2.distortion", "distortion", "(1 + r^2)^{-k} <= |f'(z)| <= (1 - r^2)^{-k}", asserted, 1e-9},
                 {"2.2.growth", "growth", "int_0^r (1 + t^2)^{-k} dt <= |f(z)| <= int_0^r (1 - t^2)^{-k} dt",
                  asserted, 1e-9}},
                grid_points(GridSpec::chebyshev(32, 64, 0.9)), pointwise_order(ctx.cfg));
}

void suite_norm(SuiteContext& ctx, int weight) {
  const bool pre = weight == 1;
  const std::string id = pre ? "2.3" : "2.4";
  const std::vector<MemberRef> extremal{{ExtremalTag{ExtremalVariant::disk_symmetric, 1.0}, std::nullopt, 0}};
  run_norm(ctx, extremal,
           {{id + ".sharpness", pre ? "pre_sharpness" : "schwarzian_sharpness",
            pre ? "||P_f|| = 2k for f' = (1 - z^2)^{-k}" : "||S_f|| = 2k(2 - k) for f' = (1 - z^2)^{-k}", true, 0.0}},
           weight, ctx.cfg.order);
  run_norm(ctx, sampled_refs(ctx.cfg, SampleClass::sp0, ctx.cfg.samples),
           {{id, pre ? "pre_norm" : "schwarzian_norm", pre ? "||P_f|| <= 2k on SP0" : "||S_f|| <= 2k(2 - k) on SP0",
             true, norm_tol}},
           weight, ctx.cfg.order);
}

void suite_2_5(SuiteContext& ctx) {
  run_pointwise(ctx, sampled_refs(ctx.cfg, SampleClass::general, ctx.cfg.samples),
                {{"2.5", "pointwise_schwarzian", "(1 - |z|^2)^2 |S_f(z)| <= 2k(2 + k(xi + |z|)^2/(1 - xi^2))", true,
                  1e-9}},
                grid_points(GridSpec::chebyshev(25, 40, 0.9)), pointwise_order(ctx.cfg));
}

void suite_lemma_a(SuiteContext& ctx) {
  run_pointwise(ctx, sampled_refs(ctx.cfg, SampleClass::general, ctx.cfg.samples),
                {{"lemma-a", "lemma_a_hyperbolic", "|phi|^2/(1 - |phi|^2) <= (xi + r)^2/((1 - xi^2)(1 - r^2))", true,
                  1e-9},
                 {"lemma-a.literal", "lemma_a_literal", "|phi|^2/(1 - |phi|^2) <= (xi + r)^2/((1 - xi)^2 (1 - r^2))",
                  true, 1e-9}},
                grid_points(default_validation_grid()), pointwise_order(ctx.cfg));
}

void suite_nehari(SuiteContext& ctx) {
  const auto refs = sampled_refs(ctx.cfg, SampleClass::sp0, ctx.cfg.samples);
  run_norm(ctx, refs,
           {{"nehari.necessary", "nehari_necessary", "||S_f|| <= 6 (univalence necessary)", true, norm_tol},
            {"nehari.sufficient", "nehari_sufficient", "||S_f|| <= 2 (univalence sufficient)", false, norm_tol}},
           2, ctx.cfg.order);
}

void suite_concavity(SuiteContext& ctx, PhiMode mode) {
  const ConcavitySetting setting = make_concavity_setting(ctx.cfg.a_co);
  const RadiusResult radius = radius_concavity(ctx.params, setting, mode);
  std::vector<MemberRef> refs{{SchwarzSpec::zero(), std::nullopt, std::nullopt}};
  constexpr std::size_t rotations = 16;
  for (std::size_t j = 0; j < rotations; ++j) {
    refs.push_back({SchwarzSpec::unit_constant(std::polar(1.0, 2.0 * std::numbers::pi * j / rotations)),
                    std::nullopt, std::nullopt});
  }
  for (std::size_t i = 0; i < ctx.cfg.samples; ++i) {
    const SampleClass cls = i % 2 == 0 ? SampleClass::general : SampleClass::sp0;
    refs.push_back({sample_spec(ctx.cfg.seed, i, cls), ctx.cfg.seed, i});
  }
  const GridSpec g = GridSpec::chebyshev(32, 128, radius.value - 1e-3);
  const bool corrected = mode == PhiMode::corrected;
  run_pointwise(ctx, refs,
                {{corrected ? "concavity.corrected" : "concavity.paper", "concavity",
                  "Re T_f(z) > 0 for |z| <= R - 1e-3, R = " + std::to_string(radius.value), corrected, 1e-9}},
                grid_points(g), pointwise_order(ctx.cfg), ctx.cfg.a_co);
}

void suite_algebra(SuiteContext& ctx) {
  const std::size_t n = ctx.cfg.samples;
  std::vector<MemberRef> refs = sampled_refs(ctx.cfg, SampleClass::general, n);
  std::vector<Best> best(n);
  parallel_for(n, [&](std::size_t i) {
    const auto& spec = std::get<SchwarzSpec>(refs[i].provenance);
    best[i] = Best{1e-9 - algebra_gap(ctx.params, spec, algebra_order), {}, 1, false};
  });
  finish_record(ctx,
                {"algebra", "algebra", "S_f from 2 G1 (phi' + (1 - G1) phi^2)/(1 - z phi)^2 matches P' - P^2/2", true,
                 0.0},
                refs, best, algebra_order, std::nullopt);
}

}  // namespace

VerificationReport run_verify(const VerifyConfig& cfg) {
  const auto ids = suite_ids();
  if (std::find(ids.begin(), ids.end(), cfg.theorem) == ids.end()) {
    raise(Errc::invalid_argument, "unknown theorem id '" + cfg.theorem + "'");
  }
  VerificationReport rep;
  SuiteContext ctx{cfg, make_params(cfg.alpha, cfg.beta), rep};
  const bool all = cfg.theorem == "all";
  const PhiMode phi_mode = cfg.mode == CheckMode::paper ? PhiMode::paper : PhiMode::corrected;
  if (all || cfg.theorem == "2.1ii") suite_2_1ii(ctx);
  if (all) {
    suite_2_1iii(ctx, CheckMode::paper);
    suite_2_1iii(ctx, CheckMode::corrected);
  } else if (cfg.theorem == "2.1iii") {
    suite_2_1iii(ctx, cfg.mode);
  }
  if (all || cfg.theorem == "2.2") suite_2_2(ctx);
  if (all || cfg.theorem == "2.3") suite_norm(ctx, 1);
  if (all || cfg.theorem == "2.4") suite_norm(ctx, 2);
  if (all || cfg.theorem == "2.5") suite_2_5(ctx);
  if (all || cfg.theorem == "lemma-a") suite_lemma_a(ctx);
  if (all || cfg.theorem == "nehari") suite_nehari(ctx);
  if (all) {
    suite_concavity(ctx, PhiMode::paper);
    suite_concavity(ctx, PhiMode::corrected);
  } else if (cfg.theorem == "concavity") {
    suite_concavity(ctx, phi_mode);
  }
  if (all || cfg.theorem == "algebra") suite_algebra(ctx);
  return rep;
}

double replay_witness(const Witness& w) {
  const ClassParams p = make_params(w.alpha, w.beta);
  if (w.quantity == "algebra") {
    const auto* spec = std::get_if<SchwarzSpec>(&w.provenance);
    if (!spec) raise(Errc::invalid_argument, "algebra witness needs a Schwarz spec");
    return 1e-9 - algebra_gap(p, *spec, w.order);
  }
  const MemberSeries m = build_member(p, w.provenance, w.order);
  return MarginEval(m, w.a_co)(w.quantity, w.z);
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["quantity"] = w.quantity;
  j["params"] = {{"alpha", w.alpha}, {"beta", w.beta}};
  j["a_co"] = w.a_co ? Json(*w.a_co) : Json(nullptr);
  j["provenance"] = provenance_to_json(w.provenance);
  j["order"] = w.order;
  j["seed"] = w.seed ? Json(*w.seed) : Json(nullptr);
  j["index"] = w.index ? Json(*w.index) : Json(nullptr);
  j["z"] = cplx_to_json(w.z);
  j["margin"] = w.margin;
  return j;
}

Witness witness_from_json(const Json& j) {
  try {
    Witness w;
    w.quantity = j.at("quantity").get<std::string>();
    w.alpha = j.at("params").at("alpha").get<double>();
    w.beta = j.at("params").at("beta").get<double>();
    if (j.contains("a_co") && !j.at("a_co").is_null()) w.a_co = j.at("a_co").get<double>();
    w.provenance = provenance_from_json(j.at("provenance"));
    w.order = j.at("order").get<std::size_t>();
    if (j.contains("seed") && !j.at("seed").is_null()) w.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("index") && !j.at("index").is_null()) w.index = j.at("index").get<std::size_t>();
    w.z = cplx_from_json(j.at("z"));
    w.margin = j.at("margin").get<double>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::parse_error, std::string("malformed witness: ") + e.what());
  }
}

Json report_to_json(const VerificationReport& rep, const VerifyConfig& cfg) {
  Json j;
  j["command"] = "verify";
  j["config"] = {{"theorem", cfg.theorem},
                 {"alpha", cfg.alpha},
                 {"beta", cfg.beta},
                 {"a_co", cfg.a_co},
                 {"mode", cfg.mode == CheckMode::paper ? "paper" : "corrected"},
                 {"samples", cfg.samples},
                 {"seed", cfg.seed},
                 {"order", cfg.order}};
  Json records = Json::array();
  for (const auto& r : rep.records) {
    Json jr;
    jr["id"] = r.id;
    jr["statement"] = r.statement;
    jr["asserted"] = r.asserted;
    jr["tolerance"] = r.tolerance;
    jr["samples"] = r.samples;
    jr["skipped"] = r.skipped;
    jr["min_margin"] = std::isfinite(r.min_margin) ? Json(r.min_margin) : Json(nullptr);
    jr["status"] = std::string(to_string(r.status));
    jr["witness"] = r.witness ? witness_to_json(*r.witness) : Json(nullptr);
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);
  j["summary"] = {{"holds", rep.holds}, {"violated", rep.violated}, {"findings", rep.findings},
                  {"degenerate", rep.degenerate}};
  j["exit_code"] = rep.exit_code();
  return j;
}

}  // namespace rkit
