#include "rkit/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rkit/bounds.hpp"
#include "rkit/error.hpp"
#include "rkit/member_io.hpp"
#include "rkit/radii.hpp"
#include "rkit/schwarzian.hpp"
#include "rkit/verify.hpp"

namespace rkit {

namespace {

struct Common {
  double alpha = 0.0;
  double beta = 0.0;
  double a_co = 2.0;
  std::string mode;
  std::string out_path;
  std::size_t order = 0;
};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(Errc::io_error, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) raise(Errc::io_error, "write to '" + path + "' failed");
}

void write_json(const std::string& path, const Json& j, std::ostream& out) { write_text(path, j.dump(2) + "\n", out); }

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s = fmt::format("{}\n", fmt::join(header, ","));
  for (const auto& row : rows) s += fmt::format("{}\n", fmt::join(row, ","));
  return s;
}

std::vector<double> steps(double lo, double hi, double step) {
  if (!(step > 0.0)) raise(Errc::invalid_argument, "--step must be positive");
  std::vector<double> v;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) v.push_back(lo + step * static_cast<double>(i));
  return v;
}

CheckMode check_mode(const std::string& s) {
  if (s == "paper") return CheckMode::paper;
  if (s == "corrected" || s.empty()) return CheckMode::corrected;
  raise(Errc::invalid_argument, "--mode must be paper or corrected");
}

Provenance read_provenance(const std::string& path) {
  if (path.empty()) raise(Errc::invalid_argument, "--spec is required");
  return provenance_from_json(read_json_file(path));
}

MemberSeries build(const ClassParams& p, const Provenance& prov, std::size_t order) {
  if (const auto* spec = std::get_if<SchwarzSpec>(&prov)) {
    validate_schwarz(*spec);
    return generate_member(p, *spec, order);
  }
  const auto& tag = std::get<ExtremalTag>(prov);
  return extremal_member(p, tag.variant, tag.lambda, order);
}

int cmd_verify(const Common& c, const std::string& theorem, std::size_t samples, std::uint64_t seed,
               const ScanOpts& scan, std::ostream& out) {
  VerifyConfig cfg;
  cfg.theorem = theorem;
  cfg.alpha = c.alpha;
  cfg.beta = c.beta;
  cfg.a_co = c.a_co;
  cfg.mode = check_mode(c.mode);
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.order = c.order == 0 ? 512 : c.order;
  cfg.scan = scan;
  const VerificationReport rep = run_verify(cfg);
  Json j = report_to_json(rep, cfg);
  j["timestamp"] = utc_timestamp();
  write_json(c.out_path, j, out);
  return rep.exit_code();
}

int cmd_emit(const Common& c, const std::string& what, double rmax, double step, std::size_t angles,
             const std::string& spec_path, std::ostream& out) {
  const ClassParams p = make_params(c.alpha, c.beta);
  if (what == "growth" || what == "distortion") {
    if (!(rmax > 0.0 && rmax < 1.0)) raise(Errc::invalid_argument, "--rmax must lie in (0, 1)");
    const MemberSeries m = extremal_member(p, ExtremalVariant::disk_symmetric, 1.0, c.order == 0 ? 512 : c.order);
    const auto kind = what == "growth" ? EnvelopeKind::growth : EnvelopeKind::distortion;
    std::vector<std::vector<double>> rows;
    for (const auto& r : envelope_profile(m, kind, steps(0.0, rmax, step), angles)) {
      rows.push_back({r.r, r.lower, r.upper, r.sampled_min, r.sampled_max});
    }
    write_text(c.out_path, csv({"r", "lower", "upper", "sampled_min", "sampled_max"}, rows), out);
    return exit_pass;
  }
  if (what == "phi") {
    const ConcavitySetting s = make_concavity_setting(c.a_co);
    const std::string mode = c.mode.empty() ? "both" : c.mode;
    if (mode != "both" && mode != "paper" && mode != "corrected") {
      raise(Errc::invalid_argument, "--mode must be paper, corrected or both");
    }
    const Quadratic qp = phi_quadratic(p, s, PhiMode::paper);
    const Quadratic qc = phi_quadratic(p, s, PhiMode::corrected);
    std::vector<std::string> header{"r"};
    if (mode != "corrected") header.emplace_back("phi_paper");
    if (mode != "paper") header.emplace_back("phi_corrected");
    std::vector<std::vector<double>> rows;
    for (double r : steps(0.0, 1.0, step)) {
      std::vector<double> row{r};
      if (mode != "corrected") row.push_back(qp(r));
      if (mode != "paper") row.push_back(qc(r));
      rows.push_back(std::move(row));
    }
    write_text(c.out_path, csv(header, rows), out);
    return exit_pass;
  }
  if (what == "member") {
    const MemberSeries m = build(p, read_provenance(spec_path), c.order == 0 ? 256 : c.order);
    write_json(c.out_path, member_to_json(m), out);
    return exit_pass;
  }
  if (what == "norms") {
    std::vector<std::vector<double>> rows;
    for (double a : {0.0, std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
      for (double b : {0.0, 0.25, 0.5, 0.75}) {
        const ClassParams q = make_params(a, b);
        const MemberSeries m = extremal_member(q, ExtremalVariant::disk_symmetric, 1.0, 64);
        rows.push_back({a, b, q.k, norm_estimate(m, 1).value, pre_norm_bound(q), norm_estimate(m, 2).value,
                        schwarzian_norm_bound(q)});
      }
    }
    write_text(c.out_path,
               csv({"alpha", "beta", "k", "pre_norm", "pre_bound", "schwarzian_norm", "schwarzian_bound"}, rows), out);
    return exit_pass;
  }
  raise(Errc::invalid_argument, "unknown emit target '" + what + "'");
}

int cmd_radii(const Common& c, const std::string& what, const SearchOpts& search, std::ostream& out,
              std::ostream& err) {
  const ClassParams p = make_params(c.alpha, c.beta);
  Json j;
  j["command"] = "radii " + what;
  j["params"] = params_to_json(p);
  if (what == "concavity") {
    const ConcavitySetting s = make_concavity_setting(c.a_co);
    const PhiMode mode = check_mode(c.mode.empty() ? "paper" : c.mode) == CheckMode::paper ? PhiMode::paper
                                                                                           : PhiMode::corrected;
    j["a_co"] = s.a_co;
    const Quadratic q = phi_quadratic(p, s, mode);
    j["quadratic"] = {q.a, q.b, q.c};
    j["result"] = radius_to_json(radius_concavity(p, s, mode));
  } else if (what == "convexity") {
    ConvexityMode mode = ConvexityMode::paper_literal;
    if (c.mode == "corrected") {
      mode = ConvexityMode::derived_corrected;
    } else if (c.mode == "derived-paper") {
      mode = ConvexityMode::derived_paper;
    } else if (!c.mode.empty() && c.mode != "paper") {
      raise(Errc::invalid_argument, "--mode must be paper, derived-paper or corrected");
    }
    const RadiusResult r = radius_convexity(p, mode);
    if (r.method == RadiusMethod::formula_degenerate) {
      err << "warning: 1/(k - 1) is not a radius in (0, 1] for k = " << p.k << "\n";
    }
    j["result"] = radius_to_json(r);
  } else if (what == "probe") {
    const ConcavitySetting s = make_concavity_setting(c.a_co);
    const ProbeResult r = sharpness_probe(p, s, search);
    const double r_paper = radius_concavity(p, s, PhiMode::paper).value;
    const double r_corr = radius_concavity(p, s, PhiMode::corrected).value;
    j["a_co"] = s.a_co;
    j["seed"] = search.seed;
    j["budget"] = search.budget;
    j["empirical_radius"] = r.empirical_radius;
    j["witness_spec"] = provenance_to_json(r.witness_spec);
    j["witness_z"] = cplx_to_json(r.witness_z);
    j["candidates"] = r.candidates;
    j["circles"] = r.circles;
    j["budget_exhausted"] = r.budget_exhausted;
    j["radius_paper"] = r_paper;
    j["radius_corrected"] = r_corr;
    j["gap_paper"] = r.empirical_radius - r_paper;
    j["gap_corrected"] = r.empirical_radius - r_corr;
    if (r.budget_exhausted) err << "warning: " << to_string(Errc::search_budget_exhausted) << ", best so far reported\n";
  } else {
    raise(Errc::invalid_argument, "unknown radii target '" + what + "'");
  }
  write_json(c.out_path, j, out);
  return exit_pass;
}

int cmd_norm(const Common& c, const std::string& spec_path, const std::string& extremal, int weight,
             const ScanOpts& scan, std::ostream& out) {
  const ClassParams p = make_params(c.alpha, c.beta);
  Provenance prov = SchwarzSpec::zero();
  if (!extremal.empty()) {
    if (extremal != "plane" && extremal != "disk_symmetric") {
      raise(Errc::invalid_argument, "--extremal must be plane or disk_symmetric");
    }
    prov = ExtremalTag{extremal == "plane" ? ExtremalVariant::plane : ExtremalVariant::disk_symmetric, 1.0};
  } else {
    prov = read_provenance(spec_path);
  }
  if (weight != 1 && weight != 2) raise(Errc::invalid_argument, "--weight must be 1 or 2");
  const MemberSeries m = build(p, prov, c.order == 0 ? 512 : c.order);
  Json j;
  j["command"] = "norm";
  j["params"] = params_to_json(p);
  j["provenance"] = provenance_to_json(prov);
  j["estimate"] = norm_to_json(norm_estimate(m, weight, scan));
  j["bound"] = weight == 1 ? pre_norm_bound(p) : schwarzian_norm_bound(p);
  write_json(c.out_path, j, out);
  return exit_pass;
}

int cmd_replay(const std::string& report_path, const std::string& out_path, std::ostream& out) {
  const Json report = read_json_file(report_path);
  if (!report.contains("records") || !report.at("records").is_array()) {
    raise(Errc::parse_error, "report has no records");
  }
  Json rows = Json::array();
  bool ok = true;
  for (const auto& rec : report.at("records")) {
    if (!rec.contains("witness") || rec.at("witness").is_null()) continue;
    const Witness w = witness_from_json(rec.at("witness"));
    const double replayed = replay_witness(w);
    const double diff = std::abs(replayed - w.margin);
    const bool match = diff <= 1e-12;
    ok = ok && match;
    rows.push_back({{"id", rec.value("id", std::string{})},
                    {"recorded", w.margin},
                    {"replayed", replayed},
                    {"difference", diff},
                    {"match", match}});
  }
  Json j;
  j["command"] = "replay";
  j["records"] = std::move(rows);
  j["all_match"] = ok;
  write_json(out_path, j, out);
  return ok ? exit_pass : exit_assertion;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification toolkit for generalized Robertson functions", "robertson-kit"};
  app.require_subcommand(1);

  Common c;
  ScanOpts scan;
  std::optional<double> r_max;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alpha, "Spiral angle alpha in (-pi/2, pi/2)");
    sub->add_option("--beta", c.beta, "Order beta in [0, 1)");
    sub->add_option("--out", c.out_path, "Output path (default stdout)");
  };
  auto add_scan = [&](CLI::App* sub) {
    sub->add_option("--radial", scan.radial, "Radii in the coarse norm scan");
    sub->add_option("--angular", scan.angular, "Angles in the coarse norm scan");
    sub->add_option("--rmax", r_max, "Outer scan radius");
  };

  std::string theorem;
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite over seeded members");
  add_params(verify);
  add_scan(verify);
  verify->add_option("--theorem", theorem, "Suite id")->required()->check(CLI::IsMember(suite_ids()));
  verify->add_option("--Aco,--aco", c.a_co, "Concavity parameter A in (1, 2]");
  verify->add_option("--mode", c.mode, "paper or corrected")->check(CLI::IsMember({"paper", "corrected"}));
  verify->add_option("--samples", samples, "Number of seeded members");
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--order", c.order, "Series order");

  std::string what;
  double emit_rmax = 0.9;
  double step = 0.05;
  std::size_t angles = 64;
  std::string spec_path;
  auto* emit = app.add_subcommand("emit", "Write CSV tables or member JSON");
  add_params(emit);
  emit->add_option("what", what, "growth | distortion | phi | member | norms")
      ->required()
      ->check(CLI::IsMember({"growth", "distortion", "phi", "member", "norms"}));
  emit->add_option("--rmax", emit_rmax, "Largest radius");
  emit->add_option("--step", step, "Radius step");
  emit->add_option("--angles", angles, "Angles per radius for sampled columns");
  emit->add_option("--Aco,--aco", c.a_co, "Concavity parameter A in (1, 2]");
  emit->add_option("--mode", c.mode, "paper | corrected | both");
  emit->add_option("--spec", spec_path, "Schwarz spec JSON file");
  emit->add_option("--order", c.order, "Series order");

  SearchOpts search;
  auto* radii = app.add_subcommand("radii", "Radius of concavity or convexity");
  add_params(radii);
  radii->add_option("what", what, "concavity | convexity | probe")
      ->required()
      ->check(CLI::IsMember({"concavity", "convexity", "probe"}));
  radii->add_option("--Aco,--aco", c.a_co, "Concavity parameter A in (1, 2]");
  radii->add_option("--mode", c.mode, "paper | corrected (convexity also: derived-paper)");
  radii->add_option("--seed", search.seed, "Probe seed");
  radii->add_option("--budget", search.budget, "Probe budget in circle minimizations");
  radii->add_option("--samples", search.samples, "Seeded specs tried by the probe");
  radii->add_option("--order", search.order, "Series order of probe members");

  std::string extremal;
  int weight = 2;
  auto* norm = app.add_subcommand("norm", "Estimate ||P_f|| or ||S_f|| for one member");
  add_params(norm);
  add_scan(norm);
  norm->add_option("--spec", spec_path, "Schwarz spec JSON file");
  norm->add_option("--extremal", extremal, "plane | disk_symmetric");
  norm->add_option("--weight", weight, "1 for the pre-Schwarzian, 2 for the Schwarzian");
  norm->add_option("--order", c.order, "Series order");

  std::string report_path;
  auto* replay = app.add_subcommand("replay", "Re-evaluate the witnesses of a verify report");
  replay->add_option("--report", report_path, "Report JSON")->required();
  replay->add_option("--out", c.out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }
  scan.r_max = r_max;

  try {
    if (verify->parsed()) return cmd_verify(c, theorem, samples, seed, scan, out);
    if (emit->parsed()) return cmd_emit(c, what, emit_rmax, step, angles, spec_path, out);
    if (radii->parsed()) return cmd_radii(c, what, search, out, err);
    if (norm->parsed()) return cmd_norm(c, spec_path, extremal, weight, scan, out);
    if (replay->parsed()) return cmd_replay(report_path, c.out_path, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace rkit
