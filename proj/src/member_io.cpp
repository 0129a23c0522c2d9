#include "rkit/member_io.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "rkit/error.hpp"

namespace rkit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) raise(Errc::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j) {
  if (!j.is_number()) raise(Errc::parse_error, "expected a number");
  return j.get<double>();
}

std::vector<cplx> cplx_list(const Json& j) {
  if (!j.is_array()) raise(Errc::parse_error, "expected a list of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(cplx_from_json(e));
  return out;
}

Json cplx_list_json(std::span<const cplx> v) {
  Json arr = Json::array();
  for (cplx c : v) arr.push_back(cplx_to_json(c));
  return arr;
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json cplx_to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

cplx cplx_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) raise(Errc::parse_error, "complex value must be [re, im]");
  return {number(j[0]), number(j[1])};
}

Json series_to_json(const TruncatedSeries& s) { return cplx_list_json(s.coeffs()); }

TruncatedSeries series_from_json(const Json& j) {
  auto v = cplx_list(j);
  if (v.empty()) raise(Errc::parse_error, "series needs at least one coefficient");
  return TruncatedSeries(std::move(v));
}

Json spec_to_json(const SchwarzSpec& spec) {
  Json j;
  switch (spec.kind()) {
    case SchwarzKind::polynomial:
      j["kind"] = "polynomial";
      j["coeffs"] = cplx_list_json(spec.coeffs());
      break;
    case SchwarzKind::blaschke_product:
      j["kind"] = "blaschke_product";
      j["zeros"] = cplx_list_json(spec.zeros());
      j["rotation"] = cplx_to_json(spec.rotation());
      break;
    case SchwarzKind::unit_constant_times_z:
      j["kind"] = "unit_constant_times_z";
      j["rotation"] = cplx_to_json(spec.rotation());
      break;
  }
  return j;
}

SchwarzSpec spec_from_json(const Json& j) {
  const auto kind = field(j, "kind");
  if (!kind.is_string()) raise(Errc::parse_error, "spec kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "polynomial") return SchwarzSpec::polynomial(cplx_list(field(j, "coeffs")));
  if (k == "blaschke_product") {
    const cplx rot = j.contains("rotation") ? cplx_from_json(j.at("rotation")) : cplx{1.0};
    return SchwarzSpec::blaschke(cplx_list(field(j, "zeros")), rot);
  }
  if (k == "unit_constant_times_z") return SchwarzSpec::unit_constant(cplx_from_json(field(j, "rotation")));
  raise(Errc::parse_error, "unknown spec kind '" + k + "'");
}

Json provenance_to_json(const Provenance& p) {
  if (const auto* spec = std::get_if<SchwarzSpec>(&p)) return spec_to_json(*spec);
  const auto& tag = std::get<ExtremalTag>(p);
  Json j;
  j["kind"] = "extremal";
  j["variant"] = tag.variant == ExtremalVariant::plane ? "plane" : "disk_symmetric";
  j["lambda"] = cplx_to_json(tag.lambda);
  return j;
}

Provenance provenance_from_json(const Json& j) {
  if (field(j, "kind") == "extremal") {
    const auto v = field(j, "variant");
    ExtremalTag tag;
    if (v == "plane") {
      tag.variant = ExtremalVariant::plane;
    } else if (v == "disk_symmetric") {
      tag.variant = ExtremalVariant::disk_symmetric;
    } else {
      raise(Errc::parse_error, "unknown extremal variant");
    }
    tag.lambda = j.contains("lambda") ? cplx_from_json(j.at("lambda")) : cplx{1.0};
    return tag;
  }
  return spec_from_json(j);
}

Json params_to_json(const ClassParams& p) {
  Json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["k"] = p.k;
  j["a_sub"] = cplx_to_json(p.a_sub);
  j["g1"] = cplx_to_json(p.g1);
  return j;
}

ClassParams params_from_json(const Json& j) { return make_params(number(field(j, "alpha")), number(field(j, "beta"))); }

Json member_to_json(const MemberSeries& m) {
  Json j;
  j["params"] = params_to_json(m.params());
  j["provenance"] = provenance_to_json(m.provenance());
  if (const auto& cf = m.closed_form()) {
    j["closed_form"] = {{"power", cf->power}, {"lambda", cplx_to_json(cf->lambda)},
                        {"exponent", cplx_to_json(cf->exponent)}};
  } else {
    j["closed_form"] = nullptr;
  }
  j["order"] = m.order();
  j["f"] = series_to_json(m.f());
  j["f_prime"] = series_to_json(m.f_prime());
  return j;
}

MemberSeries member_from_json(const Json& j) {
  std::optional<ClosedForm> cf;
  if (j.contains("closed_form") && !j.at("closed_form").is_null()) {
    const auto& c = j.at("closed_form");
    const auto power = field(c, "power");
    if (!power.is_number_integer() || (power != 1 && power != 2)) raise(Errc::parse_error, "closed-form power must be 1 or 2");
    cf = ClosedForm{power.get<int>(), cplx_from_json(field(c, "lambda")), cplx_from_json(field(c, "exponent"))};
  }
  return MemberSeries(series_from_json(field(j, "f")), series_from_json(field(j, "f_prime")),
                      params_from_json(field(j, "params")), provenance_from_json(field(j, "provenance")), cf);
}

Json norm_to_json(const NormEstimate& n) {
  Json j;
  j["value"] = n.value;
  j["argmax"] = cplx_to_json(n.argmax);
  j["weight_exponent"] = n.weight_exponent;
  j["r_max"] = n.r_max;
  j["tail_error"] = n.tail_error;
  j["scan_gap"] = n.scan_gap;
  j["refinement_steps"] = n.refinement_steps;
  return j;
}

Json radius_to_json(const RadiusResult& r) {
  Json j;
  j["value"] = nullable(r.value);
  j["method"] = std::string(to_string(r.method));
  j["mode"] = r.mode;
  j["residual"] = r.residual;
  j["flags"] = r.flags;
  if (r.bisection_value) j["bisection_value"] = *r.bisection_value;
  if (r.formula_value) j["formula_value"] = *r.formula_value;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise(Errc::parse_error, "'" + path + "': " + e.what());
  }
}

}  // namespace rkit
