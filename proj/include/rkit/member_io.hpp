#pragma once

// JSON encodings. Complex numbers are [re, im] pairs; series are lists of pairs.
// Doubles are written with round-trip precision, so decode(encode(x)) == x.

#include <string>

#include "json.hpp"
#include "rkit/radii.hpp"
#include "rkit/robertson.hpp"
#include "rkit/schwarzian.hpp"

namespace rkit {

using Json = nlohmann::ordered_json;

Json cplx_to_json(cplx c);
cplx cplx_from_json(const Json& j);

Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

/// {"kind": "polynomial" | "blaschke_product" | "unit_constant_times_z", "coeffs" | "zeros", "rotation"}
Json spec_to_json(const SchwarzSpec& spec);
SchwarzSpec spec_from_json(const Json& j);

/// Schwarz specs as above; extremals as {"kind": "extremal", "variant", "lambda"}.
Json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

Json params_to_json(const ClassParams& p);
/// Rebuilds all derived constants from alpha and beta.
ClassParams params_from_json(const Json& j);

Json member_to_json(const MemberSeries& m);
MemberSeries member_from_json(const Json& j);

Json norm_to_json(const NormEstimate& n);
Json radius_to_json(const RadiusResult& r);

/// Throws io_error / parse_error.
Json read_json_file(const std::string& path);

}  // namespace rkit
