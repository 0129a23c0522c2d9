#pragma once

// Verification suites over seeded members. Every record keeps its worst
// witness, which replay_witness re-evaluates from scratch.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rkit/member_io.hpp"
#include "rkit/radii.hpp"
#include "rkit/robertson.hpp"
#include "rkit/schwarzian.hpp"

namespace rkit {

struct VerifyConfig {
  std::string theorem = "all";
  double alpha = 0.0;
  double beta = 0.0;
  double a_co = 2.0;
  CheckMode mode = CheckMode::corrected;
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  /// Series order for norm scans; pointwise checks use min(order, 256).
  std::size_t order = 512;
  ScanOpts scan{};
};

/// Everything needed to rebuild one margin evaluation.
struct Witness {
  std::string quantity;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> a_co;
  Provenance provenance = SchwarzSpec::zero();
  std::size_t order = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> index;
  cplx z{};
  double margin = 0.0;
};

enum class RecordStatus { holds, violated, finding, degenerate };

std::string_view to_string(RecordStatus s) noexcept;

struct CheckRecord {
  std::string id;
  std::string statement;
  bool asserted = true;
  double tolerance = 1e-9;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double min_margin = 0.0;
  RecordStatus status = RecordStatus::holds;
  std::optional<Witness> witness;
};

struct VerificationReport {
  std::vector<CheckRecord> records;
  std::size_t holds = 0;
  std::size_t violated = 0;
  std::size_t findings = 0;
  std::size_t degenerate = 0;

  /// 0 pass, 1 asserted failure, 3 findings only.
  [[nodiscard]] int exit_code() const noexcept;
};

/// Suite ids: 2.1ii 2.1iii 2.2 2.3 2.4 2.5 lemma-a nehari concavity algebra all.
VerificationReport run_verify(const VerifyConfig& cfg);

std::vector<std::string> suite_ids();

/// Recomputes the margin recorded in a witness.
double replay_witness(const Witness& w);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);
/// Without a timestamp; callers add one if wanted.
Json report_to_json(const VerificationReport& rep, const VerifyConfig& cfg);

}  // namespace rkit
