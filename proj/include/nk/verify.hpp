#pragma once

// Seeded verification sweep over random orthogonal almost complex structures.
// Each sample index owns an independent RNG substream, so results do not
// depend on how samples are scheduled across threads.

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nk::verify {

/// Check names, in the order they are run and reported.
const std::vector<std::string>& check_names();

/// The ricci check only counts samples with t above this; residual_thm3_max is
/// still recorded for every sample in AO-.
inline constexpr double kRicciMinT = 0.55;

/// Default tolerance per check; sign-only checks (det_b, amplification, orbit_equivalence)
/// ignore theirs.
std::map<std::string, double> default_tolerances();

struct VerificationConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 10000;
  std::map<std::string, double> tolerances = default_tolerances();
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct SampleRecord {
  std::size_t index = 0;
  double x = 0, t = 0, tau = 0;
  double residual_thm1 = 0;
  double detB = 0;
  double residual_thm2 = 0;       ///< NaN outside AO-
  double residual_thm3_max = 0;   ///< NaN outside AO-
  double nk_defect = 0;           ///< NaN outside AO-
  bool in_ao_minus = false;
  std::map<std::string, double> residuals;  ///< per check; sign checks store 0/1 failure flags
};

struct CheckResult {
  std::string name;
  double worst = 0;
  double tolerance = 0;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  long first_failure = -1;
  bool passed() const { return failures == 0; }
};

struct VerificationSummary {
  std::uint64_t seed = 0;
  std::vector<SampleRecord> records;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Null when everything passed.
  const CheckResult* first_failure() const;
};

SampleRecord evaluate_sample(std::uint64_t seed, std::size_t index);

VerificationSummary run_verification(const VerificationConfig& config);

/// Columns: sample_index, x, t, tau, residual_thm1, detB, residual_thm2,
/// residual_thm3_max, nk_defect.
void write_csv(std::ostream& out, const std::vector<SampleRecord>& records);

nlohmann::json summary_json(const VerificationSummary& summary, bool include_records);

}  // namespace nk::verify
