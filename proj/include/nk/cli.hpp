#pragma once

// Subcommands of the s3s3 tool, callable without a process boundary. Each
// returns the process exit code and writes its report to `out`.

#include "nk/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace nk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDomainError = 3;

enum class Format { json, csv };

int cmd_classify(const std::string& psi_path, double eps, std::ostream& out, std::ostream& err);

int cmd_pipeline(const std::string& acs_path, std::ostream& out, std::ostream& err);

/// Exactly one of acs_path / t must be set.
int cmd_curvature(const std::optional<std::string>& acs_path, std::optional<double> t, std::ostream& out,
                  std::ostream& err);

/// Writes the CSV or JSON report to `out_path` when given, else to `out`; a
/// one-line-per-check summary always goes to `err`.
int cmd_verify(const verify::VerificationConfig& config, Format format, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);

/// Emits a seeded orthogonal structure as JSON.
int cmd_sample(std::uint64_t seed, bool require_ao_minus, std::ostream& out, std::ostream& err);

/// Emits d omega_I for a structure file as a 3-form.
int cmd_dform(const std::string& acs_path, std::ostream& out, std::ostream& err);

}  // namespace nk::cli
