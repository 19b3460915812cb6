#pragma once

#include <cstdint>
#include <optional>

#include "liebundle/corpus.hpp"

namespace liebundle {

struct ClaimRecord {
  std::string claim;
  std::optional<double> s;  // empty for s-independent claims
  std::string verdict;      // pass | fail | reject | skip
  double residual = 0.0;
  int samples = 0;
  std::vector<std::pair<std::string, double>> values;
  std::string note;
};

struct VerificationReport {
  std::string entry_id;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string normalization;
  std::vector<double> s_values;
  std::vector<ClaimRecord> claims;
  double wall_seconds = 0.0;

  int count(const std::string& verdict) const;
  bool all_pass() const;  // no fail and no reject
  bool rejected() const;
};

struct RunOptions {
  std::uint64_t seed = 20260810;
  int samples = 20;
  std::vector<std::string> claims;     // empty: all applicable
  std::vector<double> s_override;      // empty: the entry's s values
  std::optional<double> tol_override;  // replaces all residual thresholds
};

/// Executes the requested claims in dependency order, compares residuals
/// and dimensions against the entry's expectations, and aggregates a
/// structured report.  Construction rejections are recorded as `reject`
/// verdicts rather than thrown.
VerificationReport run_pipeline(const CorpusEntry& entry, const RunOptions& opts);

}  // namespace liebundle
