#pragma once

#include <string>
#include <vector>

#include "liebundle/pipeline.hpp"

namespace liebundle {

enum class ReportFormat { Text, Structured };

/// Renders one report.  The text format is a human-readable aligned table;
/// the structured format is versioned JSON that is byte-stable for a fixed
/// seed (volatile timing data is text-only).
std::string emit_report(const VerificationReport& report, ReportFormat format);

/// Renders a whole run (several entries) into one document.
std::string emit_run(const std::vector<VerificationReport>& reports, ReportFormat format);

/// Parses a structured single-report document back; inverse of emit_report.
VerificationReport parse_report(const std::string& text);
std::vector<VerificationReport> parse_run(const std::string& text);

inline constexpr int kReportSchemaVersion = 1;

}  // namespace liebundle
