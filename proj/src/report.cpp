#include "liebundle/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace liebundle {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

ordered_json claim_to_json(const ClaimRecord& c) {
  ordered_json j;
  j["claim"] = c.claim;
  if (c.s) j["s"] = *c.s;
  j["verdict"] = c.verdict;
  j["residual"] = c.residual;
  j["samples"] = c.samples;
  ordered_json vals = ordered_json::object();
  for (const auto& [k, v] : c.values) vals[k] = v;
  j["values"] = vals;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

ClaimRecord claim_from_json(const ordered_json& j) {
  ClaimRecord c;
  c.claim = j.at("claim").get<std::string>();
  if (j.contains("s")) c.s = j.at("s").get<double>();
  c.verdict = j.at("verdict").get<std::string>();
  c.residual = j.at("residual").get<double>();
  c.samples = j.at("samples").get<int>();
  for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it)
    c.values.emplace_back(it.key(), it.value().get<double>());
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  return c;
}

ordered_json report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["entry"] = r.entry_id;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["normalization"] = r.normalization;
  j["s_values"] = r.s_values;
  ordered_json claims = ordered_json::array();
  for (const auto& c : r.claims) claims.push_back(claim_to_json(c));
  j["claims"] = claims;
  j["summary"] = {{"pass", r.count("pass")},
                  {"fail", r.count("fail")},
                  {"reject", r.count("reject")},
                  {"skip", r.count("skip")}};
  return j;
}

VerificationReport report_from_json(const ordered_json& j) {
  VerificationReport r;
  r.entry_id = j.at("entry").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.samples = j.at("samples").get<int>();
  r.normalization = j.at("normalization").get<std::string>();
  r.s_values = j.at("s_values").get<std::vector<double>>();
  for (const auto& c : j.at("claims")) r.claims.push_back(claim_from_json(c));
  return r;
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "entry " << r.entry_id << "  (seed " << r.seed << ", samples " << r.samples << ")\n";
  if (!r.normalization.empty()) os << "  " << r.normalization << "\n";
  os << "  " << std::left << std::setw(18) << "claim" << std::setw(10) << "s"
     << std::setw(9) << "verdict" << std::setw(12) << "residual" << "values\n";
  for (const auto& c : r.claims) {
    std::ostringstream svals;
    for (const auto& [k, v] : c.values) {
      if (v == std::floor(v) && std::abs(v) < 1e6)
        svals << k << "=" << static_cast<long long>(v) << " ";
      else
        svals << k << "=" << sci(v) << " ";
    }
    std::ostringstream scol;
    if (c.s) scol << std::setprecision(6) << *c.s;
    else scol << "-";
    os << "  " << std::left << std::setw(18) << c.claim << std::setw(10) << scol.str()
       << std::setw(9) << c.verdict << std::setw(12) << sci(c.residual) << svals.str();
    if (!c.note.empty()) os << " [" << c.note << "]";
    os << "\n";
  }
  os << "  summary: " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
     << r.count("reject") << " reject, " << r.count("skip") << " skip";
  if (r.wall_seconds > 0.0) os << "  (" << std::setprecision(3) << r.wall_seconds << " s)";
  os << "\n";
  return os.str();
}

}  // namespace

std::string emit_report(const VerificationReport& report, ReportFormat format) {
  if (format == ReportFormat::Text) return render_text(report);
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["report"] = report_to_json(report);
  return j.dump(2) + "\n";
}

std::string emit_run(const std::vector<VerificationReport>& reports, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::string out;
    for (const auto& r : reports) out += render_text(r) + "\n";
    return out;
  }
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

VerificationReport parse_report(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (j.at("schema_version").get<int>() != kReportSchemaVersion)
    throw std::runtime_error("unsupported report schema version");
  return report_from_json(j.at("report"));
}

std::vector<VerificationReport> parse_run(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (j.at("schema_version").get<int>() != kReportSchemaVersion)
    throw std::runtime_error("unsupported report schema version");
  std::vector<VerificationReport> out;
  for (const auto& r : j.at("reports")) out.push_back(report_from_json(r));
  return out;
}

}  // namespace liebundle
