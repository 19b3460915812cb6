// Corpus-driven verification front end.  Exit codes: 0 all claims matched,
// 1 verification mismatch, 2 construction rejection, 3 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "liebundle/report.hpp"

using namespace liebundle;

int main(int argc, char** argv) {
  CLI::App app{"verify deformed homogeneous-bundle metrics over a corpus"};
  app.get_formatter()->column_width(34);

  std::string corpus_path;
  std::vector<std::string> entry_ids;
  std::vector<std::string> claims;
  std::vector<double> s_values;
  int samples = 20;
  std::uint64_t seed = 20260810;
  double tol = -1.0;
  std::string format = "text";
  std::string out_path;
  bool include_controls = false;
  bool list_only = false;

  app.add_option("--corpus", corpus_path, "corpus file")->required();
  app.add_option("--entry", entry_ids, "run only these entry ids (repeatable)");
  app.add_option("--claims", claims, "comma/space separated claim subset")->delimiter(',');
  app.add_option("--s", s_values, "override the deformation parameters")->delimiter(',');
  app.add_option("--samples", samples, "sampled points per lift check")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed recorded in every report");
  app.add_option("--tol", tol, "override all residual thresholds");
  app.add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_flag("--include-controls", include_controls,
               "also run entries marked as negative controls");
  app.add_flag("--list", list_only, "list corpus entries and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  std::vector<CorpusEntry> corpus;
  try {
    corpus = load_corpus(corpus_path);
  } catch (const std::exception& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return 3;
  }

  if (list_only) {
    for (const auto& e : corpus) {
      std::cout << e.id << "  family=" << e.family;
      if (!e.skip_reason.empty()) std::cout << "  [skip: " << e.skip_reason << "]";
      if (e.negative_control) std::cout << "  [negative control]";
      std::cout << "\n";
    }
    return 0;
  }

  std::vector<const CorpusEntry*> selected;
  if (entry_ids.empty()) {
    for (const auto& e : corpus)
      if (!e.negative_control || include_controls) selected.push_back(&e);
  } else {
    for (const auto& id : entry_ids) {
      const CorpusEntry* found = nullptr;
      for (const auto& e : corpus)
        if (e.id == id) found = &e;
      if (!found) {
        std::cerr << "no corpus entry named " << id << "\n";
        return 3;
      }
      selected.push_back(found);
    }
  }

  RunOptions opts;
  opts.seed = seed;
  opts.samples = samples;
  opts.claims = claims;
  opts.s_override = s_values;
  if (tol > 0.0) opts.tol_override = tol;

  std::vector<VerificationReport> reports;
  for (const CorpusEntry* e : selected) {
    try {
      reports.push_back(run_pipeline(*e, opts));
    } catch (const std::exception& ex) {
      std::cerr << "entry " << e->id << ": " << ex.what() << "\n";
      return 2;
    }
  }

  ReportFormat fmt = (format == "text") ? ReportFormat::Text : ReportFormat::Structured;
  std::string doc = emit_run(reports, fmt);
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 3;
    }
    out << doc;
  }

  bool any_reject = false, any_fail = false;
  for (const auto& r : reports) {
    any_reject |= r.rejected();
    any_fail |= r.count("fail") > 0;
  }
  if (any_reject) return 2;
  if (any_fail) return 1;
  return 0;
}
