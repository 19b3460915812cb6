#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liebundle/symmetric_pair.hpp"

namespace liebundle {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + what),
        line_(line), field_(field) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct CorpusEntry {
  std::string id;
  std::string family;            // su | so | sp | su2xsu2 | exceptional names
  int n = 0;                     // rank parameter of the family
  int hp = 0, hq = 0;            // block parameters of the isotropy construction
  std::string h_spec;            // named isotropy construction
  std::string k_choice;          // first | second | trivial | all | factor names
  std::vector<double> s_values;
  std::string section;           // optional named section for the lift-section claim
  std::string section_action;    // acting subalgebra for the named section
  bool negative_control = false; // excluded from default runs
  bool corrupt_section = false;  // replace the section by a random subspace
  std::string skip_reason;       // nonempty: engine declines this entry
  std::vector<std::string> claims;  // empty: all applicable
  std::map<std::string, double> expected;
  int line = 0;
};

std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> parse_corpus(const std::string& text);

bool family_supported(const std::string& family);

/// Constructed algebra and decompositions for a corpus entry.
struct BuiltEntry {
  LieAlgebraPtr g;
  SymmetricPair pair;
  BundleSplit split;
  bool simple = false;  // whether g is a simple Lie algebra
};

BuiltEntry build_entry(const CorpusEntry& entry);

/// isotropy constructions, exposed for tests
std::vector<AlgebraElement> isotropy_generators(const CorpusEntry& entry, const LieAlgebraPtr& g);
std::vector<AlgebraElement> k_generators(const CorpusEntry& entry, const LieAlgebraPtr& g,
                                         const SymmetricPair& pair);

/// named section tangent spaces (lift-section claim)
Subspace named_section(const CorpusEntry& entry, const BuiltEntry& built);
Subspace named_action_algebra(const CorpusEntry& entry, const BuiltEntry& built);

}  // namespace liebundle
