#include "liebundle/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace liebundle {

namespace {

const std::set<std::string> kKnownClaims = {
    "pair",       "split",        "brackets",  "reductive",      "irreducible",
    "transvection", "fixed-set",  "center",    "lift-hyperpolar", "lift-section"};

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool is_nonneg_integer(double v) { return v >= 0.0 && v == std::floor(v); }

}  // namespace

bool family_supported(const std::string& family) {
  return family == "su" || family == "so" || family == "sp" || family == "su2xsu2";
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<CorpusEntry> out;
  std::optional<CorpusEntry> cur;
  std::set<std::string> seen_ids;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& key = toks[0];

    if (key == "version") continue;

    if (key == "entry") {
      if (cur) throw ParseError(lineno, "entry", "previous entry not closed with 'end'");
      if (toks.size() != 2) throw ParseError(lineno, "entry", "expected one identifier");
      if (seen_ids.count(toks[1])) throw ParseError(lineno, "entry", "duplicate id " + toks[1]);
      seen_ids.insert(toks[1]);
      cur = CorpusEntry{};
      cur->id = toks[1];
      cur->line = lineno;
      continue;
    }
    if (!cur) throw ParseError(lineno, key, "directive outside an entry block");

    if (key == "end") {
      if (cur->family.empty()) throw ParseError(lineno, "family", "entry has no family");
      if (cur->skip_reason.empty()) {
        if (!family_supported(cur->family))
          throw ParseError(cur->line, "family",
                           "unsupported family '" + cur->family + "' must carry a skip reason");
        if (cur->family == "su" && cur->n < 2)
          throw ParseError(cur->line, "n", "su requires n >= 2");
        if (cur->family == "sp" && cur->n < 2)
          throw ParseError(cur->line, "n", "sp requires n >= 2");
        if (cur->family == "so" && cur->n < 3)
          throw ParseError(cur->line, "n", "so requires n >= 3");
        if (cur->h_spec.empty()) throw ParseError(cur->line, "h", "entry has no isotropy construction");
        if (cur->k_choice.empty()) throw ParseError(cur->line, "k", "entry has no k choice");
        if (cur->s_values.empty()) throw ParseError(cur->line, "s", "entry has no s values");
      }
      out.push_back(*cur);
      cur.reset();
      continue;
    }

    if (key == "family") {
      if (toks.size() != 2) throw ParseError(lineno, key, "expected one token");
      cur->family = toks[1];
    } else if (key == "n" || key == "hp" || key == "hq") {
      if (toks.size() != 2) throw ParseError(lineno, key, "expected one integer");
      int v = 0;
      try {
        v = std::stoi(toks[1]);
      } catch (...) {
        throw ParseError(lineno, key, "not an integer: " + toks[1]);
      }
      if (v < 0) throw ParseError(lineno, key, "must be nonnegative");
      if (key == "n") cur->n = v;
      else if (key == "hp") cur->hp = v;
      else cur->hq = v;
    } else if (key == "h") {
      if (toks.size() != 2) throw ParseError(lineno, key, "expected one construction name");
      cur->h_spec = toks[1];
    } else if (key == "k") {
      std::string choice;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (i > 1) choice += " ";
        choice += toks[i];
      }
      if (choice.empty()) throw ParseError(lineno, key, "empty k choice");
      cur->k_choice = choice;
    } else if (key == "s") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        double v = 0;
        try {
          v = std::stod(toks[i]);
        } catch (...) {
          throw ParseError(lineno, key, "not a number: " + toks[i]);
        }
        if (!(v > 0.0)) throw ParseError(lineno, key, "s values must be positive");
        cur->s_values.push_back(v);
      }
      if (cur->s_values.empty()) throw ParseError(lineno, key, "expected at least one value");
    } else if (key == "section") {
      if (toks.size() != 2) throw ParseError(lineno, key, "expected one section name");
      cur->section = toks[1];
    } else if (key == "section-action") {
      if (toks.size() != 2) throw ParseError(lineno, key, "expected one action name");
      cur->section_action = toks[1];
    } else if (key == "control") {
      cur->negative_control = true;
    } else if (key == "corrupt-section") {
      cur->corrupt_section = true;
      cur->negative_control = true;
    } else if (key == "skip") {
      if (toks.size() < 2) throw ParseError(lineno, key, "expected a reason");
      cur->skip_reason = toks[1];
    } else if (key == "claims") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!kKnownClaims.count(toks[i]))
          throw ParseError(lineno, key, "unknown claim " + toks[i]);
        cur->claims.push_back(toks[i]);
      }
    } else if (key == "expect") {
      if (toks.size() != 3) throw ParseError(lineno, key, "expected a name and a value");
      double v = 0;
      try {
        v = std::stod(toks[2]);
      } catch (...) {
        throw ParseError(lineno, key, "not a number: " + toks[2]);
      }
      if (toks[1].rfind("dim_", 0) == 0 && !is_nonneg_integer(v))
        throw ParseError(lineno, key, "dimension must be a nonnegative integer");
      cur->expected[toks[1]] = v;
    } else {
      throw ParseError(lineno, key, "unknown directive");
    }
  }
  if (cur) throw ParseError(lineno, "end", "unterminated entry " + cur->id);
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

// ---------------------------------------------------------------------------
// isotropy constructions
// ---------------------------------------------------------------------------

namespace {

AlgebraElement to_element(const LieAlgebraPtr& g, const Mat& ambient) {
  double resid = 0.0;
  Vec c = g->coordinates(ambient, &resid);
  if (resid > 1e-8 * (1.0 + ambient.norm()))
    throw std::invalid_argument("generator matrix does not lie in the algebra");
  return AlgebraElement{g, c};
}

void append_realified(std::vector<AlgebraElement>& out, const LieAlgebraPtr& g,
                      const std::vector<CMat>& zs) {
  for (const CMat& z : zs) out.push_back(to_element(g, realify(z)));
}

// i * diag(q,...,q, -p,...,-p): the trace ideal of s(u(p)u(q))
CMat su_trace_element(int p, int q) {
  CMat d = CMat::Zero(p + q, p + q);
  for (int i = 0; i < p; ++i) d(i, i) = std::complex<double>(0.0, static_cast<double>(q));
  for (int i = p; i < p + q; ++i) d(i, i) = std::complex<double>(0.0, -static_cast<double>(p));
  return d;
}

// complex su(m) block at a diagonal offset inside su(n)
std::vector<CMat> su_block(int m, int total, int offset) {
  std::vector<CMat> out;
  for (const CMat& z : gens::su_complex(m)) {
    CMat big = CMat::Zero(total, total);
    big.block(offset, offset, m, m) = z;
    out.push_back(big);
  }
  return out;
}

// self-dual / anti-self-dual so(3) factors of so(4), as real 4x4 blocks
std::vector<Mat> so4_factor(bool self_dual, int total, int offset) {
  auto e = [&](int i, int j) {
    Mat m = Mat::Zero(total, total);
    m(offset + i, offset + j) = 1.0;
    m(offset + j, offset + i) = -1.0;
    return m;
  };
  double sign = self_dual ? 1.0 : -1.0;
  return {e(0, 1) + sign * e(2, 3), e(0, 2) - sign * e(1, 3), e(0, 3) + sign * e(1, 2)};
}

// u(n) inside so(2n): [[A,-B],[B,A]] with A skew, B symmetric
std::vector<Mat> u_in_so_su_part(int n) {
  std::vector<Mat> out;
  for (const CMat& z : gens::su_complex(n)) out.push_back(realify(z));
  return out;
}

Mat u_in_so_center(int n) {
  CMat z = CMat::Identity(n, n) * std::complex<double>(0.0, 1.0);
  return realify(z);
}

// u(n) inside sp(n): the A-part with B = 0, complex 2n matrices
std::vector<CMat> u_in_sp_su_part(int n) {
  std::vector<CMat> out;
  for (const CMat& a : gens::su_complex(n)) {
    CMat z = CMat::Zero(2 * n, 2 * n);
    z.topLeftCorner(n, n) = a;
    z.bottomRightCorner(n, n) = a.conjugate();
    out.push_back(z);
  }
  return out;
}

CMat u_in_sp_center(int n) {
  CMat z = CMat::Zero(2 * n, 2 * n);
  z.topLeftCorner(n, n) = CMat::Identity(n, n) * std::complex<double>(0.0, 1.0);
  z.bottomRightCorner(n, n) = CMat::Identity(n, n) * std::complex<double>(0.0, -1.0);
  return z;
}

// named factor -> generators of that ideal of h
std::vector<AlgebraElement> factor_generators(const CorpusEntry& e, const LieAlgebraPtr& g,
                                              const std::string& factor) {
  std::vector<AlgebraElement> out;
  const int p = e.hp, q = e.hq, n = e.n;
  if (e.h_spec == "s(u(p)u(q))") {
    if (factor == "su_p") {
      if (p >= 2) append_realified(out, g, su_block(p, n, 0));
      return out;
    }
    if (factor == "su_q") {
      if (q >= 2) append_realified(out, g, su_block(q, n, p));
      return out;
    }
    if (factor == "u1") {
      out.push_back(to_element(g, realify(su_trace_element(p, q))));
      return out;
    }
  } else if (e.h_spec == "so(p)so(q)") {
    if (factor == "so_p") {
      for (const Mat& m : gens::so_real(p, n, 0)) out.push_back(to_element(g, m));
      return out;
    }
    if (factor == "so_q") {
      for (const Mat& m : gens::so_real(q, n, p)) out.push_back(to_element(g, m));
      return out;
    }
  } else if (e.h_spec == "sp(p)sp(q)") {
    if (factor == "sp_p") {
      append_realified(out, g, gens::sp_complex(p, n, 0));
      return out;
    }
    if (factor == "sp_q") {
      append_realified(out, g, gens::sp_complex(q, n, p));
      return out;
    }
  } else if (e.h_spec == "u(n)") {  // inside so(2n); e.n is 2n
    const int half = n / 2;
    if (factor == "su_n") {
      for (const Mat& m : u_in_so_su_part(half)) out.push_back(to_element(g, m));
      return out;
    }
    if (factor == "u1") {
      out.push_back(to_element(g, u_in_so_center(half)));
      return out;
    }
  } else if (e.h_spec == "u(n)-sp") {  // inside sp(n)
    if (factor == "su_n") {
      append_realified(out, g, u_in_sp_su_part(n));
      return out;
    }
    if (factor == "u1") {
      out.push_back(to_element(g, realify(u_in_sp_center(n))));
      return out;
    }
  } else if (e.h_spec == "so(n)-real") {  // real so(n) inside su(n)
    if (factor == "so3_plus" || factor == "so3_minus") {
      if (n != 4) throw std::invalid_argument("so(n)-real has so(3) factors only for n = 4");
      for (const Mat& m : so4_factor(factor == "so3_plus", n, 0))
        out.push_back(to_element(g, realify(m.cast<std::complex<double>>())));
      return out;
    }
    if (factor == "diag_so3") {  // so(3) of the leading 3x3 block; not an ideal
      for (const Mat& m : gens::so_real(3, n, 0))
        out.push_back(to_element(g, realify(m.cast<std::complex<double>>())));
      return out;
    }
  } else if (e.h_spec == "so(4)so(q)") {  // inside so(4+q)
    if (factor == "so3_plus" || factor == "so3_minus") {
      for (const Mat& m : so4_factor(factor == "so3_plus", n, 0)) out.push_back(to_element(g, m));
      return out;
    }
    if (factor == "so_q") {
      for (const Mat& m : gens::so_real(n - 4, n, 4)) out.push_back(to_element(g, m));
      return out;
    }
  } else if (e.h_spec == "torus") {  // u(1)+u(1) inside su(2)+su(2)
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = std::complex<double>(0.0, 1.0);
    d(1, 1) = std::complex<double>(0.0, -1.0);
    Mat r = realify(d);
    Mat big = Mat::Zero(8, 8);
    if (factor == "u1_a") {
      big.topLeftCorner(4, 4) = r;
      out.push_back(to_element(g, big));
      return out;
    }
    if (factor == "u1_b") {
      big.bottomRightCorner(4, 4) = r;
      out.push_back(to_element(g, big));
      return out;
    }
  }
  throw std::invalid_argument("unknown factor '" + factor + "' for construction " + e.h_spec);
}

std::vector<std::string> all_factors(const CorpusEntry& e) {
  if (e.h_spec == "s(u(p)u(q))") return {"su_p", "su_q", "u1"};
  if (e.h_spec == "so(p)so(q)") return {"so_p", "so_q"};
  if (e.h_spec == "sp(p)sp(q)") return {"sp_p", "sp_q"};
  if (e.h_spec == "u(n)" || e.h_spec == "u(n)-sp") return {"su_n", "u1"};
  if (e.h_spec == "so(n)-real") return {"so3_plus", "so3_minus"};
  if (e.h_spec == "so(4)so(q)") return {"so3_plus", "so3_minus", "so_q"};
  if (e.h_spec == "torus") return {"u1_a", "u1_b"};
  throw std::invalid_argument("unknown isotropy construction " + e.h_spec);
}

std::vector<std::string> canonical_choice(const CorpusEntry& e, bool first) {
  if (e.h_spec == "s(u(p)u(q))") {
    if (first) return {"su_p", "su_q"};
    return {"u1"};
  }
  if (e.h_spec == "so(p)so(q)") return first ? std::vector<std::string>{"so_p"}
                                             : std::vector<std::string>{"so_q"};
  if (e.h_spec == "sp(p)sp(q)") return first ? std::vector<std::string>{"sp_p"}
                                             : std::vector<std::string>{"sp_q"};
  if (e.h_spec == "u(n)" || e.h_spec == "u(n)-sp")
    return first ? std::vector<std::string>{"su_n"} : std::vector<std::string>{"u1"};
  if (e.h_spec == "so(n)-real")
    return first ? std::vector<std::string>{"so3_plus"} : std::vector<std::string>{"so3_minus"};
  if (e.h_spec == "so(4)so(q)")
    return first ? std::vector<std::string>{"so3_plus", "so_q"}
                 : std::vector<std::string>{"so3_minus"};
  if (e.h_spec == "torus")
    return first ? std::vector<std::string>{"u1_a"} : std::vector<std::string>{"u1_b"};
  throw std::invalid_argument("unknown isotropy construction " + e.h_spec);
}

}  // namespace

std::vector<AlgebraElement> isotropy_generators(const CorpusEntry& entry, const LieAlgebraPtr& g) {
  std::vector<AlgebraElement> out;
  for (const std::string& f : all_factors(entry)) {
    auto gens = factor_generators(entry, g, f);
    out.insert(out.end(), gens.begin(), gens.end());
  }
  if (out.empty()) throw std::invalid_argument("isotropy construction produced no generators");
  return out;
}

std::vector<AlgebraElement> k_generators(const CorpusEntry& entry, const LieAlgebraPtr& g,
                                         const SymmetricPair& pair) {
  if (entry.k_choice == "trivial") return {};
  std::vector<std::string> factors;
  if (entry.k_choice == "all") {
    // use the h generators themselves
    return isotropy_generators(entry, g);
  } else if (entry.k_choice == "first") {
    factors = canonical_choice(entry, true);
  } else if (entry.k_choice == "second") {
    factors = canonical_choice(entry, false);
  } else {
    std::istringstream in(entry.k_choice);
    std::string tok;
    while (in >> tok) factors.push_back(tok);
  }
  std::vector<AlgebraElement> out;
  for (const std::string& f : factors) {
    auto gens = factor_generators(entry, g, f);
    out.insert(out.end(), gens.begin(), gens.end());
  }
  (void)pair;
  return out;
}

BuiltEntry build_entry(const CorpusEntry& entry) {
  if (!entry.skip_reason.empty())
    throw std::invalid_argument("entry " + entry.id + " is marked skip: " + entry.skip_reason);
  LieAlgebraPtr g;
  bool simple = false;
  if (entry.family == "su") {
    g = LieAlgebra::classical(Family::SU, entry.n);
    simple = true;
  } else if (entry.family == "so") {
    g = LieAlgebra::classical(Family::SO, entry.n);
    simple = (entry.n != 4);
  } else if (entry.family == "sp") {
    g = LieAlgebra::classical(Family::SP, entry.n);
    simple = true;
  } else if (entry.family == "su2xsu2") {
    auto su2 = LieAlgebra::classical(Family::SU, 2);
    g = LieAlgebra::direct_sum(su2, su2);
    simple = false;
  } else {
    throw std::invalid_argument("unsupported family " + entry.family);
  }
  SymmetricPair pair = make_symmetric_pair(g, isotropy_generators(entry, g));
  BundleSplit split = split_isotropy(pair, k_generators(entry, g, pair));
  return BuiltEntry{g, pair, split, simple};
}

Subspace named_section(const CorpusEntry& entry, const BuiltEntry& built) {
  if (entry.section == "real-points" && entry.h_spec == "s(u(p)u(q))" && entry.hq == 1) {
    // tangent of the real locus at the basepoint: real off-diagonal entries
    // of the last column
    const int n = entry.n;
    Mat span(built.g->dim(), entry.hp);
    for (int i = 0; i < entry.hp; ++i) {
      CMat f = CMat::Zero(n, n);
      f(i, n - 1) = 1.0;
      f(n - 1, i) = -1.0;
      span.col(i) = built.g->coordinates(realify(f));
    }
    return Subspace::from_span(span, built.g->form());
  }
  throw std::invalid_argument("entry " + entry.id + " has no section named " + entry.section);
}

Subspace named_action_algebra(const CorpusEntry& entry, const BuiltEntry& built) {
  if (entry.section_action == "torus" && entry.family == "su") {
    const int n = entry.n;
    const std::complex<double> i1(0.0, 1.0);
    Mat span(built.g->dim(), n - 1);
    for (int k = 0; k + 1 < n; ++k) {
      CMat d = CMat::Zero(n, n);
      for (int l = 0; l <= k; ++l) d(l, l) = i1;
      d(k + 1, k + 1) = -static_cast<double>(k + 1) * i1;
      span.col(k) = built.g->coordinates(realify(d));
    }
    return Subspace::from_span(span, built.g->form());
  }
  throw std::invalid_argument("entry " + entry.id + " has no action named " + entry.section_action);
}

}  // namespace liebundle
