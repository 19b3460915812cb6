// Acceptance suite: runs every verification criterion over the bundled
// corpus and prints one pass/fail line per criterion.  Returns nonzero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "liebundle/holonomy.hpp"
#include "liebundle/polar.hpp"
#include "liebundle/report.hpp"

using namespace liebundle;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << n << " (" << name
            << ")";
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double now_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Ctx {
  std::vector<CorpusEntry> corpus;
  std::vector<const CorpusEntry*> active;  // supported, not negative controls
  std::map<std::string, BuiltEntry> built;

  const BuiltEntry& get(const std::string& id) { return built.at(id); }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

int run_cli(const std::string& args, const std::string& log_file) {
  std::string cmd = std::string(VERIFY_BIN) + " " + args + " > " + log_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  Ctx ctx;
  ctx.corpus = load_corpus(CORPUS_FILE);
  for (const auto& e : ctx.corpus)
    if (e.skip_reason.empty() && !e.negative_control) ctx.active.push_back(&e);

  // ---- criterion 1: algebra axioms --------------------------------------
  {
    bool ok = true;
    double worst = 0.0, slowest = 0.0;
    for (const CorpusEntry* e : ctx.active) {
      auto t0 = std::chrono::steady_clock::now();
      BuiltEntry b = build_entry(*e);
      double dt = now_seconds(t0);
      slowest = std::max(slowest, dt);
      worst = std::max({worst, b.g->jacobi_residual(), b.g->ad_invariance_residual()});
      ok &= b.g->jacobi_residual() < 1e-10 && b.g->ad_invariance_residual() < 1e-10;
      ok &= dt < 5.0;
      ctx.built.emplace(e->id, std::move(b));
    }
    criterion(1, "algebra axioms", ok,
              "max residual " + fmt(worst) + ", slowest build " + fmt(slowest) + " s");
  }

  // ---- criterion 2: cartan and split relations ---------------------------
  {
    bool ok = true;
    double worst = 0.0;
    for (const CorpusEntry* e : ctx.active) {
      const BuiltEntry& b = ctx.get(e->id);
      worst = std::max({worst, b.pair.cartan_residual, b.split.ideal_residual});
      ok &= b.pair.cartan_residual < 1e-10 && b.split.ideal_residual < 1e-10;
      auto dim_ok = [&](const char* key, Index got) {
        auto it = e->expected.find(key);
        if (it == e->expected.end()) return true;
        return it->second == static_cast<double>(got);
      };
      ok &= dim_ok("dim_h", b.pair.h.dim()) && dim_ok("dim_p1", b.pair.p1.dim()) &&
            dim_ok("dim_k", b.split.k.dim()) && dim_ok("dim_p2", b.split.p2.dim()) &&
            dim_ok("dim_q", b.split.q.dim());
    }
    criterion(2, "cartan and split relations", ok, "max residual " + fmt(worst));
  }

  // ---- criterion 3: bracket formulas -------------------------------------
  {
    bool ok = true;
    double worst = 0.0;
    for (const CorpusEntry* e : ctx.active) {
      for (double s : {0.5, 1.0 / std::sqrt(2.0), 1.0, 2.0}) {
        BarModel bar(ctx.get(e->id).split, s);
        SeededRng rng(mix_seed(1, e->id + std::to_string(s)));
        auto rep = bracket_formula_check(bar, 100, rng);
        worst = std::max(worst, rep.max_residual);
        ok &= rep.max_residual < 1e-10;
      }
    }
    criterion(3, "bracket formulas", ok, "max residual " + fmt(worst) + " over 100 samples");
  }

  // ---- criterion 4: natural reductivity ----------------------------------
  {
    bool ok = true;
    double worst = 0.0;
    for (const CorpusEntry* e : ctx.active) {
      for (double s : {0.5, 1.0, 2.0}) {
        BarModel bar(ctx.get(e->id).split, s);
        double r = natural_reductivity_check(bar);
        worst = std::max(worst, r);
        ok &= r < 1e-10;
      }
    }
    criterion(4, "natural reductivity", ok, "max skewness residual " + fmt(worst));
  }

  // ---- criterion 5: local irreducibility ---------------------------------
  {
    bool ok = true;
    double slowest = 0.0;
    std::string note;
    for (const CorpusEntry* e : ctx.active) {
      const BuiltEntry& b = ctx.get(e->id);
      auto t0 = std::chrono::steady_clock::now();
      for (double s : {0.5, 2.0}) {
        BarModel bar(b.split, s);
        MetricGs metric = metric_gs(b.split, s);
        auto verdict = irreducibility_check(holonomy_algebra(bar), metric);
        if (b.simple) {
          ok &= verdict.irreducible && verdict.commutant_dim == 1;
        } else {
          ok &= !verdict.irreducible && verdict.commutant_dim >= 2;
          ok &= verdict.projectors.size() >= 2;
          ok &= verdict.invariance_residual < 1e-8;
          note = "control commutant dim " + std::to_string(verdict.commutant_dim) +
                 ", invariance " + fmt(verdict.invariance_residual);
        }
      }
      slowest = std::max(slowest, now_seconds(t0));
      ok &= now_seconds(t0) < 30.0;
    }
    criterion(5, "local irreducibility", ok, note + ", slowest entry " + fmt(slowest) + " s");
  }

  // ---- criterion 6: transvection dichotomy -------------------------------
  {
    bool ok = true;
    for (const CorpusEntry* e : ctx.active) {
      const BuiltEntry& b = ctx.get(e->id);
      if (!b.simple) continue;
      for (double s : {0.5, 2.0}) {
        BarModel bar(b.split, s);
        ok &= transvection_algebra(bar).dim == b.g->dim() + b.split.p2.dim();
      }
      BarModel bar(b.split, 1.0);
      ok &= transvection_algebra(bar).dim == b.g->dim();
    }
    criterion(6, "transvection dichotomy", ok, "");
  }

  // ---- criterion 7: fixed sets -------------------------------------------
  {
    bool ok = true;
    double worst = 0.0;
    for (const CorpusEntry* e : ctx.active) {
      const BuiltEntry& b = ctx.get(e->id);
      auto fs_res = fixed_set_adk(b.split);
      if (b.split.k.dim() == 0) {
        ok &= fs_res.vacuous && fs_res.fixed.dim() == b.split.q.dim();
      } else if (b.simple) {
        worst = std::max(worst, fs_res.p2_residual);
        ok &= fs_res.equals_p2 && fs_res.fixed.dim() == b.split.p2.dim() &&
              fs_res.p2_residual < 1e-10;
      }
    }
    criterion(7, "fixed sets", ok, "max containment residual " + fmt(worst));
  }

  // ---- criteria 8 and 9: lifted polar actions ----------------------------
  {
    bool ok8 = true, ok9 = true;
    double worst_orth = 0.0, worst_vert = 0.0;
    auto run_lift = [&](const BuiltEntry& b, const Subspace& m, const ActionSpec& action,
                        double s, const std::string& tag) {
      MetricGs metric = metric_gs(b.split, s);
      SectionCandidate sc = section_algebra(b.split, m);
      ok8 &= sc.hypothesis_ok;
      SeededRng r1(mix_seed(2, tag));
      auto pol = polarity_check(b.split, metric, action, sc, 20, r1);
      SeededRng r2(mix_seed(3, tag));
      auto hor = horizontality_check(b.split, metric, sc, 20, r2);
      SeededRng r3(mix_seed(4, tag));
      auto vert = verticality_claim_check(b.split, metric, action, sc, 20, r3);
      worst_orth = std::max({worst_orth, pol.max_orthogonality, hor.max_residual});
      worst_vert = std::max(worst_vert, vert.max_residual);
      ok8 &= pol.max_orthogonality < 1e-8 && hor.max_residual < 1e-8;
      ok8 &= pol.dims_add && pol.orbit_dim_max + m.dim() == b.split.q.dim();
      ok8 &= pol.regular_samples > 0;
      ok9 &= vert.max_residual < 1e-10 && vert.regular_samples > 0;
    };

    for (const CorpusEntry* e : ctx.active) {
      const BuiltEntry& b = ctx.get(e->id);
      SeededRng rm(mix_seed(5, e->id));
      Subspace m = maximal_abelian_in_p1(b.pair, rm);
      ActionSpec lifted = make_action(*b.g, b.pair.h, true);
      for (double s : e->s_values)
        run_lift(b, m, lifted, s, e->id + "/hyper@" + std::to_string(s));
    }
    {
      const CorpusEntry& e = *std::find_if(ctx.corpus.begin(), ctx.corpus.end(),
                                           [](const CorpusEntry& c) { return c.id == "su3_cp2"; });
      const BuiltEntry& b = ctx.get("su3_cp2");
      Subspace m = named_section(e, b);
      ActionSpec torus = make_action(*b.g, named_action_algebra(e, b), true);
      for (double s : {0.5, 2.0}) run_lift(b, m, torus, s, "su3_cp2/section@" + std::to_string(s));
    }
    criterion(8, "polar lifting", ok8, "max orthogonality residual " + fmt(worst_orth));
    criterion(9, "verticality claim", ok9, "max containment residual " + fmt(worst_vert));
  }

  // ---- criterion 10: negative controls through the CLI -------------------
  {
    fs::path tmp = fs::temp_directory_path();
    std::string out1 = (tmp / "acc_nonideal.json").string();
    std::string out2 = (tmp / "acc_corrupt.json").string();
    int rc1 = run_cli("--corpus " CORPUS_FILE
                      " --entry su4_so4_nonideal --format structured --out " + out1,
                      out1 + ".log");
    int rc2 = run_cli("--corpus " CORPUS_FILE
                      " --entry su4_so4_corrupt --format structured --out " + out2,
                      out2 + ".log");
    bool ok = rc1 == 2 && rc2 == 1;
    double res1 = 0.0, res2 = 0.0;
    try {
      auto rep1 = parse_run(slurp(out1));
      auto rep2 = parse_run(slurp(out2));
      for (const auto& c : rep1.at(0).claims)
        if (c.verdict == "reject") res1 = c.residual;
      for (const auto& c : rep2.at(0).claims)
        if (c.verdict == "fail") res2 = c.residual;
    } catch (const std::exception&) {
      ok = false;
    }
    ok &= res1 > 1e-2 && res2 > 1e-2;
    criterion(10, "negative controls", ok,
              "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", residuals " +
                  fmt(res1) + "/" + fmt(res2));
  }

  // ---- criterion 11: determinism ------------------------------------------
  {
    fs::path tmp = fs::temp_directory_path();
    std::string a = (tmp / "acc_run_a.json").string();
    std::string b = (tmp / "acc_run_b.json").string();
    int rc1 = run_cli("--corpus " CORPUS_FILE " --seed 424242 --format structured --out " + a,
                      a + ".log");
    int rc2 = run_cli("--corpus " CORPUS_FILE " --seed 424242 --format structured --out " + b,
                      b + ".log");
    std::string da = slurp(a), db = slurp(b);
    bool ok = rc1 == 0 && rc2 == 0 && !da.empty() && da == db;
    criterion(11, "determinism", ok, "two full runs, " + std::to_string(da.size()) + " bytes each");
  }

  std::cout << (g_failures ? "ACCEPTANCE: FAILED" : "ACCEPTANCE: OK") << " (" << g_failures
            << " failing criteria)" << std::endl;
  return g_failures ? 1 : 0;
}
