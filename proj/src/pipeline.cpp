#include "liebundle/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include "liebundle/holonomy.hpp"
#include "liebundle/polar.hpp"
#include "liebundle/rng.hpp"

namespace liebundle {

int VerificationReport::count(const std::string& verdict) const {
  int n = 0;
  for (const auto& c : claims)
    if (c.verdict == verdict) ++n;
  return n;
}

bool VerificationReport::all_pass() const { return count("fail") == 0 && count("reject") == 0; }

bool VerificationReport::rejected() const { return count("reject") > 0; }

namespace {

constexpr double kTolLift = 1e-8;

struct ClaimContext {
  const CorpusEntry& entry;
  const RunOptions& opts;
  VerificationReport& report;

  double tol(double def) const { return opts.tol_override.value_or(def); }

  SeededRng rng(const std::string& claim, double s = -1.0) const {
    std::string tag = entry.id + "/" + claim;
    if (s >= 0.0) tag += "@" + std::to_string(s);
    return SeededRng(mix_seed(opts.seed, tag));
  }

  // expectation lookup; verdicts only test what the corpus records
  bool expect_eq(ClaimRecord& rec, const std::string& key, double got) const {
    rec.values.emplace_back(key, got);
    auto it = entry.expected.find(key);
    if (it == entry.expected.end()) return true;
    if (it->second == got) return true;
    rec.note += " " + key + ": expected " + std::to_string(it->second) + " got " +
                std::to_string(got);
    return false;
  }
};

void finish(ClaimRecord& rec, bool ok) { rec.verdict = ok ? "pass" : "fail"; }

void run_pair_claim(ClaimContext& ctx, const BuiltEntry& built) {
  ClaimRecord rec;
  rec.claim = "pair";
  const LieAlgebra& g = *built.g;
  double resid = std::max({g.jacobi_residual(), g.ad_invariance_residual(),
                           built.pair.cartan_residual, built.pair.h.orthonormality_residual(),
                           built.pair.p1.orthonormality_residual()});
  rec.residual = resid;
  rec.values.emplace_back("jacobi", g.jacobi_residual());
  rec.values.emplace_back("ad_invariance", g.ad_invariance_residual());
  bool ok = resid < ctx.tol(kTolAlg);
  ok &= ctx.expect_eq(rec, "dim_g", static_cast<double>(g.dim()));
  ok &= ctx.expect_eq(rec, "dim_h", static_cast<double>(built.pair.h.dim()));
  ok &= ctx.expect_eq(rec, "dim_p1", static_cast<double>(built.pair.p1.dim()));
  finish(rec, ok);
  ctx.report.claims.push_back(std::move(rec));
}

void run_split_claim(ClaimContext& ctx, const BuiltEntry& built) {
  ClaimRecord rec;
  rec.claim = "split";
  rec.residual = built.split.ideal_residual;
  bool ok = rec.residual < ctx.tol(kTolAlg);
  ok &= ctx.expect_eq(rec, "dim_k", static_cast<double>(built.split.k.dim()));
  ok &= ctx.expect_eq(rec, "dim_p2", static_cast<double>(built.split.p2.dim()));
  ok &= ctx.expect_eq(rec, "dim_q", static_cast<double>(built.split.q.dim()));
  finish(rec, ok);
  ctx.report.claims.push_back(std::move(rec));
}

void run_brackets_claim(ClaimContext& ctx, const BuiltEntry& built, double s) {
  ClaimRecord rec;
  rec.claim = "brackets";
  rec.s = s;
  BarModel bar(built.split, s);
  SeededRng rng = ctx.rng("brackets", s);
  auto rep = bracket_formula_check(bar, 100, rng);
  rec.residual = rep.max_residual;
  rec.samples = rep.samples;
  rec.values.emplace_back("model_residual", bar.model_residual());
  finish(rec, rec.residual < ctx.tol(kTolAlg) && bar.model_residual() < ctx.tol(kTolAlg));
  ctx.report.claims.push_back(std::move(rec));
}

void run_reductive_claim(ClaimContext& ctx, const BuiltEntry& built, double s) {
  ClaimRecord rec;
  rec.claim = "reductive";
  rec.s = s;
  BarModel bar(built.split, s);
  MetricGs metric = metric_gs(built.split, s);
  rec.residual = std::max(natural_reductivity_check(bar), metric.pullback_residual);
  rec.values.emplace_back("pullback_residual", metric.pullback_residual);
  finish(rec, rec.residual < ctx.tol(kTolAlg));
  ctx.report.claims.push_back(std::move(rec));
}

void run_irreducible_claim(ClaimContext& ctx, const BuiltEntry& built, double s) {
  ClaimRecord rec;
  rec.claim = "irreducible";
  rec.s = s;
  BarModel bar(built.split, s);
  MetricGs metric = metric_gs(built.split, s);
  HolonomySet hol = holonomy_algebra(bar);
  IrreducibilityVerdict verdict = irreducibility_check(hol, metric);
  rec.residual = std::max(hol.skewness_residual, hol.closedness_residual);
  rec.values.emplace_back("holonomy_dim", static_cast<double>(hol.closure.size()));
  bool ok = rec.residual < ctx.tol(kTolAlg);
  ok &= ctx.expect_eq(rec, "commutant_dim", static_cast<double>(verdict.commutant_dim));
  ok &= ctx.expect_eq(rec, "irreducible", verdict.irreducible ? 1.0 : 0.0);
  auto want_min = ctx.entry.expected.find("commutant_min");
  if (want_min != ctx.entry.expected.end()) {
    rec.values.emplace_back("commutant_dim_measured", static_cast<double>(verdict.commutant_dim));
    if (verdict.commutant_dim < want_min->second) {
      rec.note += " commutant dimension below the expected minimum";
      ok = false;
    }
  }
  if (!verdict.irreducible) {
    rec.values.emplace_back("invariant_subspaces", static_cast<double>(verdict.projectors.size()));
    rec.values.emplace_back("invariance_residual", verdict.invariance_residual);
    ok &= verdict.invariance_residual < ctx.tol(kTolLift);
  }
  finish(rec, ok);
  ctx.report.claims.push_back(std::move(rec));
}

void run_transvection_claim(ClaimContext& ctx, const BuiltEntry& built, double s) {
  ClaimRecord rec;
  rec.claim = "transvection";
  rec.s = s;
  BarModel bar(built.split, s);
  TransvectionResult tr = transvection_algebra(bar);
  Index want = (s == 1.0) ? built.g->dim() : built.g->dim() + built.split.p2.dim();
  rec.values.emplace_back("dim", static_cast<double>(tr.dim));
  rec.values.emplace_back("dim_expected", static_cast<double>(want));
  finish(rec, tr.dim == want);
  ctx.report.claims.push_back(std::move(rec));
}

void run_fixed_set_claim(ClaimContext& ctx, const BuiltEntry& built) {
  ClaimRecord rec;
  rec.claim = "fixed-set";
  FixedSetResult fs = fixed_set_adk(built.split);
  rec.residual = fs.vacuous ? 0.0 : fs.p2_residual;
  bool ok = true;
  if (fs.vacuous) {
    // trivial k: the fixed set is all of q
    ok &= fs.fixed.dim() == built.split.q.dim();
    rec.note = "k trivial, fixed set is all of q";
  } else {
    ok &= fs.equals_p2 && rec.residual < ctx.tol(kTolAlg);
  }
  ok &= ctx.expect_eq(rec, "fixed_dim", static_cast<double>(fs.fixed.dim()));
  finish(rec, ok);
  ctx.report.claims.push_back(std::move(rec));
}

void run_center_claim(ClaimContext& ctx, const BuiltEntry& built) {
  ClaimRecord rec;
  rec.claim = "center";
  BarModel bar(built.split, 1.0);  // the centers do not depend on s
  CenterReport cr = center_check(bar);
  rec.residual = cr.containment_residual;
  bool ok = cr.center_in_copy;
  ok &= ctx.expect_eq(rec, "center_dim", static_cast<double>(cr.dim_z_gbar));
  ok &= ctx.expect_eq(rec, "center_copy_dim", static_cast<double>(cr.dim_z_copy));
  finish(rec, ok);
  ctx.report.claims.push_back(std::move(rec));
}

struct LiftInputs {
  Subspace m;
  ActionSpec action;
  SectionCandidate sc;
  bool corrupted = false;
};

// shared by lift-hyperpolar and lift-section
void run_lift(ClaimContext& ctx, const BuiltEntry& built, const std::string& claim,
              const LiftInputs& inputs, double s) {
  ClaimRecord rec;
  rec.claim = claim;
  rec.s = s;
  MetricGs metric = metric_gs(built.split, s);
  SeededRng rng = ctx.rng(claim, s);

  bool ok = true;
  if (!inputs.corrupted) {
    ok &= inputs.sc.hypothesis_ok;
    rec.values.emplace_back("hypothesis_residual", inputs.sc.hypothesis_residual);
  }
  PolarityReport pol = polarity_check(built.split, metric, inputs.action, inputs.sc,
                                      ctx.opts.samples, rng, /*allow_unverified=*/true);
  SeededRng rng_v = ctx.rng(claim + "-vert", s);
  VerticalityReport vert = verticality_claim_check(built.split, metric, inputs.action,
                                                   inputs.sc, ctx.opts.samples, rng_v);
  rec.samples = pol.samples;
  rec.residual = pol.max_orthogonality;
  rec.values.emplace_back("orthogonality", pol.max_orthogonality);
  rec.values.emplace_back("verticality", vert.max_residual);
  rec.values.emplace_back("orbit_dim", static_cast<double>(pol.orbit_dim_max));
  rec.values.emplace_back("section_dim", static_cast<double>(pol.section_dim));
  rec.values.emplace_back("regular_samples", static_cast<double>(pol.regular_samples));
  ok &= pol.max_orthogonality < ctx.tol(kTolLift);
  ok &= pol.dims_add;
  ok &= vert.max_residual < ctx.tol(kTolAlg);
  if (!inputs.corrupted) {
    SeededRng rng_h = ctx.rng(claim + "-horiz", s);
    HorizontalityReport hor = horizontality_check(built.split, metric, inputs.sc,
                                                  ctx.opts.samples, rng_h);
    rec.values.emplace_back("horizontality", hor.max_residual);
    ok &= hor.max_residual < ctx.tol(kTolLift);
  }
  ok &= ctx.expect_eq(rec, claim == "lift-section" ? "dim_m_section" : "dim_m",
                      static_cast<double>(inputs.m.dim()));
  if (pol.orbit_dim_max + inputs.m.dim() != built.split.q.dim() && !inputs.corrupted) {
    rec.note += " orbit and section dimensions do not fill q";
    ok = false;
  }
  finish(rec, ok);
  ctx.report.claims.push_back(std::move(rec));
}

LiftInputs hyperpolar_inputs(ClaimContext& ctx, const BuiltEntry& built) {
  SeededRng rng = ctx.rng("lift-hyperpolar/m");
  Subspace m = maximal_abelian_in_p1(built.pair, rng);
  LiftInputs out{m, make_action(*built.g, built.pair.h, true), section_algebra(built.split, m),
                 false};
  if (ctx.entry.corrupt_section) {
    // negative control: a random subspace of p1 of the same dimension
    Mat span = built.pair.p1.onb() *
               Mat(rng.gaussian_vector(built.pair.p1.dim() * m.dim())
                       .reshaped(built.pair.p1.dim(), m.dim()));
    Subspace bad = Subspace::from_span(span, built.g->form());
    out.m = bad;
    out.sc = section_algebra(built.split, bad);
    out.sc.s_alg = bad;  // treat the corrupted candidate as if it were flat
    out.corrupted = true;
  }
  return out;
}

LiftInputs section_inputs(ClaimContext& ctx, const BuiltEntry& built) {
  Subspace m = named_section(ctx.entry, built);
  Subspace l = named_action_algebra(ctx.entry, built);
  return LiftInputs{m, make_action(*built.g, l, true), section_algebra(built.split, m), false};
}

}  // namespace

VerificationReport run_pipeline(const CorpusEntry& entry, const RunOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport report;
  report.entry_id = entry.id;
  report.seed = opts.seed;
  report.samples = opts.samples;
  report.s_values = opts.s_override.empty() ? entry.s_values : opts.s_override;

  if (!entry.skip_reason.empty()) {
    ClaimRecord rec;
    rec.claim = "corpus";
    rec.verdict = "skip";
    rec.note = entry.skip_reason;
    report.claims.push_back(std::move(rec));
    return report;
  }

  std::set<std::string> wanted;
  {
    std::vector<std::string> base = entry.claims;
    if (base.empty())
      base = {"pair",  "split",     "brackets",  "reductive",       "irreducible",
              "transvection", "fixed-set", "center", "lift-hyperpolar", "lift-section"};
    if (!opts.claims.empty()) {
      std::set<std::string> filter(opts.claims.begin(), opts.claims.end());
      std::vector<std::string> kept;
      for (const auto& c : base)
        if (filter.count(c)) kept.push_back(c);
      base = kept;
    }
    wanted.insert(base.begin(), base.end());
  }
  if (entry.section.empty()) wanted.erase("lift-section");

  ClaimContext ctx{entry, opts, report};

  // constructions; a rejection aborts the run with a reject record
  std::optional<BuiltEntry> built;
  try {
    built = build_entry(entry);
  } catch (const ConstructionError& e) {
    ClaimRecord rec;
    rec.claim = wanted.count("split") ? "split" : "pair";
    rec.verdict = "reject";
    rec.residual = e.residual();
    rec.note = e.what();
    report.claims.push_back(std::move(rec));
    return report;
  }
  report.normalization = "g(X,Y) = -trace(XY)/c on " + built->g->name() +
                         ", c = " + std::to_string(built->g->trace_scale());

  if (wanted.count("pair")) run_pair_claim(ctx, *built);
  if (wanted.count("split")) run_split_claim(ctx, *built);
  for (double s : report.s_values) {
    if (wanted.count("brackets")) run_brackets_claim(ctx, *built, s);
    if (wanted.count("reductive")) run_reductive_claim(ctx, *built, s);
    if (wanted.count("irreducible")) run_irreducible_claim(ctx, *built, s);
    if (wanted.count("transvection")) run_transvection_claim(ctx, *built, s);
  }
  if (wanted.count("fixed-set")) run_fixed_set_claim(ctx, *built);
  if (wanted.count("center")) run_center_claim(ctx, *built);

  if (wanted.count("lift-hyperpolar")) {
    LiftInputs inputs = hyperpolar_inputs(ctx, *built);
    for (double s : report.s_values) run_lift(ctx, *built, "lift-hyperpolar", inputs, s);
  }
  if (wanted.count("lift-section")) {
    LiftInputs inputs = section_inputs(ctx, *built);
    for (double s : report.s_values) run_lift(ctx, *built, "lift-section", inputs, s);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace liebundle
