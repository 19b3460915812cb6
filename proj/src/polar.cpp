#include "liebundle/polar.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace liebundle {

namespace {

FormPtr metric_form(const MetricGs& metric) {
  return std::make_shared<Form>(metric.gram_q);
}

// projection of a g-coordinate vector to q onb coordinates (orthogonal,
// since k is g-orthogonal to q)
Vec proj_q(const BundleSplit& split, const Vec& g_coords) {
  return split.q.coords(g_coords);
}

}  // namespace

ActionSpec make_action(const LieAlgebra& g, const Subspace& l, bool with_gauge) {
  double res = 0.0;
  for (Index i = 0; i < l.dim(); ++i)
    for (Index j = i + 1; j < l.dim(); ++j) {
      Vec br = g.bracket_structure(l.onb().col(i), l.onb().col(j));
      res = std::max(res, l.containment_residual(br));
    }
  if (res > kTolAlg)
    throw std::invalid_argument("make_action: l is not a subalgebra");
  return ActionSpec{l, with_gauge, res};
}

HypothesisResult check_theorem_hypothesis(const BundleSplit& split, const Subspace& m) {
  const LieAlgebra& g = *split.pair.g;
  if (split.pair.p1.containment_residual(m) > kTolLin)
    throw std::invalid_argument("check_theorem_hypothesis: m is not inside p1");
  double worst = 0.0;
  for (Index i = 0; i < m.dim(); ++i)
    for (Index j = i + 1; j < m.dim(); ++j) {
      Vec br = g.bracket_structure(m.onb().col(i), m.onb().col(j));
      worst = std::max(worst, split.k.containment_residual(br));
    }
  return HypothesisResult{worst < kTolAlg, worst};
}

SectionCandidate section_algebra(const BundleSplit& split, const Subspace& m) {
  const LieAlgebra& g = *split.pair.g;
  HypothesisResult hyp = check_theorem_hypothesis(split, m);

  // collect pairwise brackets
  std::vector<Vec> brackets;
  for (Index i = 0; i < m.dim(); ++i)
    for (Index j = i + 1; j < m.dim(); ++j)
      brackets.push_back(g.bracket_structure(m.onb().col(i), m.onb().col(j)));
  Mat bmat(g.dim(), static_cast<Index>(brackets.size()));
  for (std::size_t i = 0; i < brackets.size(); ++i) bmat.col(static_cast<Index>(i)) = brackets[i];
  // rank against the unit scale of m, so an abelian m ranks as zero
  Subspace bracket_span = Subspace::from_span(bmat, g.form(), kRankTolRel, 1.0);

  Mat seed(g.dim(), m.dim() + bracket_span.dim());
  seed << m.onb(), bracket_span.onb();
  Subspace s_alg = span_closure(seed, g.form(), g.bracket_op());

  SectionCandidate out;
  out.m = m;
  out.s_alg = s_alg;
  out.bracket_dim = bracket_span.dim();
  out.flat = (bracket_span.dim() == 0);
  out.hypothesis_ok = hyp.holds;
  out.hypothesis_residual = hyp.residual;
  // closure escaping m + [m,m] signals that m is not a Lie triple system
  Subspace direct(seed, g.form());
  out.escape_residual =
      (s_alg.dim() == m.dim() + bracket_span.dim()) ? direct.containment_residual(s_alg) : 1.0;
  return out;
}

Subspace maximal_abelian_in_p1(const SymmetricPair& pair, SeededRng& rng) {
  const LieAlgebra& g = *pair.g;
  const Subspace& p1 = pair.p1;
  Mat basis(g.dim(), p1.dim());
  Index count = 0;
  basis.col(count++) = p1.onb() * rng.unit_vector(p1.dim());

  while (true) {
    // commutant of the current span inside p1, in p1 onb coordinates
    std::vector<Mat> ops;
    for (Index i = 0; i < count; ++i) {
      Mat op(g.dim(), p1.dim());
      for (Index j = 0; j < p1.dim(); ++j)
        op.col(j) = g.bracket_structure(basis.col(i), p1.onb().col(j));
      ops.push_back(std::move(op));
    }
    // stack as one system acting from p1 coords into g coords
    Mat stacked(static_cast<Index>(ops.size()) * g.dim(), p1.dim());
    for (std::size_t i = 0; i < ops.size(); ++i)
      stacked.middleRows(static_cast<Index>(i) * g.dim(), g.dim()) = ops[i];
    Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv[0] : 0.0;
    Index r = 0;
    while (r < sv.size() && sv[r] > kRankTolRel * smax && sv[r] > 0.0) ++r;
    Index kdim = p1.dim() - r;
    if (kdim <= count) break;  // the commutant is the span itself

    // extend by a random kernel direction orthogonal to the current span
    Mat kernel = svd.matrixV().rightCols(kdim);
    Vec cand = p1.onb() * (kernel * rng.unit_vector(kdim));
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < count; ++i)
        cand -= g.form()->inner(basis.col(i), cand) * Vec(basis.col(i));
    double nrm = g.form()->norm(cand);
    if (nrm < 1e-8) break;
    basis.col(count++) = cand / nrm;
  }
  return Subspace(Mat(basis.leftCols(count)), g.form());
}

SamplePoint sample_point(const LieAlgebra& g, const Subspace& directions, int n_factors,
                         SeededRng& rng) {
  const Index N = g.ambient_size();
  Mat el = Mat::Identity(N, N);
  for (int f = 0; f < n_factors; ++f) {
    Vec a = directions.onb() * rng.gaussian_vector(directions.dim());
    a *= rng.uniform(0.3, 1.2);
    el = el * g.realize(a).exp();
  }
  SamplePoint out;
  out.group_element = el;
  out.orthogonality_residual =
      (el.transpose() * el - Mat::Identity(N, N)).cwiseAbs().maxCoeff();

  Mat inv = el.transpose();  // orthogonal in the real encoding
  out.ad_inverse.resize(g.dim(), g.dim());
  for (Index i = 0; i < g.dim(); ++i) {
    Mat conj = inv * g.basis_matrix(i) * el;
    double resid = 0.0;
    Vec c = g.coordinates(conj, &resid);
    if (resid > 1e-8 * (1.0 + conj.norm()))
      throw std::runtime_error("sample_point: adjoint transport left the algebra");
    out.ad_inverse.col(i) = c;
  }
  return out;
}

Subspace orbit_tangent(const BundleSplit& split, const MetricGs& metric,
                       const ActionSpec& action, const SamplePoint& at) {
  const Index dq = split.q.dim();
  const Index d2 = split.p2.dim();
  Index cols = action.l.dim() + (action.with_gauge ? d2 : 0);
  Mat span(dq, cols);
  Index c = 0;
  for (Index i = 0; i < action.l.dim(); ++i)
    span.col(c++) = proj_q(split, Vec(at.ad_inverse * Vec(action.l.onb().col(i))));
  if (action.with_gauge) {
    // gauge directions: -proj_q of the fiber generators, constant over points
    for (Index i = 0; i < d2; ++i) {
      Vec v = Vec::Zero(dq);
      v[dq - d2 + i] = -1.0;
      span.col(c++) = v;
    }
  }
  return Subspace::from_span(span, metric_form(metric));
}

Subspace section_tangent(const BundleSplit& split, const MetricGs& metric,
                         const SectionCandidate& sc, const SamplePoint& at) {
  const Index dq = split.q.dim();
  Mat span(dq, sc.s_alg.dim());
  for (Index i = 0; i < sc.s_alg.dim(); ++i)
    span.col(i) = proj_q(split, Vec(at.ad_inverse * Vec(sc.s_alg.onb().col(i))));
  return Subspace::from_span(span, metric_form(metric));
}

PolarityReport polarity_check(const BundleSplit& split, const MetricGs& metric,
                              const ActionSpec& action, const SectionCandidate& sc,
                              int n_samples, SeededRng& rng, bool allow_unverified) {
  if (!sc.hypothesis_ok && !allow_unverified)
    throw std::invalid_argument("polarity_check: theorem hypothesis was not verified for m");

  PolarityReport rep;
  rep.samples = n_samples;
  std::vector<Subspace> orbits, sections;
  std::vector<Index> orbit_dims;
  for (int t = 0; t < n_samples; ++t) {
    SamplePoint pt = sample_point(*split.pair.g, sc.m, 3, rng);
    Subspace orb = orbit_tangent(split, metric, action, pt);
    Subspace sec = section_tangent(split, metric, sc, pt);
    rep.orbit_dim_max = std::max(rep.orbit_dim_max, orb.dim());
    orbit_dims.push_back(orb.dim());
    rep.section_dim = std::max(rep.section_dim, sec.dim());
    orbits.push_back(std::move(orb));
    sections.push_back(std::move(sec));
  }
  bool dims_ok = true;
  for (int t = 0; t < n_samples; ++t) {
    Mat cross = orbits[t].onb().transpose() * metric.gram_q * sections[t].onb();
    if (cross.size())
      rep.max_orthogonality = std::max(rep.max_orthogonality, cross.cwiseAbs().maxCoeff());
    if (orbit_dims[t] == rep.orbit_dim_max) {
      ++rep.regular_samples;
      if (orbit_dims[t] + sections[t].dim() != split.q.dim()) dims_ok = false;
    }
  }
  rep.dims_add = dims_ok && rep.regular_samples > 0;
  return rep;
}

HorizontalityReport horizontality_check(const BundleSplit& split, const MetricGs& metric,
                                        const SectionCandidate& sc, int n_samples,
                                        SeededRng& rng) {
  if (!sc.hypothesis_ok)
    throw std::invalid_argument("horizontality_check: [m,m] in k was not verified");
  HorizontalityReport rep;
  rep.samples = n_samples;
  const Index dq = split.q.dim();
  const Index d2 = split.p2.dim();
  for (int t = 0; t < n_samples; ++t) {
    SamplePoint pt = sample_point(*split.pair.g, sc.m, 3, rng);
    Subspace sec = section_tangent(split, metric, sc, pt);
    // vertical space at any point is the p2 block of q
    Mat vert = Mat::Zero(dq, d2);
    vert.bottomRows(d2) = Mat::Identity(d2, d2) / metric.s;  // g_s-normalized
    Mat cross = sec.onb().transpose() * metric.gram_q * vert;
    if (cross.size())
      rep.max_residual = std::max(rep.max_residual, cross.cwiseAbs().maxCoeff());
  }
  return rep;
}

VerticalityReport verticality_claim_check(const BundleSplit& split, const MetricGs& metric,
                                          const ActionSpec& action, const SectionCandidate& sc,
                                          int n_samples, SeededRng& rng) {
  VerticalityReport rep;
  rep.samples = n_samples;
  const Index dq = split.q.dim();
  const Index d2 = split.p2.dim();
  FormPtr gq = metric_form(metric);

  std::vector<Subspace> orbits;
  Index dim_max = 0;
  for (int t = 0; t < n_samples; ++t) {
    SamplePoint pt = sample_point(*split.pair.g, sc.m, 3, rng);
    Subspace orb = orbit_tangent(split, metric, action, pt);
    dim_max = std::max(dim_max, orb.dim());
    orbits.push_back(std::move(orb));
  }
  for (const Subspace& orb : orbits) {
    if (orb.dim() != dim_max) continue;
    ++rep.regular_samples;
    for (Index i = 0; i < d2; ++i) {
      Vec vert = Vec::Zero(dq);
      vert[dq - d2 + i] = 1.0 / metric.s;
      rep.max_residual = std::max(rep.max_residual, orb.containment_residual(vert));
    }
  }
  return rep;
}

}  // namespace liebundle
