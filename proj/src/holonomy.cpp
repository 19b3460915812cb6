#include "liebundle/holonomy.hpp"

namespace liebundle {

namespace {

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unflatten(const Vec& v, Index n) {
  return Eigen::Map<const Mat>(v.data(), n, n);
}

}  // namespace

Mat lambda_operator(const BarModel& bar, const Vec& x_gbar) {
  return bar.lambda(x_gbar);
}

double natural_reductivity_check(const BarModel& bar) {
  const Index n = bar.dim_gbar();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    Mat l = bar.lambda(Vec(Vec::Unit(n, i)));
    worst = std::max(worst, (l + l.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

HolonomySet holonomy_algebra(const BarModel& bar) {
  const Index n = bar.dim_gbar();
  const Index dq = bar.dim_qbar();
  HolonomySet out;
  Mat seed(dq * dq, n);
  for (Index i = 0; i < n; ++i) {
    Mat l = bar.lambda(Vec(Vec::Unit(n, i)));
    out.generators.push_back(l);
    seed.col(i) = flatten(l);
  }

  auto comm = [dq](const Vec& a, const Vec& b) {
    Mat ma = unflatten(a, dq), mb = unflatten(b, dq);
    return flatten(Mat(ma * mb - mb * ma));
  };
  Subspace closure = span_closure(seed, Form::euclidean(dq * dq), comm);
  out.closedness_residual = closure_residual(closure, comm);

  double skew = 0.0;
  for (Index c = 0; c < closure.dim(); ++c) {
    Mat m = unflatten(closure.onb().col(c), dq);
    out.closure.push_back(m);
    skew = std::max(skew, (m + m.transpose()).cwiseAbs().maxCoeff());
  }
  out.skewness_residual = skew;
  return out;
}

IrreducibilityVerdict irreducibility_check(const HolonomySet& hol, const MetricGs& metric) {
  IrreducibilityVerdict out;
  if (hol.closure.empty()) return out;
  const Index dq = hol.closure.front().rows();
  // operators are in g_s-orthonormal coordinates already, so the relevant
  // form is euclidean; metric.s is kept for the record only
  (void)metric;
  SymmetricCommutant sc = symmetric_commutant(hol.closure, Mat(Mat::Identity(dq, dq)));
  out.commutant_dim = sc.dim;
  out.irreducible = (sc.dim == 1);
  if (!out.irreducible) {
    InvariantSplit split = invariant_split(sc, hol.generators);
    out.projectors = split.projectors;
    out.invariance_residual = split.invariance_residual;
  }
  return out;
}

TransvectionResult transvection_algebra(const BarModel& bar) {
  const Index dq = bar.dim_qbar();
  Mat seed = bar.qbar_onb();
  auto mul = [&bar](const Vec& a, const Vec& b) { return bar.bracket(a, b); };
  Subspace alg = span_closure(seed, bar.gbar_form(), mul);
  (void)dq;
  return TransvectionResult{alg, alg.dim()};
}

FixedSetResult fixed_set_adk(const BundleSplit& split) {
  const LieAlgebra& g = *split.pair.g;
  const Subspace& q = split.q;
  std::vector<Mat> ops;
  for (Index i = 0; i < split.k.dim(); ++i) {
    Mat op(q.dim(), q.dim());
    for (Index j = 0; j < q.dim(); ++j)
      op.col(j) = q.coords(g.bracket_structure(split.k.onb().col(i), q.onb().col(j)));
    ops.push_back(std::move(op));
  }
  JointKernel jk = joint_kernel(ops, q.dim());

  FixedSetResult out{jk.space, false, 0.0, jk.vacuous};
  // p2 occupies the trailing onb coordinates of q
  const Index d1 = split.pair.p1.dim();
  const Index d2 = split.p2.dim();
  Mat p2_in_q = Mat::Zero(q.dim(), d2);
  p2_in_q.bottomRows(d2).setIdentity();
  Subspace p2q(p2_in_q, Form::euclidean(q.dim()));
  double res = std::max(out.fixed.containment_residual(p2q),
                        p2q.containment_residual(out.fixed));
  (void)d1;
  out.p2_residual = res;
  out.equals_p2 = (out.fixed.dim() == d2) && res < kTolAlg;
  return out;
}

CenterReport center_check(const BarModel& bar) {
  const Index n = bar.dim_gbar();
  std::vector<Mat> ops;
  for (Index i = 0; i < n; ++i) {
    Mat op(n, n);
    Vec ei = Vec::Unit(n, i);
    for (Index j = 0; j < n; ++j) op.col(j) = bar.bracket(ei, Vec(Vec::Unit(n, j)));
    ops.push_back(std::move(op));
  }
  JointKernel zg = joint_kernel(ops, n);

  const Index d2 = bar.dim_p2();
  JointKernel zc = joint_kernel(bar.split().p2_ad, d2);

  CenterReport out;
  out.dim_z_gbar = zg.space.dim();
  out.dim_z_copy = zc.space.dim();
  // the copy factor occupies the trailing coordinates of gbar
  Mat copy = Mat::Zero(n, d2);
  copy.bottomRows(d2).setIdentity();
  Subspace copy_space(copy, Form::euclidean(n));
  out.containment_residual = copy_space.containment_residual(zg.space);
  out.center_in_copy = out.containment_residual < kTolAlg;
  return out;
}

}  // namespace liebundle
