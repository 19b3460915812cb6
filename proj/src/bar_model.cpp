#include "liebundle/bar_model.hpp"

namespace liebundle {

namespace {

FormPtr make_gbar_form(const BundleSplit& split) {
  const Index dg = split.pair.g->dim();
  const Index d2 = split.p2.dim();
  Mat gram = Mat::Zero(dg + d2, dg + d2);
  gram.topLeftCorner(dg, dg) = split.pair.g->gram();
  gram.bottomRightCorner(d2, d2) = Mat::Identity(d2, d2);
  return std::make_shared<Form>(gram);
}

// kbar = k (+) {(X, X) : X in p2}
Subspace make_kbar(const BundleSplit& split, const FormPtr& form) {
  const Index dg = split.pair.g->dim();
  const Index d2 = split.p2.dim();
  const Index dk = split.k.dim();
  Mat onb = Mat::Zero(dg + d2, dk + d2);
  onb.topLeftCorner(dg, dk) = split.k.onb();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d2; ++i) {
    onb.block(0, dk + i, dg, 1) = inv_sqrt2 * split.p2.onb().col(i);
    onb(dg + i, dk + i) = inv_sqrt2;
  }
  return Subspace(std::move(onb), form);
}

double checked_s(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("BarModel: s must be positive");
  return s;
}

}  // namespace

BarModel::BarModel(BundleSplit split, double s)
    : split_(std::move(split)),
      s_(checked_s(s)),
      gbar_form_(make_gbar_form(split_)),
      kbar_(make_kbar(split_, gbar_form_)) {
  const LieAlgebra& g = *split_.pair.g;
  const Index dg = g.dim();
  const Index d2 = split_.p2.dim();
  const Index n = dg + d2;
  const Index d1 = split_.pair.p1.dim();
  qbar_basis_ = Mat::Zero(n, d1 + d2);
  qbar_basis_.topLeftCorner(dg, d1) = split_.pair.p1.onb();
  for (Index i = 0; i < d2; ++i) {
    qbar_basis_.block(0, d1 + i, dg, 1) = (s_ * s_) * split_.p2.onb().col(i);
    qbar_basis_(dg + i, d1 + i) = s_ * s_ - 1.0;
  }
  qbar_onb_ = qbar_basis_;
  qbar_onb_.rightCols(d2) /= s_;  // g_s-norm of embed2(X) is s * |X|

  Mat frame(n, n);
  frame << kbar_.onb(), qbar_onb_;
  frame_lu_ = Eigen::PartialPivLU<Mat>(frame);

  // model sanity: kbar closes under the bracket, qbar is ad(kbar)-invariant
  double worst = 0.0;
  for (Index i = 0; i < kbar_.dim(); ++i) {
    Vec ki = kbar_.onb().col(i);
    for (Index j = i + 1; j < kbar_.dim(); ++j)
      worst = std::max(worst, kbar_.containment_residual(bracket(ki, kbar_.onb().col(j))));
    for (Index j = 0; j < dim_qbar(); ++j) {
      Vec b = bracket(ki, qbar_onb_.col(j));
      Split d = decompose(b);
      worst = std::max(worst, gbar_form_->norm(d.kbar_part));
    }
  }
  model_residual_ = worst;
  if (worst > kTolAlg)
    throw ConstructionError("BarModel: reductive decomposition failed", worst);
}

Vec BarModel::bracket(const Vec& x, const Vec& y) const {
  const LieAlgebra& g = *split_.pair.g;
  const Index dg = g.dim();
  const Index d2 = split_.p2.dim();
  Vec out(dg + d2);
  out.head(dg) = g.bracket_structure(x.head(dg), y.head(dg));
  Vec copy = Vec::Zero(d2);
  for (Index i = 0; i < d2; ++i)
    if (x[dg + i] != 0.0) copy += x[dg + i] * (split_.p2_ad[i] * y.tail(d2));
  out.tail(d2) = copy;
  return out;
}

Vec BarModel::lift_g(const Vec& g_coords) const {
  Vec out = Vec::Zero(dim_gbar());
  out.head(dim_g()) = g_coords;
  return out;
}

Vec BarModel::lift_copy(const Vec& p2_onb_coords) const {
  Vec out = Vec::Zero(dim_gbar());
  out.tail(dim_p2()) = p2_onb_coords;
  return out;
}

Vec BarModel::embed2(const Vec& p2_onb_coords) const {
  Vec out = Vec::Zero(dim_gbar());
  out.head(dim_g()) = (s_ * s_) * (split_.p2.onb() * p2_onb_coords);
  out.tail(dim_p2()) = (s_ * s_ - 1.0) * p2_onb_coords;
  return out;
}

Vec BarModel::kbar_diag(const Vec& p2_onb_coords) const {
  Vec out = Vec::Zero(dim_gbar());
  out.head(dim_g()) = split_.p2.onb() * p2_onb_coords;
  out.tail(dim_p2()) = p2_onb_coords;
  return out;
}

BarModel::Split BarModel::decompose(const Vec& x) const {
  Vec coeffs = frame_lu_.solve(x);
  Split out;
  out.kbar_part = kbar_.onb() * coeffs.head(kbar_.dim());
  out.qbar_coeffs = coeffs.tail(dim_qbar());
  out.qbar_part = qbar_onb_ * out.qbar_coeffs;
  return out;
}

Vec BarModel::project_qbar(const Vec& x) const { return decompose(x).qbar_part; }

Vec BarModel::qbar_coeffs(const Vec& x) const { return decompose(x).qbar_coeffs; }

Mat BarModel::lambda(const Vec& x) const {
  if (x.size() != dim_gbar()) throw std::invalid_argument("lambda: not a gbar vector");
  Split d = decompose(x);
  // Lambda(x) y = [x_k, y] + 1/2 [x_q, y]_qbar; both via one bracket
  Vec left = d.kbar_part + 0.5 * d.qbar_part;
  const Index dq = dim_qbar();
  Mat out(dq, dq);
  for (Index j = 0; j < dq; ++j)
    out.col(j) = decompose(bracket(left, qbar_onb_.col(j))).qbar_coeffs;
  return out;
}

BarModel build_bar_model(const BundleSplit& split, double s) { return BarModel(split, s); }

MetricGs metric_gs(const BundleSplit& split, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("metric_gs: s must be positive");
  const Index d1 = split.pair.p1.dim();
  const Index d2 = split.p2.dim();
  MetricGs m;
  m.s = s;
  m.gram_q = Mat::Identity(d1 + d2, d1 + d2);
  m.gram_q.bottomRightCorner(d2, d2) *= s * s;
  m.gram_qbar = m.gram_q;  // same matrix in the natural model basis

  // verify the displayed identities through the model decomposition: the
  // g_s inner product read off qbar coefficients must restrict to g on p1,
  // vanish across, and scale by s^2 on the embedded p2
  BarModel bar(split, s);
  auto gs = [&](const Vec& u, const Vec& v) {
    return bar.qbar_coeffs(u).dot(bar.qbar_coeffs(v));
  };
  double worst = 0.0;
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j) {
      Vec a = bar.lift_g(split.pair.p1.onb().col(i));
      Vec b = bar.lift_g(split.pair.p1.onb().col(j));
      double want = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gs(a, b) - want));
    }
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j) {
      Vec a = bar.lift_g(split.pair.p1.onb().col(i));
      Vec b = bar.embed2(Vec(Vec::Unit(d2, j)));
      worst = std::max(worst, std::abs(gs(a, b)));
    }
  for (Index i = 0; i < d2; ++i)
    for (Index j = 0; j < d2; ++j) {
      Vec a = bar.embed2(Vec(Vec::Unit(d2, i)));
      Vec b = bar.embed2(Vec(Vec::Unit(d2, j)));
      double want = (i == j) ? s * s : 0.0;
      worst = std::max(worst, std::abs(gs(a, b) - want));
    }
  m.pullback_residual = worst;
  if (worst > kTolLin)
    throw ConstructionError("metric_gs: pullback identity failed", worst);
  return m;
}

BracketFormulaReport bracket_formula_check(const BarModel& bar, int n_samples,
                                           SeededRng& rng) {
  const BundleSplit& split = bar.split();
  const LieAlgebra& g = *split.pair.g;
  const double s2 = bar.s() * bar.s();
  const Index dk = split.k.dim();
  const Index d1 = split.pair.p1.dim();
  const Index d2 = split.p2.dim();

  BracketFormulaReport rep;
  rep.samples = n_samples;
  auto p2_coords = [&](const Vec& v) { return split.p2.coords(v); };

  for (int t = 0; t < n_samples; ++t) {
    Vec x0 = dk ? Vec(split.k.onb() * rng.gaussian_vector(dk)) : Vec(Vec::Zero(g.dim()));
    Vec x1 = split.pair.p1.onb() * rng.gaussian_vector(d1);
    Vec y1 = split.pair.p1.onb() * rng.gaussian_vector(d1);
    Vec x2c = d2 ? Vec(rng.gaussian_vector(d2)) : Vec(Vec::Zero(0));
    Vec y2c = d2 ? Vec(rng.gaussian_vector(d2)) : Vec(Vec::Zero(0));
    Vec x2 = split.p2.onb() * x2c;
    Vec y2 = split.p2.onb() * y2c;

    // Y = Y1 + (0, s^2 Y2, (s^2-1) Y2)
    Vec ybar = bar.lift_g(y1) + bar.embed2(y2c);

    // identity 1: X = X0 + (X2, X2) in kbar
    {
      Vec xbar = bar.lift_g(x0) + bar.kbar_diag(x2c);
      Vec generic = bar.project_qbar(bar.bracket(xbar, ybar));
      Vec closed = bar.lift_g(g.bracket_structure(x0, y1) + g.bracket_structure(x2, y1)) +
                   bar.embed2(p2_coords(g.bracket_structure(x2, y2)));
      rep.max_residual = std::max(rep.max_residual, bar.gbar_form()->norm(generic - closed));
    }
    // identity 2: X = X1 in p1
    {
      Vec xbar = bar.lift_g(x1);
      Vec generic = bar.project_qbar(bar.bracket(xbar, ybar));
      Vec x1y1 = g.bracket_structure(x1, y1);
      Vec closed = bar.lift_g(s2 * g.bracket_structure(x1, y2)) +
                   bar.embed2(p2_coords(x1y1));
      rep.max_residual = std::max(rep.max_residual, bar.gbar_form()->norm(generic - closed));
    }
    // identity 3: Z = (0, s^2 X2, (s^2-1) X2)
    {
      Vec zbar = bar.embed2(x2c);
      Vec generic = bar.project_qbar(bar.bracket(zbar, ybar));
      Vec closed = bar.lift_g(s2 * g.bracket_structure(x2, y1)) +
                   (2.0 * s2 - 1.0) * bar.embed2(p2_coords(g.bracket_structure(x2, y2)));
      rep.max_residual = std::max(rep.max_residual, bar.gbar_form()->norm(generic - closed));
    }
  }
  return rep;
}

}  // namespace liebundle
