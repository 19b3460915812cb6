#pragma once

#include "liebundle/rng.hpp"
#include "liebundle/symmetric_pair.hpp"

namespace liebundle {

/// Deformed inner product on q = p1 (+) p2: the invariant product on p1,
/// s^2 times it on p2, the two blocks orthogonal.  gram_q is expressed in
/// the onb coordinates of q, gram_qbar in the natural basis of the model
/// complement.
struct MetricGs {
  double s = 1.0;
  Mat gram_q;
  Mat gram_qbar;
  double pullback_residual = 0.0;
};

/// Transitive model of the bundle total space: the product algebra
/// gbar = g (+) c, where c is a disjoint copy of p2 carrying the quotient
/// bracket, with isotropy kbar = k (+) diag(p2) and the s-dependent
/// reductive complement qbar = p1 (+) { (s^2 X, (s^2-1) X) : X in p2 }.
/// Coordinates on gbar are (g coords, copy coords).
class BarModel {
 public:
  BarModel(BundleSplit split, double s);

  const BundleSplit& split() const { return split_; }
  double s() const { return s_; }
  Index dim_g() const { return split_.pair.g->dim(); }
  Index dim_p2() const { return split_.p2.dim(); }
  Index dim_gbar() const { return dim_g() + dim_p2(); }
  Index dim_kbar() const { return split_.k.dim() + dim_p2(); }
  Index dim_qbar() const { return split_.pair.p1.dim() + dim_p2(); }

  /// componentwise bracket of the product algebra
  Vec bracket(const Vec& x, const Vec& y) const;

  Vec lift_g(const Vec& g_coords) const;   // g -> gbar, copy part zero
  Vec lift_copy(const Vec& p2_onb_coords) const;  // copy factor -> gbar
  /// (0, s^2 X, (s^2-1) X): the model image of X in p2 (onb coordinates)
  Vec embed2(const Vec& p2_onb_coords) const;
  /// diagonal isotropy vector (X, X) for X in p2
  Vec kbar_diag(const Vec& p2_onb_coords) const;

  const Subspace& kbar() const { return kbar_; }
  /// natural qbar basis [p1 | embed2(e_i)] as gbar columns
  const Mat& qbar_basis() const { return qbar_basis_; }
  /// g_s-orthonormal qbar basis [p1 | embed2(e_i)/s]
  const Mat& qbar_onb() const { return qbar_onb_; }
  const FormPtr& gbar_form() const { return gbar_form_; }

  /// oblique split x = x_kbar + x_qbar along kbar (+) qbar
  struct Split {
    Vec kbar_part;  // gbar coordinates
    Vec qbar_part;  // gbar coordinates
    Vec qbar_coeffs;  // coefficients against the g_s-orthonormal qbar basis
  };
  Split decompose(const Vec& x) const;
  Vec project_qbar(const Vec& x) const;
  Vec qbar_coeffs(const Vec& x) const;

  /// canonical-connection operator in g_s-orthonormal qbar coordinates:
  /// ad(x_kbar) plus half the qbar-projected bracket with x_qbar
  Mat lambda(const Vec& x) const;

  double model_residual() const { return model_residual_; }

 private:
  BundleSplit split_;
  double s_;
  FormPtr gbar_form_;
  Subspace kbar_;
  Mat qbar_basis_;
  Mat qbar_onb_;
  Eigen::PartialPivLU<Mat> frame_lu_;  // [kbar.onb | qbar_onb]
  double model_residual_ = 0.0;
};

BarModel build_bar_model(const BundleSplit& split, double s);

MetricGs metric_gs(const BundleSplit& split, double s);

struct BracketFormulaReport {
  double max_residual = 0.0;
  int samples = 0;
};

/// Evaluates the three closed-form bracket identities of the model against
/// the generic componentwise bracket followed by projection to qbar, on
/// random coefficient samples.
BracketFormulaReport bracket_formula_check(const BarModel& bar, int n_samples,
                                           SeededRng& rng);

}  // namespace liebundle
