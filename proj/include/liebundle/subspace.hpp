#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "liebundle/types.hpp"

namespace liebundle {

/// Symmetric positive-definite bilinear form on R^n with cached Cholesky
/// factor, shared between all subspaces of the same carrier.
class Form {
 public:
  explicit Form(Mat gram);

  static std::shared_ptr<const Form> euclidean(Index n);

  Index dim() const { return gram_.rows(); }
  const Mat& gram() const { return gram_; }
  bool is_euclidean() const { return identity_; }

  Vec apply(const Vec& x) const { return identity_ ? x : Vec(gram_ * x); }
  Mat apply(const Mat& x) const { return identity_ ? x : Mat(gram_ * x); }
  double inner(const Vec& x, const Vec& y) const {
    return identity_ ? x.dot(y) : x.dot(gram_ * y);
  }
  double norm(const Vec& x) const;

  // change of frame: y = L^T x turns the form into the euclidean one
  Mat to_euclid(const Mat& x) const;
  Mat from_euclid(const Mat& y) const;

 private:
  Mat gram_;
  Eigen::LLT<Mat> llt_;
  bool identity_ = false;
};

using FormPtr = std::shared_ptr<const Form>;

/// Subspace of R^n carrying an orthonormal basis with respect to a
/// designated form.  Columns of onb() satisfy onb^T * gram * onb = I.
class Subspace {
 public:
  Subspace() : onb_(0, 0), form_(Form::euclidean(0)) {}
  Subspace(Mat onb, FormPtr form);

  static Subspace zero(FormPtr form);
  static Subspace full(FormPtr form);
  /// Orthonormal basis of the column span, rank decided by singular values
  /// relative to the largest one.  A positive `scale` floors the reference
  /// singular value; pass the magnitude of the vectors a residual batch came
  /// from so that pure-noise batches rank as zero.
  static Subspace from_span(const Mat& vectors, FormPtr form,
                            double rank_tol = kRankTolRel, double scale = 0.0);

  Index ambient_dim() const { return onb_.rows(); }
  Index dim() const { return onb_.cols(); }
  const Mat& onb() const { return onb_; }
  const FormPtr& form() const { return form_; }

  /// coefficients of v against the orthonormal basis
  Vec coords(const Vec& v) const;
  Mat coords(const Mat& vs) const;
  /// orthogonal projection of v onto the subspace (ambient coordinates)
  Vec project(const Vec& v) const;

  double containment_residual(const Vec& v) const;
  double containment_residual(const Subspace& other) const;
  bool contains(const Subspace& other, double tol = kTolLin) const;
  double orthonormality_residual() const;

 private:
  Mat onb_;
  FormPtr form_;
};

Subspace orthogonal_complement(const Subspace& u, const Subspace& within);

using BilinearOp = std::function<Vec(const Vec&, const Vec&)>;

/// Smallest subspace containing the seed and closed under mul, built by
/// iterated product-and-orthonormalize.  New directions are admitted when
/// their component orthogonal to the current span exceeds
/// rank_tol * (largest candidate norm seen).
Subspace span_closure(const Mat& seed, FormPtr form, const BilinearOp& mul,
                      double rank_tol = kRankTolRel);

/// Max residual of mul(b_i, b_j) against the span of the subspace, over all
/// basis pairs.  Zero (to tolerance) certifies closedness.
double closure_residual(const Subspace& s, const BilinearOp& mul);

struct JointKernel {
  Subspace space;
  bool vacuous = false;  // empty operator list: kernel is the full carrier
};

/// Null space of a stacked operator system acting on coordinates of a
/// carrier of dimension n, via singular-value thresholding.
JointKernel joint_kernel(const std::vector<Mat>& ops, Index n,
                         double rank_tol = kRankTolRel);

}  // namespace liebundle
