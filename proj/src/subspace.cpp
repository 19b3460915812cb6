#include "liebundle/subspace.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace liebundle {

Form::Form(Mat gram) : gram_(std::move(gram)), llt_(gram_) {
  if (gram_.rows() != gram_.cols())
    throw std::invalid_argument("Form: gram matrix must be square");
  if (gram_.rows() > 0 && llt_.info() != Eigen::Success)
    throw std::invalid_argument("Form: gram matrix is not positive definite");
  identity_ = gram_.isIdentity(0.0);
}

std::shared_ptr<const Form> Form::euclidean(Index n) {
  return std::make_shared<Form>(Mat::Identity(n, n));
}

double Form::norm(const Vec& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

Mat Form::to_euclid(const Mat& x) const {
  return identity_ ? x : Mat(llt_.matrixU() * x);
}

Mat Form::from_euclid(const Mat& y) const {
  return identity_ ? y : Mat(llt_.matrixU().solve(y));
}

Subspace::Subspace(Mat onb, FormPtr form) : onb_(std::move(onb)), form_(std::move(form)) {
  if (!form_) throw std::invalid_argument("Subspace: null form");
  if (onb_.rows() != form_->dim())
    throw std::invalid_argument("Subspace: basis rows do not match carrier dimension");
}

Subspace Subspace::zero(FormPtr form) {
  Index n = form->dim();
  return Subspace(Mat(n, 0), std::move(form));
}

Subspace Subspace::full(FormPtr form) {
  // orthonormalize the coordinate basis against the form
  Index n = form->dim();
  return from_span(Mat::Identity(n, n), std::move(form));
}

Subspace Subspace::from_span(const Mat& vectors, FormPtr form, double rank_tol,
                             double scale) {
  if (vectors.cols() == 0) return zero(std::move(form));
  Mat w = form->to_euclid(vectors);
  Eigen::BDCSVD<Mat> svd(w, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double smax = std::max(sv.size() ? sv[0] : 0.0, scale);
  Index r = 0;
  while (r < sv.size() && sv[r] > rank_tol * smax && sv[r] > 0.0) ++r;
  Mat basis = form->from_euclid(Mat(svd.matrixU().leftCols(r)));
  return Subspace(std::move(basis), std::move(form));
}

Vec Subspace::coords(const Vec& v) const {
  return onb_.transpose() * form_->apply(v);
}

Mat Subspace::coords(const Mat& vs) const {
  return onb_.transpose() * form_->apply(vs);
}

Vec Subspace::project(const Vec& v) const { return onb_ * coords(v); }

double Subspace::containment_residual(const Vec& v) const {
  return form_->norm(v - project(v));
}

double Subspace::containment_residual(const Subspace& other) const {
  double worst = 0.0;
  for (Index j = 0; j < other.dim(); ++j)
    worst = std::max(worst, containment_residual(Vec(other.onb().col(j))));
  return worst;
}

bool Subspace::contains(const Subspace& other, double tol) const {
  return containment_residual(other) < tol;
}

double Subspace::orthonormality_residual() const {
  if (dim() == 0) return 0.0;
  Mat g = onb_.transpose() * form_->apply(onb_);
  return (g - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Subspace orthogonal_complement(const Subspace& u, const Subspace& within) {
  if (u.ambient_dim() != within.ambient_dim())
    throw std::invalid_argument("orthogonal_complement: carrier mismatch");
  double res = within.containment_residual(u);
  if (res > 1e-8)
    throw std::invalid_argument("orthogonal_complement: U is not contained in the ambient subspace");
  if (u.dim() == 0) return within;
  // remove the U-components of the within basis, then re-span; the rank
  // cut is floored at the unit scale of the original orthonormal columns
  Mat resid = within.onb();
  for (Index j = 0; j < resid.cols(); ++j) {
    Vec v = resid.col(j);
    resid.col(j) = v - u.project(v);
  }
  Subspace comp = Subspace::from_span(resid, within.form(), kRankTolRel, 1.0);
  if (comp.dim() + u.dim() != within.dim())
    throw std::runtime_error("orthogonal_complement: dimension accounting failed");
  return comp;
}

namespace {

// Modified Gram-Schmidt append with one re-orthogonalization pass.
// Returns indices in `basis` of the newly admitted vectors.
std::vector<Index> gs_append(Mat& basis, Index& count, const Mat& cands,
                             const Form& form, double admit_tol) {
  std::vector<Index> fresh;
  for (Index j = 0; j < cands.cols(); ++j) {
    if (count == basis.rows()) break;
    Vec v = cands.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < count; ++i) {
        Vec b = basis.col(i);
        v -= form.inner(b, v) * b;
      }
    }
    double nrm = form.norm(v);
    if (nrm > admit_tol) {
      basis.col(count) = v / nrm;
      fresh.push_back(count);
      ++count;
    }
  }
  return fresh;
}

}  // namespace

Subspace span_closure(const Mat& seed, FormPtr form, const BilinearOp& mul,
                      double rank_tol) {
  if (seed.cols() == 0)
    throw std::invalid_argument("span_closure: empty seed");
  const Index n = form->dim();
  double scale = 0.0;
  for (Index j = 0; j < seed.cols(); ++j)
    scale = std::max(scale, form->norm(seed.col(j)));
  if (scale == 0.0) scale = 1.0;

  Mat basis(n, n);
  Index count = 0;
  std::vector<Index> frontier = gs_append(basis, count, seed, *form, rank_tol * scale);

  while (!frontier.empty() && count < n) {
    Mat products(n, static_cast<Index>(frontier.size()) * count * 2);
    Index c = 0;
    for (Index f : frontier) {
      for (Index i = 0; i < count; ++i) {
        Vec x = basis.col(f), y = basis.col(i);
        products.col(c++) = mul(x, y);
        products.col(c++) = mul(y, x);
      }
    }
    products.conservativeResize(n, c);
    for (Index j = 0; j < c; ++j)
      scale = std::max(scale, form->norm(products.col(j)));
    frontier = gs_append(basis, count, products, *form, rank_tol * scale);
  }
  return Subspace(Mat(basis.leftCols(count)), std::move(form));
}

double closure_residual(const Subspace& s, const BilinearOp& mul) {
  double worst = 0.0;
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = i + 1; j < s.dim(); ++j) {
      Vec p = mul(Vec(s.onb().col(i)), Vec(s.onb().col(j)));
      worst = std::max(worst, s.containment_residual(p));
    }
  return worst;
}

JointKernel joint_kernel(const std::vector<Mat>& ops, Index n, double rank_tol) {
  if (ops.empty())
    return JointKernel{Subspace::full(Form::euclidean(n)), true};
  Mat stacked(static_cast<Index>(ops.size()) * n, n);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != n || ops[i].cols() != n)
      throw std::invalid_argument("joint_kernel: operator does not act on the carrier");
    stacked.middleRows(static_cast<Index>(i) * n, n) = ops[i];
  }
  Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv[0] : 0.0;
  Index r = 0;
  while (r < sv.size() && sv[r] > rank_tol * smax && sv[r] > 0.0) ++r;
  Mat kernel = svd.matrixV().rightCols(n - r);
  return JointKernel{Subspace(std::move(kernel), Form::euclidean(n)), false};
}

}  // namespace liebundle
