#include "liebundle/commutant.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace liebundle {

namespace {

// basis of symmetric m x m matrices, unit Frobenius norm
std::vector<Mat> symmetric_basis(Index m) {
  std::vector<Mat> out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j) {
      Mat s = Mat::Zero(m, m);
      if (i == j) {
        s(i, i) = 1.0;
      } else {
        s(i, j) = s(j, i) = inv_sqrt2;
      }
      out.push_back(s);
    }
  return out;
}

}  // namespace

SymmetricCommutant symmetric_commutant(const std::vector<Mat>& ops, const Mat& form,
                                       double rank_tol) {
  if (form.rows() != form.cols())
    throw std::invalid_argument("symmetric_commutant: form must be square");
  const Index m = form.rows();
  for (const Mat& a : ops)
    if (a.rows() != m || a.cols() != m)
      throw std::invalid_argument("symmetric_commutant: operator/carrier mismatch");

  // frame y = L^T x (form = L L^T) turns form-self-adjointness into symmetry;
  // operators transform by A -> L^T A L^{-T}
  Eigen::LLT<Mat> llt(form);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("symmetric_commutant: form is not positive definite");
  Mat lt = Mat(llt.matrixU());
  Mat lt_inv = llt.matrixU().solve(Mat::Identity(m, m));
  std::vector<Mat> euc_ops;
  euc_ops.reserve(ops.size());
  for (const Mat& a : ops) euc_ops.push_back(lt * a * lt_inv);

  auto sym = symmetric_basis(m);
  const Index p = static_cast<Index>(sym.size());

  Mat coeffs;  // p x dim, columns parametrize solutions in the symmetric basis
  if (euc_ops.empty()) {
    coeffs = Mat::Identity(p, p);
  } else {
    Mat sys(static_cast<Index>(euc_ops.size()) * m * m, p);
    for (Index k = 0; k < p; ++k) {
      Index row = 0;
      for (const Mat& a : euc_ops) {
        Mat c = sym[k] * a - a * sym[k];
        sys.block(row, k, m * m, 1) = Eigen::Map<const Vec>(c.data(), m * m);
        row += m * m;
      }
    }
    Eigen::BDCSVD<Mat> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv[0] : 0.0;
    Index r = 0;
    while (r < sv.size() && sv[r] > rank_tol * smax && sv[r] > 0.0) ++r;
    coeffs = svd.matrixV().rightCols(p - r);
  }

  SymmetricCommutant out;
  out.dim = coeffs.cols();
  for (Index c = 0; c < coeffs.cols(); ++c) {
    Mat n = Mat::Zero(m, m);
    for (Index k = 0; k < p; ++k) n += coeffs(k, c) * sym[k];
    out.basis.push_back(lt_inv * n * lt);
  }
  return out;
}

SymmetricCommutant symmetric_commutant(const std::vector<LinearEndo>& ops, double rank_tol) {
  if (ops.empty())
    throw std::invalid_argument("symmetric_commutant: need a carrier; pass (ops, form)");
  const auto& carrier = ops.front().carrier;
  std::vector<Mat> mats;
  for (const auto& o : ops) {
    if (o.carrier != carrier)
      throw std::invalid_argument("symmetric_commutant: operators on different carriers");
    mats.push_back(o.matrix);
  }
  return symmetric_commutant(mats, Mat(Mat::Identity(carrier->dim(), carrier->dim())), rank_tol);
}

InvariantSplit invariant_split(const SymmetricCommutant& sc, const std::vector<Mat>& ops,
                               double eig_gap) {
  InvariantSplit out;
  if (sc.dim <= 1) return out;
  const Index m = sc.basis.front().rows();

  // witness: the basis element farthest from the line through the identity
  Mat witness;
  double best = -1.0;
  for (const Mat& b : sc.basis) {
    Mat dev = b - (b.trace() / static_cast<double>(m)) * Mat::Identity(m, m);
    double nrm = dev.norm();
    if (nrm > best) {
      best = nrm;
      witness = dev;
    }
  }
  if (best <= 0.0) return out;
  witness /= witness.norm();

  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (witness + witness.transpose()));
  const Vec& vals = eig.eigenvalues();
  const Mat& vecs = eig.eigenvectors();

  out.trivial = false;
  Index start = 0;
  for (Index i = 1; i <= m; ++i) {
    if (i == m || vals[i] - vals[i - 1] > eig_gap) {
      Mat block = vecs.middleCols(start, i - start);
      out.projectors.push_back(block * block.transpose());
      start = i;
    }
  }

  double worst = 0.0;
  for (const Mat& p : out.projectors) {
    Mat q = Mat::Identity(m, m) - p;
    for (const Mat& a : ops)
      worst = std::max(worst, (q * a * p).cwiseAbs().maxCoeff());
  }
  out.invariance_residual = worst;
  return out;
}

}  // namespace liebundle
