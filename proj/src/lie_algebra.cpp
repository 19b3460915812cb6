#include "liebundle/lie_algebra.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace liebundle {

using std::complex;

Mat realify(const CMat& z) {
  Index n = z.rows();
  Mat r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = z.real();
  r.topRightCorner(n, n) = -z.imag();
  r.bottomLeftCorner(n, n) = z.imag();
  r.bottomRightCorner(n, n) = z.real();
  return r;
}

namespace gens {

std::vector<CMat> su_complex(int n) {
  const complex<double> i1(0.0, 1.0);
  std::vector<CMat> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat f = CMat::Zero(n, n);
      f(i, j) = 1.0;
      f(j, i) = -1.0;
      out.push_back(f);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat g = CMat::Zero(n, n);
      g(i, j) = i1;
      g(j, i) = i1;
      out.push_back(g);
    }
  for (int k = 0; k + 1 < n; ++k) {
    CMat d = CMat::Zero(n, n);
    for (int l = 0; l <= k; ++l) d(l, l) = i1;
    d(k + 1, k + 1) = -static_cast<double>(k + 1) * i1;
    out.push_back(d);
  }
  return out;
}

std::vector<CMat> sp_complex(int m, int total, int offset) {
  // sp(m) block of sp(total), complex 2*total matrices inside su(2*total):
  // [[A, -conj(B)], [B, conj(A)]] with A skew-hermitian, B symmetric.
  const complex<double> i1(0.0, 1.0);
  std::vector<CMat> out;
  const int N = 2 * total;
  auto put_a = [&](const CMat& a) {
    CMat z = CMat::Zero(N, N);
    z.block(offset, offset, m, m) = a;
    z.block(total + offset, total + offset, m, m) = a.conjugate();
    out.push_back(z);
  };
  auto put_b = [&](const CMat& b) {
    CMat z = CMat::Zero(N, N);
    z.block(offset, total + offset, m, m) = -b.conjugate();
    z.block(total + offset, offset, m, m) = b;
    out.push_back(z);
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      CMat f = CMat::Zero(m, m);
      f(i, j) = 1.0;
      f(j, i) = -1.0;
      put_a(f);
      CMat g = CMat::Zero(m, m);
      g(i, j) = i1;
      g(j, i) = i1;
      put_a(g);
    }
  for (int k = 0; k < m; ++k) {
    CMat d = CMat::Zero(m, m);
    d(k, k) = i1;
    put_a(d);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      CMat s = CMat::Zero(m, m);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      put_b(s);
      put_b(CMat(i1 * s));
    }
  return out;
}

std::vector<Mat> so_real(int n, int total, int offset) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat e = Mat::Zero(total, total);
      e(offset + i, offset + j) = 1.0;
      e(offset + j, offset + i) = -1.0;
      out.push_back(e);
    }
  return out;
}

}  // namespace gens

namespace {

double neg_trace(const Mat& a, const Mat& b) { return -(a * b).trace(); }

Vec flatten(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<Mat> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  if (basis_.empty()) throw std::invalid_argument("LieAlgebra: empty basis");
  const Index d = dim();
  const Index N = basis_[0].rows();

  for (const Mat& b : basis_) {
    if (b.rows() != N || b.cols() != N)
      throw std::invalid_argument("LieAlgebra: basis size mismatch");
    if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("LieAlgebra: basis matrix is not skew-symmetric");
  }

  // normalize: g(X,Y) = -trace(XY)/c with the first basis vector of unit norm
  trace_scale_ = neg_trace(basis_[0], basis_[0]);
  if (trace_scale_ <= 0.0)
    throw std::invalid_argument("LieAlgebra: degenerate first basis vector");
  for (Mat& b : basis_) {
    double nrm2 = neg_trace(b, b) / trace_scale_;
    b /= std::sqrt(nrm2);
  }

  Mat gram(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      gram(i, j) = gram(j, i) = neg_trace(basis_[i], basis_[j]) / trace_scale_;
  form_ = std::make_shared<Form>(gram);

  // expansion operator: least squares against the flattened basis
  Mat bflat(N * N, d);
  for (Index i = 0; i < d; ++i) bflat.col(i) = flatten(basis_[i]);
  Mat gramF = bflat.transpose() * bflat;
  expand_ = gramF.llt().solve(Mat(bflat.transpose()));

  // structure constants via the matrix bracket, antisymmetry by construction
  ad_.assign(d, Mat::Zero(d, d));
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      Mat m = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      Vec c = expand_ * flatten(m);
      double resid = (bflat * c - flatten(m)).norm();
      if (resid > 1e-8 * (1.0 + m.norm()))
        throw std::invalid_argument("LieAlgebra: basis is not closed under the bracket");
      ad_[i].col(j) = c;
      ad_[j].col(i) = -c;
    }

  // algebra axioms, measured over all basis triples
  double jac = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j)
      for (Index k = j + 1; k < d; ++k) {
        // cyclic sum ad_i[e_j,e_k] + ad_j[e_k,e_i] + ad_k[e_i,e_j], the
        // negative of the Jacobi defect
        Vec r = ad_[i] * ad_[j].col(k) + ad_[j] * Vec(ad_[k].col(i)) +
                ad_[k] * Vec(ad_[i].col(j));
        jac = std::max(jac, form_->norm(r));
      }
  jacobi_residual_ = jac;

  double adi = 0.0;
  const Mat& g = form_->gram();
  for (Index i = 0; i < d; ++i) {
    Mat m = ad_[i].transpose() * g + g * ad_[i];
    adi = std::max(adi, m.cwiseAbs().maxCoeff());
  }
  ad_invariance_residual_ = adi;
}

Mat LieAlgebra::realize(const Vec& coords) const {
  if (coords.size() != dim())
    throw std::invalid_argument("realize: coordinate length mismatch");
  Mat m = Mat::Zero(ambient_size(), ambient_size());
  for (Index i = 0; i < dim(); ++i)
    if (coords[i] != 0.0) m += coords[i] * basis_[i];
  return m;
}

Vec LieAlgebra::coordinates(const Mat& m, double* residual) const {
  Vec c = expand_ * flatten(m);
  if (residual) {
    Mat back = Mat::Zero(ambient_size(), ambient_size());
    for (Index i = 0; i < dim(); ++i) back += c[i] * basis_[i];
    *residual = (back - m).norm();
  }
  return c;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Mat mx = realize(x), my = realize(y);
  Mat m = mx * my - my * mx;
  double resid = 0.0;
  Vec c = coordinates(m, &resid);
  if (resid > 1e-8 * (1.0 + m.norm()))
    throw std::runtime_error("bracket: expansion residual exceeds tolerance");
  return c;
}

Vec LieAlgebra::bracket_structure(const Vec& x, const Vec& y) const {
  return ad(x) * y;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("ad: coordinate length mismatch");
  Mat m = Mat::Zero(dim(), dim());
  for (Index i = 0; i < dim(); ++i)
    if (x[i] != 0.0) m += x[i] * ad_[i];
  return m;
}

BilinearOp LieAlgebra::bracket_op() const {
  return [this](const Vec& x, const Vec& y) { return bracket_structure(x, y); };
}

LieAlgebraPtr LieAlgebra::classical(Family family, int n) {
  switch (family) {
    case Family::SU: {
      if (n < 2) throw std::invalid_argument("su(n) requires n >= 2");
      std::vector<Mat> basis;
      for (const CMat& z : gens::su_complex(n)) basis.push_back(realify(z));
      auto alg = LieAlgebraPtr(new LieAlgebra("su(" + std::to_string(n) + ")", std::move(basis)));
      if (alg->dim() != n * n - 1) throw std::logic_error("su dimension mismatch");
      return alg;
    }
    case Family::SO: {
      if (n < 3) throw std::invalid_argument("so(n) requires n >= 3");
      auto alg = LieAlgebraPtr(new LieAlgebra("so(" + std::to_string(n) + ")",
                                              gens::so_real(n, n, 0)));
      if (alg->dim() != n * (n - 1) / 2) throw std::logic_error("so dimension mismatch");
      return alg;
    }
    case Family::SP: {
      if (n < 2) throw std::invalid_argument("sp(n) requires n >= 2");
      std::vector<Mat> basis;
      for (const CMat& z : gens::sp_complex(n, n, 0)) basis.push_back(realify(z));
      auto alg = LieAlgebraPtr(new LieAlgebra("sp(" + std::to_string(n) + ")", std::move(basis)));
      if (alg->dim() != n * (2 * n + 1)) throw std::logic_error("sp dimension mismatch");
      return alg;
    }
  }
  throw std::invalid_argument("unsupported family");
}

LieAlgebraPtr LieAlgebra::direct_sum(const LieAlgebraPtr& a, const LieAlgebraPtr& b) {
  Index na = a->ambient_size(), nb = b->ambient_size();
  std::vector<Mat> basis;
  for (Index i = 0; i < a->dim(); ++i) {
    Mat m = Mat::Zero(na + nb, na + nb);
    m.topLeftCorner(na, na) = a->basis_matrix(i);
    basis.push_back(m);
  }
  for (Index i = 0; i < b->dim(); ++i) {
    Mat m = Mat::Zero(na + nb, na + nb);
    m.bottomRightCorner(nb, nb) = b->basis_matrix(i);
    basis.push_back(m);
  }
  return LieAlgebraPtr(new LieAlgebra(a->name() + "+" + b->name(), std::move(basis)));
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.ambient != y.ambient)
    throw std::invalid_argument("bracket: elements of different algebras");
  return AlgebraElement{x.ambient, x.ambient->bracket(x.coords, y.coords)};
}

}  // namespace liebundle
