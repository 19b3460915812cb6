#pragma once

#include <memory>
#include <string>
#include <vector>

#include "liebundle/subspace.hpp"
#include "liebundle/types.hpp"

namespace liebundle {

enum class Family { SU, SO, SP };

class LieAlgebra;
using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Compact real matrix Lie algebra given by a basis of skew-symmetric
/// matrices in a real encoding, with structure constants and an invariant
/// inner product g(X,Y) = -trace(XY)/c normalized to a unit first basis
/// vector.  Elements are coefficient vectors against the basis.
class LieAlgebra {
 public:
  static LieAlgebraPtr classical(Family family, int n);
  static LieAlgebraPtr direct_sum(const LieAlgebraPtr& a, const LieAlgebraPtr& b);

  const std::string& name() const { return name_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  Index ambient_size() const { return basis_.empty() ? 0 : basis_[0].rows(); }
  const Mat& basis_matrix(Index i) const { return basis_[i]; }
  const Mat& gram() const { return form_->gram(); }
  const FormPtr& form() const { return form_; }
  double trace_scale() const { return trace_scale_; }

  Mat realize(const Vec& coords) const;
  /// least-squares expansion of an ambient matrix in the basis
  Vec coordinates(const Mat& m, double* residual = nullptr) const;

  /// matrix commutator, re-expanded in the basis; throws if the expansion
  /// residual signals that the basis is not closed
  Vec bracket(const Vec& x, const Vec& y) const;
  /// same bracket through the structure-constant contraction
  Vec bracket_structure(const Vec& x, const Vec& y) const;
  /// matrix of ad(x) acting on coordinates
  Mat ad(const Vec& x) const;
  const Mat& ad_basis(Index i) const { return ad_[i]; }

  double inner(const Vec& x, const Vec& y) const { return form_->inner(x, y); }

  double jacobi_residual() const { return jacobi_residual_; }
  double ad_invariance_residual() const { return ad_invariance_residual_; }

  BilinearOp bracket_op() const;

 private:
  LieAlgebra(std::string name, std::vector<Mat> basis);

  std::string name_;
  std::vector<Mat> basis_;
  double trace_scale_ = 1.0;  // c in g(X,Y) = -trace(XY)/c
  FormPtr form_;
  std::vector<Mat> ad_;  // ad_[i].col(j) = coordinates of [B_i, B_j]
  Mat expand_;           // pseudo-inverse map vec(ambient) -> coordinates
  double jacobi_residual_ = 0.0;
  double ad_invariance_residual_ = 0.0;
};

struct AlgebraElement {
  LieAlgebraPtr ambient;
  Vec coords;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// real 2n x 2n encoding of a complex n x n matrix
Mat realify(const CMat& z);

// building blocks reused by the isotropy constructions
namespace gens {
std::vector<CMat> su_complex(int n);
std::vector<CMat> sp_complex(int n, int total, int offset);
std::vector<Mat> so_real(int n, int total, int offset);
}  // namespace gens

}  // namespace liebundle
