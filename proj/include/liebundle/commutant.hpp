#pragma once

#include <memory>
#include <vector>

#include "liebundle/subspace.hpp"
#include "liebundle/types.hpp"

namespace liebundle {

/// Linear operator expressed in the orthonormal coordinates of a carrier
/// subspace.
struct LinearEndo {
  Mat matrix;
  std::shared_ptr<const Subspace> carrier;
};

struct SymmetricCommutant {
  Index dim = 0;
  std::vector<Mat> basis;  // self-adjoint solutions, coordinate frame of the ops
};

/// Dimension and basis of {M : M A = A M for all A, M self-adjoint w.r.t.
/// form}, solved as a dense linear system with an SVD rank threshold.
/// A compact-group orthogonal representation is irreducible iff this space
/// is spanned by the identity.
SymmetricCommutant symmetric_commutant(const std::vector<Mat>& ops, const Mat& form,
                                       double rank_tol = kRankTolRel);

SymmetricCommutant symmetric_commutant(const std::vector<LinearEndo>& ops,
                                       double rank_tol = kRankTolRel);

struct InvariantSplit {
  bool trivial = true;              // commutant is multiples of the identity
  std::vector<Mat> projectors;      // spectral projectors of a witness element
  double invariance_residual = 0.0;  // max |(1-P) A P| over ops and projectors
};

/// Extracts explicit invariant subspaces from a nontrivial symmetric
/// commutant element via its eigenprojectors, and measures their invariance
/// under the given operators.  Assumes the operator coordinates are
/// orthonormal for the relevant metric.
InvariantSplit invariant_split(const SymmetricCommutant& sc, const std::vector<Mat>& ops,
                               double eig_gap = kEigGapTol);

}  // namespace liebundle
