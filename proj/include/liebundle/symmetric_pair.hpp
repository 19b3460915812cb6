#pragma once

#include <stdexcept>
#include <vector>

#include "liebundle/lie_algebra.hpp"
#include "liebundle/subspace.hpp"

namespace liebundle {

/// Construction rejections carry the offending residual so callers can
/// report how badly the required relation failed.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// g = h (+) p1 with the Cartan relations [h,h] c h, [h,p1] c p1,
/// [p1,p1] c h, the splitting orthogonal for the invariant product.
struct SymmetricPair {
  LieAlgebraPtr g;
  Subspace h;
  Subspace p1;
  double cartan_residual = 0.0;
};

/// h = k (+) p2 as ideals ([k,p2] = 0), q = p1 (+) p2.
struct BundleSplit {
  SymmetricPair pair;
  Subspace k;
  Subspace p2;
  Subspace q;              // onb is [p1.onb | p2.onb]
  std::vector<Mat> p2_ad;  // bracket of p2 in its own onb coordinates
  double ideal_residual = 0.0;
};

/// Spans h from generators, takes the orthogonal complement as p1, and
/// verifies the Cartan relations; throws ConstructionError otherwise.
SymmetricPair make_symmetric_pair(const LieAlgebraPtr& g,
                                  const std::vector<AlgebraElement>& h_generators);

/// Spans k from generators inside h (an empty list gives the trivial k),
/// takes p2 as the complement in h and verifies both ideal conditions and
/// [k,p2] = 0; throws ConstructionError otherwise.
BundleSplit split_isotropy(const SymmetricPair& pair,
                           const std::vector<AlgebraElement>& k_generators);

}  // namespace liebundle
