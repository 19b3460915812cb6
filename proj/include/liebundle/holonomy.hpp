#pragma once

#include "liebundle/bar_model.hpp"
#include "liebundle/commutant.hpp"

namespace liebundle {

/// Operators generating the holonomy algebra of the canonical connection,
/// together with their bracket closure inside so(qbar, g_s).  All matrices
/// are in g_s-orthonormal qbar coordinates, so skew-adjoint = skew-symmetric.
struct HolonomySet {
  std::vector<Mat> generators;       // one per gbar basis vector
  std::vector<Mat> closure;          // basis of the generated Lie algebra
  double skewness_residual = 0.0;    // max |A + A^T| over closure elements
  double closedness_residual = 0.0;  // re-expansion defect of commutators
};

Mat lambda_operator(const BarModel& bar, const Vec& x_gbar);

/// max over the gbar basis of the skew-adjointness defect of the canonical
/// connection operators with respect to g_s
double natural_reductivity_check(const BarModel& bar);

HolonomySet holonomy_algebra(const BarModel& bar);

struct IrreducibilityVerdict {
  bool irreducible = false;
  Index commutant_dim = 0;
  std::vector<Mat> projectors;       // invariant-subspace witnesses if reducible
  double invariance_residual = 0.0;  // max |(1-P) A P| over generators
};

IrreducibilityVerdict irreducibility_check(const HolonomySet& hol, const MetricGs& metric);

struct TransvectionResult {
  Subspace algebra;  // subspace of gbar
  Index dim = 0;
};

/// bracket closure of qbar + [qbar, qbar] inside gbar
TransvectionResult transvection_algebra(const BarModel& bar);

struct FixedSetResult {
  Subspace fixed;  // in q onb coordinates
  bool equals_p2 = false;
  double p2_residual = 0.0;  // mutual containment defect against p2
  bool vacuous = false;      // trivial k: the fixed set is all of q
};

/// joint kernel of ad(k) acting on q: the fixed set of the isotropy action
FixedSetResult fixed_set_adk(const BundleSplit& split);

struct CenterReport {
  Index dim_z_gbar = 0;
  Index dim_z_copy = 0;              // center of the quotient-fiber copy
  bool center_in_copy = false;
  double containment_residual = 0.0;
};

/// centers of gbar and of the fiber copy, and whether z(gbar) sits inside
/// the copy factor
CenterReport center_check(const BarModel& bar);

}  // namespace liebundle
