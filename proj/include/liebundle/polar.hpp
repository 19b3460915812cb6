#pragma once

#include "liebundle/bar_model.hpp"
#include "liebundle/rng.hpp"
#include "liebundle/symmetric_pair.hpp"

namespace liebundle {

/// Acting subalgebra l of g; with_gauge adds the fiber factor of the lifted
/// action.
struct ActionSpec {
  Subspace l;
  bool with_gauge = true;
  double closure_residual = 0.0;
};

ActionSpec make_action(const LieAlgebra& g, const Subspace& l, bool with_gauge);

/// Candidate section datum: tangent space m inside p1 and the subalgebra
/// it generates.
struct SectionCandidate {
  Subspace m;
  Subspace s_alg;              // closure of m + [m,m]
  bool flat = false;           // [m,m] = 0
  bool hypothesis_ok = false;  // [m,m] contained in k
  double hypothesis_residual = 0.0;
  double escape_residual = 0.0;  // closure defect beyond m + [m,m]
  Index bracket_dim = 0;         // dim of the [m,m] span
};

struct HypothesisResult {
  bool holds = false;
  double residual = 0.0;
};

/// Theorem gate: all pairwise brackets of m land in k.
HypothesisResult check_theorem_hypothesis(const BundleSplit& split, const Subspace& m);

SectionCandidate section_algebra(const BundleSplit& split, const Subspace& m);

/// Greedy commuting extension: repeatedly adjoin a random vector of the
/// joint commutant of the current basis inside p1 until none remains.
Subspace maximal_abelian_in_p1(const SymmetricPair& pair, SeededRng& rng);

/// Point of the total space reached by a product of exponentials, with the
/// adjoint transport of the inverse cached as a matrix on g-coordinates.
struct SamplePoint {
  Mat group_element;
  Mat ad_inverse;
  double orthogonality_residual = 0.0;  // defect of the real encoding
};

SamplePoint sample_point(const LieAlgebra& g, const Subspace& directions, int n_factors,
                         SeededRng& rng);

/// Tangent space of the (lifted) orbit through the sample, in q onb
/// coordinates, orthonormal for g_s.
Subspace orbit_tangent(const BundleSplit& split, const MetricGs& metric,
                       const ActionSpec& action, const SamplePoint& at);

/// Tangent space of the section orbit through the sample, in q onb
/// coordinates, orthonormal for g_s.
Subspace section_tangent(const BundleSplit& split, const MetricGs& metric,
                         const SectionCandidate& sc, const SamplePoint& at);

struct PolarityReport {
  double max_orthogonality = 0.0;  // worst |g_s(u,v)| over orbit/section pairs
  int samples = 0;
  int regular_samples = 0;  // orbit dimension equal to the sampled maximum
  Index orbit_dim_max = 0;
  Index section_dim = 0;
  bool dims_add = false;  // orbit + section = dim q at every regular sample
};

/// Samples section points and checks orbit/section orthogonality and the
/// dimension count.  Refuses to run when the theorem hypothesis failed,
/// unless explicitly allowed (negative controls).
PolarityReport polarity_check(const BundleSplit& split, const MetricGs& metric,
                              const ActionSpec& action, const SectionCandidate& sc,
                              int n_samples, SeededRng& rng,
                              bool allow_unverified = false);

struct HorizontalityReport {
  double max_residual = 0.0;
  int samples = 0;
};

/// section tangent against the vertical distribution at sampled points
HorizontalityReport horizontality_check(const BundleSplit& split, const MetricGs& metric,
                                        const SectionCandidate& sc, int n_samples,
                                        SeededRng& rng);

struct VerticalityReport {
  double max_residual = 0.0;
  int samples = 0;
  int regular_samples = 0;
};

/// containment of the vertical space in the orbit tangent at regular samples
VerticalityReport verticality_claim_check(const BundleSplit& split, const MetricGs& metric,
                                          const ActionSpec& action, const SectionCandidate& sc,
                                          int n_samples, SeededRng& rng);

}  // namespace liebundle
