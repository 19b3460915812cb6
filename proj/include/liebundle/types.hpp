#pragma once

#include <Eigen/Dense>

namespace liebundle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Tolerance policy: algebraic identities and orthonormality are checked
// against absolute thresholds; rank decisions are relative to the largest
// singular value of the matrix being ranked.
inline constexpr double kTolAlg = 1e-10;
inline constexpr double kTolLin = 1e-10;
inline constexpr double kRankTolRel = 1e-8;
inline constexpr double kEigGapTol = 1e-6;

}  // namespace liebundle
