#pragma once

#include <utility>
#include <vector>

#include "fstube/submanifold.hpp"

namespace fstube::detail {

double coefficient_norm(const HomogeneousPolynomial& p);

// Orthonormal basis (columns) of the Hermitian complement of the column span.
CMatrix complex_complement(const CMatrix& spanning, double threshold);

// Unit (s, t) with [Γ(s, t)] closest to p among the candidate preimages.
std::pair<Complex, Complex> curve_parameter(const RationalCurve& curve, const ProjectivePoint& p, double* residual);

struct JetBasis {
  std::vector<CVector> tangent;  // E = H · coords_to_basis, H = horizontal first derivatives
  std::vector<CVector> normal;
  Eigen::MatrixXd coords_to_basis;
};

JetBasis basis_from_jet(const LocalJet& jet, const Tolerances& tol);

}  // namespace fstube::detail
