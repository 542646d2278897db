#pragma once

#include <string>
#include <vector>

#include "fstube/riccati.hpp"
#include "fstube/submanifold.hpp"

namespace fstube {

enum class FocalMethod { closed_form, numeric };

const char* to_string(FocalMethod m);

struct BranchFocal {
  std::string direction;  // "tangent", "normal" or "J-xi"
  RiccatiBranch branch;
  double radius = 0.0;    // first blow-up
};

struct FocalReport {
  std::vector<BranchFocal> branches;
  double minimum = 0.0;
  int multiplicity = 0;   // total multiplicity of branches blowing up at the minimum
  FocalMethod method = FocalMethod::closed_form;
};

// Branches of a complex k-dimensional X ⊂ ℙⁿ along ξ, given the spectrum of A_ξ:
// one κ = 1 branch per eigenvalue (θ = arccot λᵢ), 2(n−k)−2 normal κ = 1
// branches with θ = 0 and the κ = 2, θ = 0 branch of Jξ.
FocalReport focal_report_from_spectrum(const Eigen::VectorXd& spectrum, int n, int k,
                                       FocalMethod method = FocalMethod::closed_form,
                                       const Tolerances& tol = kDefaultTolerances);

FocalReport focal_distance_along(const Submanifold& x, const ProjectivePoint& p, const TangentVector& xi,
                                 FocalMethod method = FocalMethod::closed_form,
                                 const Tolerances& tol = kDefaultTolerances);

// Minimum of focal_distance_along over num_points × num_normals samples. As a
// minimum over a subset it is an upper bound for the true infimum ζ.
struct FocalEstimate {
  double estimate = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  int samples = 0;
  int failures = 0;        // points that could not be sampled or framed (resampled)
  int multiplicity = 0;    // at the argmin
  CVector argmin_point;
  CVector argmin_normal;
};

FocalEstimate min_focal_distance_estimate(const Submanifold& x, int num_points, int num_normals, std::uint64_t seed,
                                          FocalMethod method = FocalMethod::closed_form,
                                          const Tolerances& tol = kDefaultTolerances);

}  // namespace fstube
