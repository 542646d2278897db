#pragma once

#include "fstube/submanifold.hpp"

namespace fstube {

struct DistanceResult {
  double distance = 0.0;
  CVector closest;          // unit representative of the nearest point found
  double residual = 0.0;    // first-order (projection) residual at `closest`
  int certified_starts = 0; // starts that converged to a certified critical point
  bool ok = false;
};

// FS distance from p to X. Linear subspaces, hyperplanes and the Segre variety
// use closed forms. Hypersurfaces solve the incidence system
//   q + τ·conj(∇P(q)) = p,  P(q) = 0
// by Newton's method from tol.multistart line-intersection starts; rational
// curves maximize |⟨Γ(u), p⟩|²/|Γ(u)|² over both affine charts. The result is
// the best certified critical point (first-order residual below
// tol.first_order_residual); `ok` is false if no start certified.
DistanceResult distance_to_submanifold(const ProjectivePoint& p, const Submanifold& x,
                                       const Tolerances& tol = kDefaultTolerances);

}  // namespace fstube
