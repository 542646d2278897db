#pragma once

// Principal curvatures of tubes along a normal geodesic. Each branch solves
// λ' = λ² + κ² with κ ∈ {1, 2}; the solutions are λ(r) = κ·cot(κ(θ − r)).
// The sign convention is that of A(r)Y(r) = −Y'(r), so the branch of a
// Jacobi field vanishing at r = 0 is −κ·cot(κr) (θ = 0).

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fstube/config.hpp"

namespace fstube {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RiccatiBranch {
  int kappa = 1;          // 1 or 2
  double theta = 0.0;     // ∈ [0, π/κ); θ = 0 encodes λ(0) = −∞
  int multiplicity = 1;

  RiccatiBranch() = default;
  RiccatiBranch(int kappa, double theta, int multiplicity = 1);
  // θ with κ·cot(κθ) = λ0.
  static RiccatiBranch from_initial_value(int kappa, double lambda0, int multiplicity = 1);

  double period() const;        // π/κ
  double blowup_radius() const; // θ if θ > 0, else π/κ
  // Branch seen from the point at distance r along the geodesic: θ ↦ θ − r mod π/κ.
  RiccatiBranch advanced(double r) const;
};

// κ·cot(κ(θ − r)). Exactly at a blow-up returns ±infinity: −∞ at r = θ = 0
// (the initial value of a vanishing Jacobi field) and +∞ otherwise (the limit
// from below in r).
double riccati_closed_form(const RiccatiBranch& b, double r);
// Signed distance in the phase variable between two branches with equal κ,
// reduced to (−π/2κ, π/2κ].
double phase_difference(const RiccatiBranch& a, const RiccatiBranch& b);

struct RiccatiTrajectory {
  std::vector<double> r;       // output grid j·step, up to the blow-up or r_max
  std::vector<double> lambda;
  double blowup_radius = 0.0;  // +∞ if none in [0, r_max]
  long steps = 0;              // RK4 steps taken
};

// RK4 on the raw equation while |λ| < tol.riccati_switch, on the phase
// variable φ (λ = κ·cot(κφ), φ' = −1) beyond it. The blow-up (|λ| above
// tol.riccati_blowup) is refined by bisection to tol.bisection_radius. The run
// is repeated with step/2 and rejected if the two disagree.
RiccatiTrajectory riccati_integrate_numeric(const RiccatiBranch& b, double r_max, double step,
                                            const Tolerances& tol = kDefaultTolerances);

// Jacobi fields in a parallel frame that diagonalizes the normal Jacobi
// operator, so every component solves y'' + κ²y = 0.
struct JacobiState {
  Eigen::VectorXd y;
  Eigen::VectorXd dy;
  Eigen::VectorXd kappa;  // per component, κ² is the Jacobi-operator eigenvalue
};

JacobiState jacobi_integrate(const JacobiState& s, double r);
// −⟨Y', Y⟩ / |Y|², the tube principal curvature along an eigen-field.
double jacobi_shape_value(const JacobiState& s);

// M-Jacobi defect for components ordered [tangent (m) | normal]: the largest of
// |Y(0)^⊥| and |(Y'(0) + A·Y(0))^⊤|.
double m_jacobi_defect(const JacobiState& s, const Eigen::MatrixXd& shape);

// Shape operator A(r) = −Y'(r)Y(r)⁻¹ of the tube at distance r, from the
// M-Jacobi fields with Y(0) = Eᵢ, Y'(0) = −A Eᵢ (tangent) and Y(0) = 0,
// Y'(0) = Nⱼ (normal). Components: [tangent (m) | Jξ | other normals].
Eigen::MatrixXd tube_shape_operator(const Eigen::MatrixXd& shape, int other_normals, double r);

}  // namespace fstube
