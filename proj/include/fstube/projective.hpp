#pragma once

// Fubini–Study geometry of ℙⁿ, normalized to holomorphic sectional curvature 4
// (diameter π/2, Vol(ℙⁿ) = πⁿ/n!). Points are unit representatives in ℂⁿ⁺¹ and
// tangent vectors are horizontal lifts, i.e. Hermitian-orthogonal to the
// representative.

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "fstube/config.hpp"

namespace fstube {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Hermitian product, linear in the first slot: ⟨a, b⟩ = Σ aₖ conj(bₖ).
inline Complex hermitian(const CVector& a, const CVector& b) { return b.dot(a); }
inline double real_inner(const CVector& a, const CVector& b) { return hermitian(a, b).real(); }

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ProjectivePoint {
 public:
  // Normalizes z; throws on the zero vector.
  static ProjectivePoint from_homogeneous(const CVector& z);
  static ProjectivePoint basis(int n, int index);

  const CVector& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()) - 1; }

  // Equality up to phase: | |⟨p, q⟩| − 1 | < tol.
  bool same_as(const ProjectivePoint& other, double tol = kDefaultTolerances.point_equality) const;

 private:
  explicit ProjectivePoint(CVector rep) : rep_(std::move(rep)) {}
  CVector rep_;
};

class TangentVector {
 public:
  // `vec` must already be horizontal at `base`.
  TangentVector(ProjectivePoint base, CVector vec);
  // Horizontal projection of an arbitrary ambient vector.
  static TangentVector project(const ProjectivePoint& base, const CVector& v);

  const ProjectivePoint& base() const { return base_; }
  const CVector& vec() const { return vec_; }

  double norm() const { return vec_.norm(); }
  TangentVector normalized() const;
  TangentVector J() const { return {base_, Complex(0, 1) * vec_, Unchecked{}}; }
  TangentVector scaled(double s) const { return {base_, s * vec_, Unchecked{}}; }
  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator-(const TangentVector& o) const;

  friend double inner(const TangentVector& a, const TangentVector& b);

 private:
  struct Unchecked {};
  TangentVector(ProjectivePoint base, CVector vec, Unchecked) : base_(std::move(base)), vec_(std::move(vec)) {}
  void require_same_base(const TangentVector& o) const;

  ProjectivePoint base_;
  CVector vec_;
};

double inner(const TangentVector& a, const TangentVector& b);

double projective_volume(int n);
inline constexpr double kDiameter = 1.5707963267948966;

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// C_v(t) = [cos t · p + sin t · v] for a unit tangent v.
ProjectivePoint geodesic(const ProjectivePoint& p, const TangentVector& v, double t);
// Velocity of the same geodesic at time t, horizontal at geodesic(p, v, t).
TangentVector geodesic_velocity(const ProjectivePoint& p, const TangentVector& v, double t);

// Riemann tensor R(X, Y)Z, sign chosen so that ⟨R(X,Y)Y, X⟩ is the sectional
// curvature (4 on complex lines, 1 on totally real planes).
TangentVector curvature_tensor(const TangentVector& x, const TangentVector& y, const TangentVector& z);

// Normal Jacobi operator K_ξ(X) = R(X, ξ)ξ. Eigenvalue 4 on Jξ, 1 on
// span(ξ, Jξ)^⊥, 0 on ξ.
TangentVector curvature_operator(const TangentVector& xi, const TangentVector& x);

// Parallel transport of v along the geodesic from v.base() with unit initial
// velocity u, for time t.
TangentVector parallel_transport(const TangentVector& v, const TangentVector& u, double t);

// Uniform (unitarily invariant) point of ℙⁿ.
ProjectivePoint uniform_sample(int n, Rng& rng);
// Uniform unit vector of ℂᵐ.
CVector gaussian_unit_vector(int m, Rng& rng);

}  // namespace fstube
