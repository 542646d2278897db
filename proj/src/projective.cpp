#include "fstube/projective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fstube {

ProjectivePoint ProjectivePoint::from_homogeneous(const CVector& z) {
  const double nz = z.norm();
  if (!(nz > 0.0) || !std::isfinite(nz)) throw GeometryError("projective point from zero or non-finite vector");
  return ProjectivePoint(z / nz);
}

ProjectivePoint ProjectivePoint::basis(int n, int index) {
  if (n < 0 || index < 0 || index > n) throw GeometryError("basis index out of range");
  CVector z = CVector::Zero(n + 1);
  z(index) = 1.0;
  return ProjectivePoint(std::move(z));
}

bool ProjectivePoint::same_as(const ProjectivePoint& other, double tol) const {
  if (other.dim() != dim()) return false;
  return std::abs(std::abs(hermitian(rep_, other.rep_)) - 1.0) < tol;
}

TangentVector::TangentVector(ProjectivePoint base, CVector vec) : base_(std::move(base)), vec_(std::move(vec)) {
  if (vec_.size() != base_.rep().size()) throw GeometryError("tangent vector dimension mismatch");
  const double defect = std::abs(hermitian(vec_, base_.rep()));
  if (defect > kDefaultTolerances.horizontal * std::max(1.0, vec_.norm()))
    throw GeometryError("tangent vector is not horizontal");
}

TangentVector TangentVector::project(const ProjectivePoint& base, const CVector& v) {
  if (v.size() != base.rep().size()) throw GeometryError("tangent vector dimension mismatch");
  return {base, v - hermitian(v, base.rep()) * base.rep(), Unchecked{}};
}

TangentVector TangentVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw GeometryError("cannot normalize zero tangent vector");
  return {base_, vec_ / n, Unchecked{}};
}

void TangentVector::require_same_base(const TangentVector& o) const {
  if (o.vec_.size() != vec_.size() || (o.base_.rep() - base_.rep()).norm() > kDefaultTolerances.point_equality)
    throw GeometryError("tangent vectors live at different base points");
}

TangentVector TangentVector::operator+(const TangentVector& o) const {
  require_same_base(o);
  return {base_, vec_ + o.vec_, Unchecked{}};
}

TangentVector TangentVector::operator-(const TangentVector& o) const {
  require_same_base(o);
  return {base_, vec_ - o.vec_, Unchecked{}};
}

double inner(const TangentVector& a, const TangentVector& b) {
  a.require_same_base(b);
  return real_inner(a.vec_, b.vec_);
}

double projective_volume(int n) { return std::pow(std::numbers::pi, n) / std::tgamma(n + 1.0); }

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.dim() != q.dim()) throw GeometryError("fs_distance: dimension mismatch");
  const Complex c = hermitian(q.rep(), p.rep());
  // atan2 of the horizontal and vertical parts equals arccos(clamp(|⟨p,q⟩|, 0, 1))
  // but keeps full relative accuracy near 0.
  const double cosd = std::min(1.0, std::abs(c));
  const double sind = (q.rep() - c * p.rep()).norm();
  return std::clamp(std::atan2(sind, cosd), 0.0, kDiameter);
}

namespace {
void require_unit(const TangentVector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw GeometryError(std::string(what) + ": tangent vector must be unit");
}
void require_base(const ProjectivePoint& p, const TangentVector& v) {
  if (p.dim() != v.base().dim() || (p.rep() - v.base().rep()).norm() > kDefaultTolerances.point_equality)
    throw GeometryError("tangent vector is not based at the given point");
}
}  // namespace

ProjectivePoint geodesic(const ProjectivePoint& p, const TangentVector& v, double t) {
  require_unit(v, "geodesic");
  require_base(p, v);
  return ProjectivePoint::from_homogeneous(std::cos(t) * p.rep() + std::sin(t) * v.vec());
}

TangentVector geodesic_velocity(const ProjectivePoint& p, const TangentVector& v, double t) {
  require_unit(v, "geodesic_velocity");
  require_base(p, v);
  const CVector at = std::cos(t) * p.rep() + std::sin(t) * v.vec();
  const CVector vel = -std::sin(t) * p.rep() + std::cos(t) * v.vec();
  // |at| = 1 exactly in exact arithmetic; renormalize to absorb rounding.
  const double s = at.norm();
  return TangentVector::project(ProjectivePoint::from_homogeneous(at), vel / s);
}

TangentVector curvature_tensor(const TangentVector& x, const TangentVector& y, const TangentVector& z) {
  const TangentVector jx = x.J(), jy = y.J(), jz = z.J();
  // Constant holomorphic sectional curvature c = 4, so the prefactor c/4 is 1.
  return x.scaled(inner(y, z)) - y.scaled(inner(x, z)) + jx.scaled(inner(jy, z)) - jy.scaled(inner(jx, z)) +
         jz.scaled(2.0 * inner(x, jy));
}

TangentVector curvature_operator(const TangentVector& xi, const TangentVector& x) {
  return curvature_tensor(x, xi, xi);
}

TangentVector parallel_transport(const TangentVector& v, const TangentVector& u, double t) {
  require_unit(u, "parallel_transport");
  const ProjectivePoint& p = u.base();
  require_base(p, v);
  // Split v = c·u + w with w ⊥_ℂ {p, u}; w is constant along the horizontal
  // great circle and u ↦ γ'(t) is transported with the (complex) velocity line.
  const Complex c = hermitian(v.vec(), u.vec());
  const CVector vel = -std::sin(t) * p.rep() + std::cos(t) * u.vec();
  const ProjectivePoint q = geodesic(p, u, t);
  return TangentVector::project(q, v.vec() + c * (vel - u.vec()));
}

CVector gaussian_unit_vector(int m, Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    CVector z(m);
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i) = Complex(re, im);
    }
    const double nz = z.norm();
    if (nz > 1e-300) return z / nz;
  }
}

ProjectivePoint uniform_sample(int n, Rng& rng) {
  if (n < 1) throw GeometryError("uniform_sample requires n >= 1");
  return ProjectivePoint::from_homogeneous(gaussian_unit_vector(n + 1, rng));
}

}  // namespace fstube
