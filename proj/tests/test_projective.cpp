#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fstube/projective.hpp"

using namespace fstube;

namespace {

constexpr double kPi = std::numbers::pi;

TangentVector random_unit_tangent(const ProjectivePoint& p, Rng& rng) {
  const CVector g = gaussian_unit_vector(p.dim() + 1, rng);
  return TangentVector::project(p, g).normalized();
}

// Parallel transport along the horizontal great circle c(t) = cos t·p + sin t·u
// solves V' = −⟨V, c'⟩ c (horizontal part of V' vanishes). Plain RK4.
CVector transport_ode(const CVector& p, const CVector& u, const CVector& v0, double t, int steps) {
  auto c = [&](double s) -> CVector { return std::cos(s) * p + std::sin(s) * u; };
  auto dc = [&](double s) -> CVector { return -std::sin(s) * p + std::cos(s) * u; };
  auto f = [&](double s, const CVector& v) -> CVector { return -dc(s).dot(v) * c(s); };
  CVector v = v0;
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const double s = i * h;
    const CVector k1 = f(s, v);
    const CVector k2 = f(s + h / 2, v + h / 2 * k1);
    const CVector k3 = f(s + h / 2, v + h / 2 * k2);
    const CVector k4 = f(s + h, v + h * k3);
    v += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return v;
}

}  // namespace

TEST_CASE("distance is phase invariant and bounded by the diameter") {
  Rng rng = stream_rng(1, 0);
  for (int i = 0; i < 50; ++i) {
    const ProjectivePoint p = uniform_sample(3, rng), q = uniform_sample(3, rng);
    const double d = fs_distance(p, q);
    CHECK(d >= 0.0);
    CHECK(d <= kPi / 2 + 1e-15);
    const ProjectivePoint q2 = ProjectivePoint::from_homogeneous(std::polar(2.5, 0.7) * q.rep());
    CHECK(fs_distance(p, q2) == doctest::Approx(d).epsilon(1e-14));
    // cos d = |⟨p, q⟩| for unit representatives
    CHECK(std::cos(d) == doctest::Approx(std::abs(q.rep().dot(p.rep()))).epsilon(1e-12));
  }
  CHECK(fs_distance(ProjectivePoint::basis(2, 0), ProjectivePoint::basis(2, 1)) == doctest::Approx(kPi / 2));
  CHECK(fs_distance(ProjectivePoint::basis(2, 1), ProjectivePoint::basis(2, 1)) == 0.0);
}

TEST_CASE("geodesics realize the distance up to pi/2") {
  Rng rng = stream_rng(2, 0);
  for (int i = 0; i < 20; ++i) {
    const ProjectivePoint p = uniform_sample(4, rng);
    const TangentVector v = random_unit_tangent(p, rng);
    for (double t : {1e-6, 0.1, 0.7, 1.3, 1.57}) CHECK(fs_distance(p, geodesic(p, v, t)) == doctest::Approx(t).epsilon(1e-9));
    // Velocity is unit and matches a central difference of the curve.
    const double t = 0.4, h = 1e-6;
    const TangentVector vel = geodesic_velocity(p, v, t);
    CHECK(vel.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const double dist = fs_distance(geodesic(p, v, t - h), geodesic(p, v, t + h));
    CHECK(dist / (2 * h) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("ambient volume") {
  CHECK(projective_volume(1) == doctest::Approx(kPi));
  CHECK(projective_volume(2) == doctest::Approx(kPi * kPi / 2));
  CHECK(projective_volume(3) == doctest::Approx(kPi * kPi * kPi / 6));
}

TEST_CASE("sectional curvature lies in [1, 4]") {
  Rng rng = stream_rng(3, 0);
  for (int i = 0; i < 50; ++i) {
    const ProjectivePoint p = uniform_sample(3, rng);
    const TangentVector x = random_unit_tangent(p, rng);
    TangentVector y = random_unit_tangent(p, rng);
    y = (y - x.scaled(inner(x, y))).normalized();
    const double k = inner(curvature_tensor(x, y, y), x);
    // For orthonormal X, Y: K = 1 + 3⟨X, JY⟩².
    const double jxy = inner(x, y.J());
    CHECK(k == doctest::Approx(1.0 + 3.0 * jxy * jxy).epsilon(1e-12));
    CHECK(inner(curvature_tensor(x, x.J(), x.J()), x) == doctest::Approx(4.0));
    // Jacobi operator eigenvalues: 0 on ξ, 4 on Jξ, 1 on the rest.
    CHECK(curvature_operator(x, x).norm() < 1e-12);
    CHECK((curvature_operator(x, x.J()) - x.J().scaled(4.0)).norm() < 1e-12);
    const TangentVector w = (y - x.J().scaled(inner(x.J(), y))).normalized();
    CHECK((curvature_operator(x, w) - w).norm() < 1e-12);
  }
}

TEST_CASE("parallel transport agrees with the transport ODE") {
  Rng rng = stream_rng(4, 0);
  for (int i = 0; i < 10; ++i) {
    const ProjectivePoint p = uniform_sample(3, rng);
    const TangentVector u = random_unit_tangent(p, rng);
    const TangentVector v = TangentVector::project(p, gaussian_unit_vector(4, rng));
    const double t = 1.1;
    const TangentVector got = parallel_transport(v, u, t);
    const CVector want = transport_ode(p.rep(), u.vec(), v.vec(), t, 2000);
    // Align the representative phase of the endpoint.
    const CVector c = std::cos(t) * p.rep() + std::sin(t) * u.vec();
    const Complex w = c.dot(got.base().rep());
    CHECK((got.vec() - w * want).norm() < 1e-10);
    CHECK(got.norm() == doctest::Approx(v.norm()).epsilon(1e-12));
  }
}

TEST_CASE("uniform sampling moments") {
  // For uniform points of ℙⁿ, |z₀|² ~ Beta(1, n): mean 1/(n+1), and in ℙ¹ the
  // ball B(e₀, r) has measure sin²r.
  Rng rng = stream_rng(5, 0);
  const int N = 200000;
  double sum = 0.0;
  for (int i = 0; i < N; ++i) sum += std::norm(uniform_sample(2, rng).rep()(0));
  CHECK(std::abs(sum / N - 1.0 / 3.0) < 5 * std::sqrt(1.0 / 18.0 / N) + 1e-12);
  const ProjectivePoint e0 = ProjectivePoint::basis(1, 0);
  for (double r : {0.3, 0.8, 1.2}) {
    int hits = 0;
    for (int i = 0; i < N; ++i) hits += fs_distance(e0, uniform_sample(1, rng)) <= r;
    const double s = std::sin(r) * std::sin(r);
    CHECK(std::abs(static_cast<double>(hits) / N - s) < 5 * std::sqrt(s * (1 - s) / N));
  }
}

TEST_CASE("invalid inputs throw") {
  CHECK_THROWS_AS(ProjectivePoint::from_homogeneous(CVector::Zero(3)), GeometryError);
  const ProjectivePoint p = ProjectivePoint::basis(2, 0);
  CVector bad = CVector::Zero(3);
  bad(0) = 1.0;
  CHECK_THROWS(TangentVector(p, bad));
}
