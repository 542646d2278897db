#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "fstube/riccati.hpp"

using namespace fstube;

namespace {

constexpr double kPi = std::numbers::pi;

// Plain fixed-step RK4 of λ' = λ² + κ² from a finite λ(0).
double rk4(double lambda, double kappa, double r, int steps) {
  auto f = [&](double l) { return l * l + kappa * kappa; };
  const double h = r / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(lambda), k2 = f(lambda + h / 2 * k1), k3 = f(lambda + h / 2 * k2), k4 = f(lambda + h * k3);
    lambda += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return lambda;
}

}  // namespace

TEST_CASE("closed form matches an independent RK4") {
  for (int kappa : {1, 2})
    for (double l0 : {-3.0, -0.5, 0.0, 0.4, 2.0}) {
      const RiccatiBranch b = RiccatiBranch::from_initial_value(kappa, l0);
      CHECK(riccati_closed_form(b, 0.0) == doctest::Approx(l0).epsilon(1e-13));
      const double r = 0.8 * b.blowup_radius();
      CHECK(riccati_closed_form(b, r) == doctest::Approx(rk4(l0, kappa, r, 20000)).epsilon(1e-9));
    }
}

TEST_CASE("branches with theta = 0 start at minus infinity") {
  const RiccatiBranch b(2, 0.0);
  CHECK(riccati_closed_form(b, 0.0) == -std::numeric_limits<double>::infinity());
  // −2cot(2r) ≈ −1/r for small r
  CHECK(riccati_closed_form(b, 0.01) < -99.0);
  CHECK(riccati_closed_form(b, 0.001) < -999.0);
  CHECK(b.blowup_radius() == doctest::Approx(kPi / 2));
  CHECK(RiccatiBranch(1, 0.0).blowup_radius() == doctest::Approx(kPi));
  CHECK(riccati_closed_form(RiccatiBranch(1, 0.0), 0.5) == doctest::Approx(-1.0 / std::tan(0.5)));
}

TEST_CASE("blow-up radii") {
  // λ0 = κ cot(κθ): arccot of the principal curvature for κ = 1.
  CHECK(RiccatiBranch::from_initial_value(1, 1.0).blowup_radius() == doctest::Approx(kPi / 4));
  CHECK(RiccatiBranch::from_initial_value(1, -1.0).blowup_radius() == doctest::Approx(3 * kPi / 4));
  CHECK(RiccatiBranch::from_initial_value(1, 0.0).blowup_radius() == doctest::Approx(kPi / 2));
  CHECK(RiccatiBranch::from_initial_value(2, 0.0).blowup_radius() == doctest::Approx(kPi / 4));
  CHECK_THROWS(RiccatiBranch(3, 0.1));
}

TEST_CASE("advancing is a semigroup and matches the closed form") {
  const RiccatiBranch b = RiccatiBranch::from_initial_value(1, 0.3);
  for (double r : {0.2, 0.5, 0.7}) {
    CHECK(riccati_closed_form(b.advanced(r), 0.1) == doctest::Approx(riccati_closed_form(b, r + 0.1)).epsilon(1e-12));
    CHECK(std::abs(phase_difference(b.advanced(r).advanced(0.3), b.advanced(r + 0.3))) < 1e-14);
  }
}

TEST_CASE("numeric integrator tracks branches through the phase switch") {
  for (int kappa : {1, 2})
    for (double theta : {0.0, 0.3, 0.7, 1.2}) {
      if (theta >= kPi / kappa) continue;
      const RiccatiBranch b(kappa, theta);
      const RiccatiTrajectory t = riccati_integrate_numeric(b, 3.5, 1e-3);
      CHECK(t.blowup_radius == doctest::Approx(b.blowup_radius()).epsilon(1e-9));
      for (std::size_t j = 1; j < t.r.size(); j += 50) {
        const double c = riccati_closed_form(b, t.r[j]);
        if (std::abs(c) < 1e3) CHECK(std::abs(c - t.lambda[j]) < 1e-8 * std::max(1.0, std::abs(c)));
      }
    }
  // No blow-up inside the window.
  const RiccatiTrajectory t = riccati_integrate_numeric(RiccatiBranch::from_initial_value(1, -2.0), 1.0, 1e-3);
  CHECK(std::isinf(t.blowup_radius));
  CHECK(t.r.back() == doctest::Approx(1.0));
  CHECK_THROWS(riccati_integrate_numeric(RiccatiBranch(1, 0.5), 1.0, 0.3));
}

TEST_CASE("Jacobi fields") {
  // y'' + κ²y = 0 checked by a second difference.
  JacobiState s{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(-0.4, 1.0), Eigen::Vector2d(1.0, 2.0)};
  const double r = 0.6, h = 1e-4;
  const Eigen::VectorXd ypp =
      (jacobi_integrate(s, r + h).y - 2 * jacobi_integrate(s, r).y + jacobi_integrate(s, r - h).y) / (h * h);
  CHECK((ypp + s.kappa.cwiseProduct(s.kappa).cwiseProduct(jacobi_integrate(s, r).y)).norm() < 1e-5);
  // A tangent eigen-field with A v = μ v yields the κ = 1 branch with λ(0) = μ.
  JacobiState t{Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -0.7), Eigen::VectorXd::Ones(1)};
  CHECK(jacobi_shape_value(jacobi_integrate(t, r)) ==
        doctest::Approx(riccati_closed_form(RiccatiBranch::from_initial_value(1, 0.7), r)).epsilon(1e-12));
}

TEST_CASE("tube shape operator from M-Jacobi fields") {
  // Spectrum {1, −1}, two more normals: eigenvalues are the Riccati branch values.
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, 1.0, 0.0;
  for (double r : {0.1, 0.4, 0.7}) {
    const Eigen::MatrixXd s = tube_shape_operator(a, 2, r);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (s + s.transpose()));
    std::vector<double> want = {1.0 / std::tan(kPi / 4 - r), 1.0 / std::tan(3 * kPi / 4 - r), -2.0 / std::tan(2 * r),
                                -1.0 / std::tan(r), -1.0 / std::tan(r)};
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 5; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(want[i]).epsilon(1e-12));
    CHECK((s - s.transpose()).norm() < 1e-12);
  }
}
