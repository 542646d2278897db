#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fstube/polynomial.hpp"

using namespace fstube;

namespace {

HomogeneousPolynomial cubic() {
  // z0^3 + 2i z0 z1 z2 − z1^2 z2 + 0.5 z2^3
  return {2, 3, {{1.0, {3, 0, 0}}, {Complex(0, 2), {1, 1, 1}}, {-1.0, {0, 2, 1}}, {0.5, {0, 0, 3}}}};
}

}  // namespace

TEST_CASE("evaluation and homogeneity") {
  const HomogeneousPolynomial p = cubic();
  const CVector z = (CVector(3) << Complex(0.3, -0.2), Complex(1.1, 0.4), Complex(-0.7, 0.9)).finished();
  const Complex direct = std::pow(z(0), 3) + Complex(0, 2) * z(0) * z(1) * z(2) - z(1) * z(1) * z(2) + 0.5 * std::pow(z(2), 3);
  CHECK(std::abs(p(z) - direct) < 1e-14);
  const Complex s(0.6, -1.3);
  CHECK(std::abs(p(s * z) - std::pow(s, 3) * p(z)) < 1e-13);
  // Euler: z · ∇P = d·P
  CHECK(std::abs(z.cwiseProduct(p.gradient(z)).sum() - 3.0 * p(z)) < 1e-13);
}

TEST_CASE("gradient and Hessian match complex central differences") {
  const HomogeneousPolynomial p = cubic();
  const CVector z = (CVector(3) << Complex(0.3, -0.2), Complex(1.1, 0.4), Complex(-0.7, 0.9)).finished();
  const double h = 1e-5;
  const CVector g = p.gradient(z);
  const CMatrix H = p.hessian(z);
  for (int k = 0; k < 3; ++k) {
    CVector zp = z, zm = z;
    zp(k) += h;
    zm(k) -= h;
    CHECK(std::abs((p(zp) - p(zm)) / (2 * h) - g(k)) < 1e-8);
    const CVector dg = (p.gradient(zp) - p.gradient(zm)) / (2 * h);
    CHECK((dg - H.col(k)).norm() < 1e-8);
  }
  CHECK((H - H.transpose()).norm() < 1e-14);
}

TEST_CASE("roots of univariate polynomials") {
  // (λ − 1)(λ + 2i)(λ − 0.5) expanded
  const Complex a(1), b(0, -2), c(0.5);
  const std::vector<Complex> asc = {-a * b * c, a * b + a * c + b * c, -(a + b + c), 1.0};
  auto roots = polynomial_roots(asc);
  REQUIRE(roots.size() == 3);
  for (Complex r : {a, b, c})
    CHECK(std::any_of(roots.begin(), roots.end(), [&](Complex x) { return std::abs(x - r) < 1e-12; }));
  // Quadratic with huge cancellation: roots 1e8 and 1e−8.
  roots = polynomial_roots(std::vector<Complex>{1.0, -(1e8 + 1e-8), 1.0});
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  CHECK(std::abs(roots[0] - 1e-8) < 1e-20);
  CHECK(std::abs(roots[1] - 1e8) < 1e-6);
  // Vanishing leading coefficient drops the root at infinity.
  CHECK(polynomial_roots(std::vector<Complex>{1.0, 1.0, 0.0}).size() == 1);
  CHECK_THROWS_AS(polynomial_roots(std::vector<Complex>{0.0, 0.0}), PolynomialError);
}

TEST_CASE("restriction to a line") {
  const HomogeneousPolynomial p = cubic();
  const CVector a = (CVector(3) << 1.0, Complex(0, 1), 0.5).finished();
  const CVector b = (CVector(3) << Complex(0.2, 0.1), -1.0, 2.0).finished();
  const auto coeffs = restrict_to_line(p, a, b);
  for (Complex l : {Complex(0.3, 0.2), Complex(-1.5, 0.7)}) {
    Complex acc = 0.0;
    for (int i = 3; i >= 0; --i) acc = acc * l + coeffs[i];
    CHECK(std::abs(acc - p(a + l * b)) < 1e-12);
  }
}

TEST_CASE("linear substitution") {
  const HomogeneousPolynomial p = cubic();
  CMatrix m(3, 3);
  m << 1.0, 2.0, 0.0, Complex(0, 1), 1.0, -1.0, 0.5, 0.0, 1.0;
  const HomogeneousPolynomial q = p.compose_linear(m);
  const CVector z = (CVector(3) << 0.4, Complex(-0.3, 0.8), 1.2).finished();
  CHECK(std::abs(q(z) - p(m * z)) < 1e-12);
}

TEST_CASE("malformed polynomials are rejected") {
  CHECK_THROWS_AS(HomogeneousPolynomial(2, 2, {{1.0, {1, 0, 0}}}), PolynomialError);
  CHECK_THROWS_AS(HomogeneousPolynomial(2, 2, {{1.0, {2, 0}}}), PolynomialError);
  CHECK_THROWS_AS(HomogeneousPolynomial(2, 2, {}), PolynomialError);
  CHECK_THROWS_AS(HomogeneousPolynomial(2, 0, {{1.0, {0, 0, 0}}}), PolynomialError);
}
