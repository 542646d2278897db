#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fstube/tube_volume.hpp"

using namespace fstube;

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("pi polynomials") {
  const PiPolynomial a = PiPolynomial::monomial(Rational(1, 2), 1, 0);
  const PiPolynomial b = PiPolynomial::monomial(3, -1, 2);
  PiPolynomial c = a * b;
  CHECK(c == PiPolynomial::monomial(Rational(3, 2), 0, 2));
  c += PiPolynomial::monomial(Rational(-3, 2), 0, 2);
  CHECK(c.terms().empty());
  CHECK((a * a).evaluate(0.3) == doctest::Approx(kPi * kPi / 4));
}

TEST_CASE("Chern integrals against Euler characteristics") {
  // Smooth plane curve of degree d: ∫c₁ = χ = 3d − d².
  for (int d = 1; d <= 5; ++d) CHECK(ChernIntegrals::hypersurface(2, d).value(1) == doctest::Approx(3.0 * d - d * d));
  // Quadric surface ≅ ℙ¹ × ℙ¹ and the Segre ℙ¹ × ℙ¹: χ = 4; cubic surface: χ = 9.
  CHECK(ChernIntegrals::hypersurface(3, 2).value(2) == doctest::Approx(4.0));
  CHECK(ChernIntegrals::segre(1).value(2) == doctest::Approx(4.0));
  CHECK(ChernIntegrals::hypersurface(3, 3).value(2) == doctest::Approx(9.0));
  // ℙᵏ: χ = k + 1; degree d volume term: I(0, k) = d·π^k.
  CHECK(ChernIntegrals::projective_space(3).value(3) == doctest::Approx(4.0));
  CHECK(ChernIntegrals::hypersurface(3, 4).value(0) == doctest::Approx(4 * kPi * kPi));
  CHECK(ChernIntegrals::segre(2).value(0) == doctest::Approx(3 * kPi * kPi * kPi));
}

TEST_CASE("hyperplane tube from the Beta law") {
  // d(p, {z₀ = 0}) = arcsin|p₀| with |p₀|² ~ Beta(1, n): Vol = Vol(ℙⁿ)(1 − cos²ⁿ r).
  for (int n = 1; n <= 5; ++n)
    for (double r : {0.0, 0.2, 0.9, kPi / 2}) {
      const double want = projective_volume(n) * (1.0 - std::pow(std::cos(r), 2 * n));
      CHECK(tube_volume_hypersurface(n, 1, r, HypersurfaceVariant::corrected) == doctest::Approx(want).epsilon(1e-13));
      CHECK(gray_tube_volume_general(ChernIntegrals::hypersurface(n, 1), n, r) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("small-radius limit is Vol(X) times a normal disk") {
  // Vol(T(r)) ≈ Vol(X)·πr^{2(n−k)}/(n−k)! for r → 0, Vol(X) = deg·π^k/k!.
  const double r = 1e-3;
  for (int n = 2; n <= 4; ++n)
    for (int d = 1; d <= 3; ++d) {
      const double vol_x = d * std::pow(kPi, n - 1) / factorial(n - 1);
      CHECK(gray_tube_volume_general(ChernIntegrals::hypersurface(n, d), n, r) / (vol_x * kPi * r * r) ==
            doctest::Approx(1.0).epsilon(1e-5));
    }
  const double vol_seg = 3 * std::pow(kPi, 3) / 6;
  CHECK(gray_tube_volume_general(ChernIntegrals::segre(2), 5, r) / (vol_seg * std::pow(kPi * r * r, 2) / 2) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("variant arbitration selects exactly one normalization") {
  for (int n = 2; n <= 4; ++n)
    for (int d = 1; d <= 3; ++d) {
      const VariantArbitration a = arbitrate_hypersurface_variant(n, d);
      CHECK(a.as_printed_matches != a.corrected_matches);
      CHECK(a.corrected_matches);
      CHECK(gray_tube_polynomial(ChernIntegrals::hypersurface(n, d), n) ==
            hypersurface_polynomial(n, d, HypersurfaceVariant::corrected));
    }
  // The as-printed form at r equals the corrected one at 2r (below π/4).
  CHECK(tube_volume_hypersurface(3, 2, 0.3, HypersurfaceVariant::as_printed) ==
        doctest::Approx(tube_volume_hypersurface(3, 2, 0.6, HypersurfaceVariant::corrected)));
}

TEST_CASE("curve formula matches the general formula") {
  for (int n = 2; n <= 4; ++n)
    for (int deg = 1; deg <= 3; ++deg)
      for (double r : {0.1, 0.5}) {
        const ChernIntegrals ci = ChernIntegrals::rational_curve_of_degree(deg);
        CHECK(tube_volume_curve(n, deg * kPi, r) == doctest::Approx(gray_tube_volume_general(ci, n, r)).epsilon(1e-13));
      }
  // A line ℙ¹ ⊂ ℙ² is a hyperplane.
  CHECK(tube_volume_curve(2, kPi, 0.4) ==
        doctest::Approx(tube_volume_hypersurface(2, 1, 0.4, HypersurfaceVariant::corrected)).epsilon(1e-13));
}

TEST_CASE("chern integrals of the built-in models") {
  CHECK(chern_integrals_for(make_linear(3, 0)).k == 0);
  CHECK(chern_integrals_for(make_linear(4, 2)).value(2) == doctest::Approx(3.0));
  const ChernIntegrals c = chern_integrals_for(make_rational_curve(rational_normal_curve(2, 3)));
  CHECK(c.value(0) == doctest::Approx(2 * kPi).epsilon(1e-10));
  CHECK(c.value(1) == doctest::Approx(2.0));
}
