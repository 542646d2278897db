#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fstube/report.hpp"
#include "fstube/verify.hpp"

using namespace fstube;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gray bound values") {
  CHECK(gray_bound(1, HypersurfaceVariant::corrected) == doctest::Approx(kPi / 2));
  CHECK(gray_bound(2, HypersurfaceVariant::corrected) == doctest::Approx(kPi / 4));
  CHECK(gray_bound(4, HypersurfaceVariant::corrected) == doctest::Approx(kPi / 6));
  CHECK(gray_bound(2, HypersurfaceVariant::as_printed) == doctest::Approx(kPi / 8));
  CHECK(canonical_variant(2, 2) == HypersurfaceVariant::corrected);
}

TEST_CASE("cotangent sum witnesses") {
  const ExperimentReport r = cot_sum_monotonicity(50, 4, 1);
  CHECK(r.pass);
  const auto& w = r.values["witness_pair"];
  // cot(π/4 − t) + cot(3π/4 − t) at t = ±0.1, 0.
  const double plus = 1 / std::tan(kPi / 4 - 0.1) + 1 / std::tan(3 * kPi / 4 - 0.1);
  CHECK(w[2].get<double>() == doctest::Approx(plus));
  CHECK(w[0].get<double>() == doctest::Approx(-plus));
  CHECK(r.values["witness_totally_geodesic_t01"].get<double>() == doctest::Approx(4 * std::tan(0.1)));
  CHECK_THROWS(cot_sum_monotonicity(10, 3, 1));
}

TEST_CASE("curve bound ratio and ruling") {
  const ExperimentReport r = curve_ratio_limit({2, 3});
  CHECK(r.pass);
  CHECK(r.values["per_n"][1]["ratio_at_pi_over_4"].get<double>() == doctest::Approx(4 * kPi));
  const ExperimentReport b = quadric_curve_bound(make_rational_curve(quadric_ruling()), 10, 3, 1);
  CHECK(b.pass);
  CHECK(b.outcome == "pass");
  CHECK(b.values["volume_over_pi"].get<double>() == doctest::Approx(1.0));
  CHECK_THROWS_AS(quadric_curve_bound(make_rational_curve(rational_normal_curve(2, 3)), 5, 2, 1), std::invalid_argument);
}

TEST_CASE("leaf distances") {
  CHECK(leaf_distance_pattern(make_linear(3, 2), 1).pass);
  CHECK(leaf_distance_pattern(make_linear(4, 1), 1).pass);
  const ExperimentReport q = leaf_distance_pattern(make_quadric(3), 1);
  CHECK(q.pass);
  CHECK(q.values["spacing"].get<double>() == doctest::Approx(kPi / 4));
}

TEST_CASE("constant spectrum scan documents the cubic") {
  const ExperimentReport r = constant_spectrum_scan(make_fermat(2, 3), 10, 3, 1, false);
  CHECK(r.pass);
  CHECK_FALSE(r.values["constant"].get<bool>());
  // The cubic is not a constant-spectrum model, so the strict scan fails.
  CHECK_FALSE(constant_spectrum_scan(make_fermat(2, 3), 10, 3, 1, true).pass);
}

TEST_CASE("gray bound on a non-Fermat quadric") {
  // z0² + 2z1² + 3z2²: strict inequality is allowed, only the bound is asserted.
  const HomogeneousPolynomial p(2, 2, {{1.0, {2, 0, 0}}, {2.0, {0, 2, 0}}, {3.0, {0, 0, 2}}});
  const ExperimentReport r = check_gray_degree_bound(make_hypersurface(p), 30, 5, 1, HypersurfaceVariant::corrected);
  CHECK(r.pass);
  CHECK_FALSE(r.values["equality_expected"].get<bool>());
}

TEST_CASE("report serialization") {
  ExperimentReport r;
  r.claim = "x";
  r.values = {{"v", json_number(std::numeric_limits<double>::infinity())}};
  r.seed = 3;
  r.wall_clock_seconds = 1.5;
  const Json j = report_json(r);
  CHECK(j["values"]["v"] == "inf");
  CHECK_FALSE(j.contains("wall_clock_seconds"));
  CHECK(report_json(r, true)["wall_clock_seconds"] == 1.5);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
