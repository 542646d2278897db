#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fstube/focal.hpp"

using namespace fstube;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("branch structure from a spectrum") {
  // Quadric Q² ⊂ ℙ³: spectrum {−1, −1, 1, 1}, no extra normal directions.
  const FocalReport f = focal_report_from_spectrum(Eigen::Vector4d(-1, -1, 1, 1), 3, 2);
  CHECK(f.minimum == doctest::Approx(kPi / 4));
  CHECK(f.multiplicity == 2);
  int jxi = 0, normal = 0;
  for (const auto& b : f.branches) {
    if (b.direction == "J-xi") {
      ++jxi;
      CHECK(b.radius == doctest::Approx(kPi / 2));
    }
    if (b.direction == "normal") normal += b.branch.multiplicity;
  }
  CHECK(jxi == 1);
  CHECK(normal == 0);
  // Linear ℙ¹ ⊂ ℙ³: 2(n − k) − 2 = 2 normal branches at π.
  const FocalReport g = focal_report_from_spectrum(Eigen::Vector2d::Zero(), 3, 1);
  CHECK(g.minimum == doctest::Approx(kPi / 2));
  int normals = 0;
  for (const auto& b : g.branches)
    if (b.direction == "normal") {
      normals += b.branch.multiplicity;
      CHECK(b.radius == doctest::Approx(kPi));
    }
  CHECK(normals == 2);
}

TEST_CASE("numeric and closed-form focal radii agree") {
  const Eigen::VectorXd s = (Eigen::VectorXd(4) << -2.5, -0.3, 0.3, 2.5).finished();
  const FocalReport a = focal_report_from_spectrum(s, 4, 2, FocalMethod::closed_form);
  const FocalReport b = focal_report_from_spectrum(s, 4, 2, FocalMethod::numeric);
  CHECK(b.minimum == doctest::Approx(a.minimum).epsilon(1e-7));
  CHECK(a.minimum == doctest::Approx(std::atan2(1.0, 2.5)));
  CHECK(a.multiplicity == b.multiplicity);
}

TEST_CASE("sampled focal distances of the models") {
  CHECK(min_focal_distance_estimate(make_quadric(2), 20, 5, 3).estimate == doctest::Approx(kPi / 4).epsilon(1e-10));
  CHECK(min_focal_distance_estimate(make_linear(3, 1), 10, 5, 3).estimate == doctest::Approx(kPi / 2));
  CHECK(min_focal_distance_estimate(make_linear(1, 0), 5, 2, 3).estimate == doctest::Approx(kPi / 2));
  CHECK(min_focal_distance_estimate(make_segre(1), 10, 5, 3).estimate == doctest::Approx(kPi / 4).epsilon(1e-9));
  // A ruling is a totally geodesic line of ℙ³.
  CHECK(min_focal_distance_estimate(make_rational_curve(quadric_ruling()), 10, 5, 3).estimate ==
        doctest::Approx(kPi / 2).epsilon(1e-9));
  // Fermat cubic curve: strictly below the line value, above zero.
  const FocalEstimate c = min_focal_distance_estimate(make_fermat(2, 3), 50, 10, 3);
  CHECK(c.estimate > 0.1);
  CHECK(c.estimate < kPi / 2);
  CHECK(c.variance > 0.0);
}

TEST_CASE("estimates are reproducible") {
  const FocalEstimate a = min_focal_distance_estimate(make_fermat(2, 3), 20, 5, 42);
  const FocalEstimate b = min_focal_distance_estimate(make_fermat(2, 3), 20, 5, 42);
  CHECK(a.estimate == b.estimate);
  CHECK(a.mean == b.mean);
  CHECK((a.argmin_point - b.argmin_point).norm() == 0.0);
}
