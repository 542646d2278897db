#include "fstube/focal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fstube {

const char* to_string(FocalMethod m) { return m == FocalMethod::closed_form ? "closed-form" : "numeric"; }

namespace {

double branch_radius(const RiccatiBranch& b, FocalMethod method, const Tolerances& tol) {
  if (method == FocalMethod::closed_form) return b.blowup_radius();
  // Every branch blows up within one period π/κ ≤ π.
  const RiccatiTrajectory t = riccati_integrate_numeric(b, b.period() + 1e-3, 1e-3, tol);
  if (!std::isfinite(t.blowup_radius)) throw NumericError("focal: numeric branch did not blow up within a period");
  return t.blowup_radius;
}

}  // namespace

FocalReport focal_report_from_spectrum(const Eigen::VectorXd& spectrum, int n, int k, FocalMethod method,
                                       const Tolerances& tol) {
  if (spectrum.size() != 2 * k) throw std::invalid_argument("focal report: spectrum size must be 2k");
  if (k >= n) throw std::invalid_argument("focal report: needs k < n");
  FocalReport rep;
  rep.method = method;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const RiccatiBranch b = RiccatiBranch::from_initial_value(1, spectrum(i));
    rep.branches.push_back({"tangent", b, branch_radius(b, method, tol)});
  }
  const int plain_normals = 2 * (n - k) - 2;
  if (plain_normals > 0) {
    const RiccatiBranch b(1, 0.0, plain_normals);
    rep.branches.push_back({"normal", b, branch_radius(b, method, tol)});
  }
  const RiccatiBranch jxi(2, 0.0, 1);
  rep.branches.push_back({"J-xi", jxi, branch_radius(jxi, method, tol)});

  rep.minimum = std::numeric_limits<double>::infinity();
  for (const auto& b : rep.branches) rep.minimum = std::min(rep.minimum, b.radius);
  const double same = method == FocalMethod::closed_form ? 1e-9 : 1e-6;
  for (const auto& b : rep.branches)
    if (b.radius - rep.minimum <= same) rep.multiplicity += b.branch.multiplicity;
  return rep;
}

FocalReport focal_distance_along(const Submanifold& x, const ProjectivePoint& p, const TangentVector& xi,
                                 FocalMethod method, const Tolerances& tol) {
  const SubmanifoldFrame frame = tangent_normal_frame(x, p, tol);
  // ξ is given at p; move it to the frame's representative (same point, maybe another phase).
  const Complex phase = hermitian(frame.point.rep(), p.rep());
  const TangentVector xi_f = TangentVector::project(frame.point, phase * xi.vec());
  const Eigen::MatrixXd a = shape_operator(x, frame, xi_f, DiffMethod::hyper_dual, tol);
  return focal_report_from_spectrum(sorted_spectrum(a), x.ambient_dim(), x.complex_dim(), method, tol);
}

FocalEstimate min_focal_distance_estimate(const Submanifold& x, int num_points, int num_normals, std::uint64_t seed,
                                          FocalMethod method, const Tolerances& tol) {
  if (num_points < 1 || num_normals < 1) throw std::invalid_argument("focal estimate: sample counts must be positive");
  FocalEstimate est;
  est.estimate = std::numeric_limits<double>::infinity();
  double sum = 0.0, sum2 = 0.0;
  const int n = x.ambient_dim(), k = x.complex_dim();
  for (int i = 0; i < num_points; ++i) {
    // One stream per point keeps the scan reproducible however it is split.
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    SubmanifoldFrame frame{ProjectivePoint::basis(n, 0), {}, {}};
    bool ok = false;
    for (int attempt = 0; attempt < tol.max_resample && !ok; ++attempt) {
      try {
        frame = tangent_normal_frame(x, sample_point(x, rng, tol), tol);
        ok = true;
      } catch (const SubmanifoldError&) {
        ++est.failures;
      }
    }
    if (!ok) continue;
    for (int j = 0; j < num_normals; ++j) {
      const TangentVector xi = random_unit_normal(frame, rng);
      const Eigen::MatrixXd a = shape_operator(x, frame, xi, DiffMethod::hyper_dual, tol);
      const FocalReport rep = focal_report_from_spectrum(sorted_spectrum(a), n, k, method, tol);
      ++est.samples;
      sum += rep.minimum;
      sum2 += rep.minimum * rep.minimum;
      if (rep.minimum < est.estimate) {
        est.estimate = rep.minimum;
        est.multiplicity = rep.multiplicity;
        est.argmin_point = frame.point.rep();
        est.argmin_normal = xi.vec();
      }
    }
  }
  if (est.samples == 0) throw SubmanifoldError("focal estimate: every sample failed");
  est.mean = sum / est.samples;
  est.variance = std::max(0.0, sum2 / est.samples - est.mean * est.mean);
  return est;
}

}  // namespace fstube
