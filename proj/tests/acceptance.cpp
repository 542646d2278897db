// Acceptance checks 1-9. Each prints one PASS/FAIL line with the measured
// margin and wall-clock time; the process exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "fstube/cli.hpp"
#include "fstube/focal.hpp"
#include "fstube/monte_carlo.hpp"
#include "fstube/riccati.hpp"
#include "fstube/tube_volume.hpp"
#include "fstube/verify.hpp"

using namespace fstube;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > time_limit) {
    o.pass = false;
    o.detail += " [over time limit " + std::to_string(time_limit) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// κ·cot(κ(θ − r)) written out independently of the library.
double branch_value(int kappa, double theta, double r) { return kappa / std::tan(kappa * (theta - r)); }

Outcome quadric_focal_check() {
  constexpr double kTol = 1e-4, kVar = 1e-8;
  double worst = 0.0, var = 0.0;
  int samples = 0;
  for (int n : {2, 3}) {
    const FocalEstimate e = min_focal_distance_estimate(make_quadric(n), 50, 10, kSeed);
    worst = std::max({worst, std::abs(e.estimate - kPi / 4), std::abs(e.mean - kPi / 4)});
    var = std::max(var, e.variance);
    samples = e.samples;
  }
  return {worst < kTol && var < kVar && samples >= 500,
          "max |est - pi/4| = " + fmt("%.2e", worst) + ", variance " + fmt("%.2e", var) + ", " +
              std::to_string(samples) + " samples per n"};
}

Outcome riccati_check() {
  constexpr double kValueTol = 1e-8, kBlowupTol = 1e-6;
  Rng rng = stream_rng(kSeed, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double value_err = 0.0, blowup_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int kappa = u(rng) < 0.5 ? 1 : 2;
    const double theta = i % 10 == 0 ? 0.0 : u(rng) * kPi / kappa;
    const RiccatiTrajectory t = riccati_integrate_numeric(RiccatiBranch(kappa, theta), 1.6, 1e-3);
    for (std::size_t j = 1; j < t.r.size(); ++j) {
      const double c = branch_value(kappa, theta, t.r[j]);
      if (std::abs(c) < 1e3) value_err = std::max(value_err, std::abs(c - t.lambda[j]) / std::max(1.0, std::abs(c)));
    }
    const double blowup = theta > 0.0 ? theta : kPi / kappa;
    if (blowup <= 1.6) blowup_err = std::max(blowup_err, std::abs(t.blowup_radius - blowup));
    else if (std::isfinite(t.blowup_radius)) blowup_err = 1.0;
  }
  return {value_err < kValueTol && blowup_err < kBlowupTol,
          "max relative error " + fmt("%.2e", value_err) + ", max blow-up error " + fmt("%.2e", blowup_err)};
}

Outcome jacobi_check() {
  constexpr double kTol = 1e-8;
  double worst = 0.0;
  int radii_checked = 0;
  for (const Submanifold& x : {make_quadric(3), make_linear(3, 1)}) {
    Rng rng = stream_rng(kSeed, 3);
    const SubmanifoldFrame f = tangent_normal_frame(x, sample_point(x, rng));
    const Eigen::MatrixXd a = shape_operator(x, f, random_unit_normal(f, rng));
    const Eigen::VectorXd mu = sorted_spectrum(a);
    const int n = x.ambient_dim(), k = x.complex_dim(), other = 2 * (n - k) - 2;
    double focal = kPi / 2;
    for (Eigen::Index i = 0; i < mu.size(); ++i) focal = std::min(focal, std::atan2(1.0, mu(i)));
    for (int j = 0; j < 20; ++j) {
      const double r = (j + 1) / 21.0 * (focal - 0.05);
      std::vector<double> want;
      for (Eigen::Index i = 0; i < mu.size(); ++i) want.push_back(branch_value(1, std::atan2(1.0, mu(i)), r));
      for (int i = 0; i < other; ++i) want.push_back(-1.0 / std::tan(r));
      want.push_back(-2.0 / std::tan(2 * r));
      std::sort(want.begin(), want.end());
      const Eigen::MatrixXd s = tube_shape_operator(0.5 * (a + a.transpose()), other, r);
      const Eigen::VectorXd got = sorted_spectrum(s);
      for (std::size_t i = 0; i < want.size(); ++i)
        worst = std::max(worst, std::abs(got(static_cast<Eigen::Index>(i)) - want[i]) / std::max(1.0, std::abs(want[i])));
      ++radii_checked;
    }
  }
  return {worst < kTol, "max eigenvalue error " + fmt("%.2e", worst) + " over " + std::to_string(radii_checked) + " radii"};
}

Outcome tube_volume_check() {
  constexpr double kSigma = 3.0;
  constexpr long kSamples = 1000000;
  bool ok = true;
  double worst_z = 0.0;
  std::string detail;
  for (auto [n, d] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    const VariantArbitration arb = arbitrate_hypersurface_variant(n, d);
    const bool unique = arb.as_printed_matches != arb.corrected_matches;
    ok = ok && unique;
    const HypersurfaceVariant v = arb.corrected_matches ? HypersurfaceVariant::corrected : HypersurfaceVariant::as_printed;
    const Submanifold x = make_fermat(n, d);
    const double zeta = min_focal_distance_estimate(x, 20, 5, kSeed).estimate;
    const std::vector<double> radii = {0.3 * zeta, 0.6 * zeta, 0.9 * zeta};
    const auto mc = mc_tube_volume(x, radii, kSamples, kSeed);
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const double closed = tube_volume_hypersurface(n, d, radii[j], v);
      const double z = std::abs(mc[j].value - closed) / *mc[j].stderr_value;
      worst_z = std::max(worst_z, z);
      ok = ok && z <= kSigma;
      // Hyperplanes: the closed form must also equal the Beta law.
      if (d == 1)
        ok = ok && std::abs(closed - projective_volume(n) * (1 - std::pow(std::cos(radii[j]), 2 * n))) < 1e-12;
    }
    detail += "(" + std::to_string(n) + "," + std::to_string(d) + ")->" + (unique ? to_string(v) : "ambiguous") + " ";
  }
  return {ok, detail + "max |z| = " + fmt("%.2f", worst_z) + ", N = 1e6"};
}

Outcome gray_check() {
  constexpr double kSlack = 5e-3, kEquality = 1e-4;
  bool ok = true;
  std::string detail;
  for (int d : {1, 2, 3}) {
    const FocalEstimate e = min_focal_distance_estimate(make_fermat(2, d), 100, 10, kSeed);
    const double bound = std::asin(1.0 / std::sqrt(static_cast<double>(d)));
    const double margin = bound - e.estimate;
    ok = ok && e.estimate <= bound + kSlack;
    if (d <= 2) ok = ok && std::abs(margin) < kEquality;
    else ok = ok && margin > 0.0;
    detail += "d=" + std::to_string(d) + " margin " + fmt("%.2e", margin) + "; ";
  }
  return {ok, detail};
}

Outcome monotonicity_check() {
  bool ok = true;
  long windows = 0;
  for (int dim : {2, 4, 6}) {
    const ExperimentReport r = cot_sum_monotonicity(1000, dim, kSeed);
    ok = ok && r.pass && r.values["monotonicity_violations"] == 0 && r.margins["min_derivative"].get<double>() > 0.0;
    windows += r.values["windows"].get<long>();
  }
  return {ok, std::to_string(windows) + " pole-free windows, all with positive csc^2 sum"};
}

Outcome spectra_check() {
  constexpr double kTol = 1e-4;
  bool ok = true;
  double dev = 0.0, off = 0.0;
  for (const Submanifold& x : {make_quadric(3), make_segre(2)}) {
    const ExperimentReport r = constant_spectrum_scan(x, 20, 5, kSeed, true);
    dev = std::max(dev, r.margins["max_deviation"].get<double>());
    off = std::max(off, r.margins["distance_from_0_pm1"].get<double>());
    ok = ok && r.values["samples"] == 100;
  }
  return {ok && dev < kTol && off < kTol,
          "max spectrum deviation " + fmt("%.2e", dev) + ", distance from {0,+-1} " + fmt("%.2e", off)};
}

Outcome curve_bound_check() {
  constexpr double kTol = 1e-6;
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    auto ratio = [n](double r) {
      const double s = std::sin(r) * std::sin(r);
      return kPi / n * (1 - std::pow(1 - 2 * s, n)) / (std::pow(s, n - 1) - (n + 1.0) / n * std::pow(s, n));
    };
    // One Richardson step on r = π/4 − h removes the linear term.
    const double h = 1e-5;
    const double limit = 2 * ratio(kPi / 4 - h / 2) - ratio(kPi / 4 - h);
    worst = std::max(worst, std::abs(limit - kPi * std::pow(2.0, n) / (n - 1)));
  }
  const ExperimentReport lim = curve_ratio_limit({2, 3, 4, 5, 6});
  const ExperimentReport b = quadric_curve_bound(make_rational_curve(quadric_ruling(), "ruling"), 20, 5, kSeed);
  const double vol = b.values["volume"].get<double>();
  const bool ok = worst < kTol && lim.pass && b.pass && b.outcome == "pass" && b.values["hypothesis_satisfied"] == true &&
                  std::abs(vol - kPi) < 1e-9 && vol < 4 * kPi;
  return {ok, "limit error " + fmt("%.2e", worst) + ", ruling Vol/pi = " + fmt("%.12f", vol / kPi) + " < 4, outcome " +
                  b.outcome};
}

Outcome determinism_check() {
  auto run_once = [] {
    std::ostringstream out, err;
    const int code = cli::run({"verify", "--suite", "all", "--seed", "7"}, out, err);
    return std::pair{code, out.str()};
  };
  const auto a = run_once();
  const auto b = run_once();
  const bool same = a.second == b.second && !a.second.empty();
  return {same && a.first == 0 && b.first == 0,
          std::string(same ? "byte-identical" : "outputs differ") + " (" + std::to_string(a.second.size()) +
              " bytes), exit codes " + std::to_string(a.first) + "/" + std::to_string(b.first)};
}

}  // namespace

int main() {
  criterion(1, "quadric focal distance", 30, quadric_focal_check);
  criterion(2, "Riccati closed form vs RK4", 10, riccati_check);
  criterion(3, "Jacobi/Riccati consistency", 10, jacobi_check);
  criterion(4, "tube-volume oracle agreement", 300, tube_volume_check);
  criterion(5, "Gray degree bound", 120, gray_check);
  criterion(6, "cotangent-sum monotonicity", 5, monotonicity_check);
  criterion(7, "constant spectra of quadric and Segre", 60, spectra_check);
  criterion(8, "curve bound ratio limit and ruling", 30, curve_bound_check);
  criterion(9, "determinism of the verify suite", 600, determinism_check);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
