#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include "fstube/submanifold.hpp"

namespace fstube {

namespace {

// Pullback of the Fubini–Study area form in an affine chart u ↦ f(u):
// (|f|²|f'|² − |⟨f', f⟩|²) / |f|⁴ times Lebesgue measure on ℂ.
double area_density(const CVector& f, const CVector& df) {
  const double nf = f.squaredNorm();
  return (nf * df.squaredNorm() - std::norm(hermitian(df, f))) / (nf * nf);
}

// Integral of the density over the closed unit disk of one chart.
double disk_integral(const RationalCurve& curve, bool second_chart, double rel_tol, double& error) {
  using boost::math::quadrature::gauss_kronrod;
  using boost::math::quadrature::trapezoidal;
  auto angular = [&](double rho) {
    auto ring = [&](double phi) {
      const Complex u = std::polar(rho, phi);
      const CVector f = second_chart ? curve(1.0, u) : curve(u, 1.0);
      return area_density(f, curve.chart_derivative(u, second_chart));
    };
    // Periodic and analytic in φ, so the trapezoidal rule converges geometrically.
    return rho * trapezoidal(ring, 0.0, 2.0 * std::numbers::pi, rel_tol * 1e-2);
  };
  double err = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(angular, 0.0, 1.0, 15, rel_tol, &err);
  error += err;
  return value;
}

}  // namespace

CurveVolume curve_volume(const RationalCurve& curve, double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("curve_volume: rel_tol must be positive");
  CurveVolume out;
  double err = 0.0;
  out.volume = disk_integral(curve, false, rel_tol, err) + disk_integral(curve, true, rel_tol, err);
  out.error_estimate = err;
  if (!std::isfinite(out.volume) || err > std::sqrt(rel_tol) * std::max(out.volume, 1.0))
    throw std::runtime_error("curve_volume: quadrature did not converge (error estimate " + std::to_string(err) + ")");
  out.ratio_to_line = out.volume / std::numbers::pi;
  out.ratio_to_2pi = out.volume / (2.0 * std::numbers::pi);
  return out;
}

}  // namespace fstube
