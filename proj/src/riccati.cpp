#include "fstube/riccati.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fstube {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

RiccatiBranch::RiccatiBranch(int k, double t, int mult) : kappa(k), theta(t), multiplicity(mult) {
  if (kappa != 1 && kappa != 2) throw std::invalid_argument("Riccati branch: kappa must be 1 or 2");
  if (!(theta >= 0.0) || !(theta < period())) throw std::invalid_argument("Riccati branch: theta outside [0, pi/kappa)");
  if (multiplicity < 1) throw std::invalid_argument("Riccati branch: multiplicity must be positive");
}

RiccatiBranch RiccatiBranch::from_initial_value(int kappa, double lambda0, int multiplicity) {
  if (std::isinf(lambda0) && lambda0 < 0) return {kappa, 0.0, multiplicity};
  if (!std::isfinite(lambda0)) throw std::invalid_argument("Riccati branch: initial value must be finite or -inf");
  const double t = std::atan2(1.0, lambda0 / kappa) / kappa;
  return {kappa, t < kPi / kappa ? t : 0.0, multiplicity};
}

double RiccatiBranch::period() const { return kPi / kappa; }

double RiccatiBranch::blowup_radius() const { return theta > 0.0 ? theta : period(); }

RiccatiBranch RiccatiBranch::advanced(double r) const {
  double t = std::fmod(theta - r, period());
  if (t < 0.0) t += period();
  if (t >= period()) t = 0.0;
  return {kappa, t, multiplicity};
}

double riccati_closed_form(const RiccatiBranch& b, double r) {
  if (r < 0.0) throw std::invalid_argument("riccati_closed_form: r must be >= 0");
  const double x = b.kappa * (b.theta - r);
  const double s = std::sin(x);
  if (std::abs(s) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
    return (r == 0.0 && b.theta == 0.0) ? -kInf : kInf;
  return b.kappa * std::cos(x) / s;
}

double phase_difference(const RiccatiBranch& a, const RiccatiBranch& b) {
  if (a.kappa != b.kappa) throw std::invalid_argument("phase_difference: branches have different kappa");
  const double p = a.period();
  double d = std::fmod(a.theta - b.theta, p);
  if (d > 0.5 * p) d -= p;
  if (d <= -0.5 * p) d += p;
  return d;
}

// ---------------------------------------------------------------------------

namespace {

RiccatiTrajectory integrate_once(const RiccatiBranch& b, double r_max, double step, const Tolerances& tol) {
  const double kappa = b.kappa;
  const double k2 = kappa * kappa;
  auto f = [k2](double l) { return l * l + k2; };
  auto to_phase = [kappa](double l) { return std::atan2(1.0, l / kappa) / kappa; };  // ∈ (0, π/κ)
  auto from_phase = [kappa](double phi) { return kappa / std::tan(kappa * phi); };

  RiccatiTrajectory out;
  out.blowup_radius = kInf;
  // State: raw λ, or the phase φ ∈ (0, π/κ] (time left until the blow-up).
  bool phase_mode = b.theta == 0.0;
  double lambda = phase_mode ? -kInf : kappa / std::tan(kappa * b.theta);
  double phi = phase_mode ? b.period() : 0.0;
  if (!phase_mode && std::abs(lambda) >= tol.riccati_switch) {
    phase_mode = true;
    phi = to_phase(lambda);
  }
  double r = 0.0;
  out.r.push_back(0.0);
  out.lambda.push_back(lambda);
  long grid = 0;
  while (r < r_max) {
    const double target = std::min(r_max, (grid + 1) * step);
    while (r < target) {
      if (phase_mode) {
        // φ' = −1: RK4 is exact here. Stop at the blow-up threshold and bisect.
        const double h = std::min(step, target - r);
        const double phi_new = phi - h;
        const double l_new = phi_new > 0.0 ? from_phase(phi_new) : kInf;
        ++out.steps;
        if (phi_new <= 0.0 || std::abs(l_new) > tol.riccati_blowup) {
          // |λ(r₀ + s)| > threshold ⇔ κ(φ − s) below the threshold's phase; bisect
          // on s for the zero of sin(κ(φ − s)) inside (0, h].
          double lo = 0.0, hi = h;
          if (phi_new > 0.0) hi = phi + 1e-12;  // remaining phase bounds the blow-up
          while (hi - lo > tol.bisection_radius * 1e-2) {
            const double mid = 0.5 * (lo + hi);
            if (phi - mid > 0.0) lo = mid;
            else hi = mid;
          }
          out.blowup_radius = r + 0.5 * (lo + hi);
          return out;
        }
        phi = phi_new;
        r += h;
        lambda = l_new;
        if (std::abs(lambda) < tol.riccati_switch) phase_mode = false;
      } else {
        const double h = std::min(step / (1.0 + std::abs(lambda) / kappa), target - r);
        const double k1 = f(lambda);
        const double k2r = f(lambda + 0.5 * h * k1);
        const double k3 = f(lambda + 0.5 * h * k2r);
        const double k4 = f(lambda + h * k3);
        lambda += h / 6.0 * (k1 + 2.0 * k2r + 2.0 * k3 + k4);
        r += h;
        ++out.steps;
        if (!std::isfinite(lambda)) throw NumericError("riccati_integrate_numeric: raw integration overflowed");
        if (std::abs(lambda) >= tol.riccati_switch) {
          phase_mode = true;
          phi = to_phase(lambda);
        }
      }
    }
    ++grid;
    out.r.push_back(r);
    out.lambda.push_back(lambda);
  }
  return out;
}

}  // namespace

RiccatiTrajectory riccati_integrate_numeric(const RiccatiBranch& b, double r_max, double step, const Tolerances& tol) {
  if (!(step > 0.0)) throw std::invalid_argument("riccati_integrate_numeric: step must be positive");
  if (!(r_max >= 0.0)) throw std::invalid_argument("riccati_integrate_numeric: r_max must be >= 0");
  RiccatiTrajectory coarse = integrate_once(b, r_max, step, tol);
  const RiccatiTrajectory fine = integrate_once(b, r_max, 0.5 * step, tol);
  // Halving test: the fine run's even grid points coincide with the coarse grid.
  double worst = 0.0;
  for (std::size_t j = 1; j < coarse.r.size() && 2 * j < fine.r.size(); ++j) {
    const double a = coarse.lambda[j], c = fine.lambda[2 * j];
    if (std::abs(a) < tol.riccati_switch) worst = std::max(worst, std::abs(a - c) / std::max(1.0, std::abs(a)));
  }
  const bool both_inf = std::isinf(coarse.blowup_radius) && std::isinf(fine.blowup_radius);
  const double radius_gap = both_inf ? 0.0 : std::abs(coarse.blowup_radius - fine.blowup_radius);
  if (worst > 1e-7 || !(radius_gap <= 1e-7))
    throw NumericError("riccati_integrate_numeric: step too large (halving changed the result by " +
                       std::to_string(std::max(worst, radius_gap)) + ")");
  return coarse;
}

// ---------------------------------------------------------------------------

JacobiState jacobi_integrate(const JacobiState& s, double r) {
  const Eigen::Index m = s.y.size();
  if (s.dy.size() != m || s.kappa.size() != m) throw std::invalid_argument("jacobi_integrate: size mismatch");
  JacobiState out = s;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double k = s.kappa(i);
    if (!(k > 0.0)) throw std::invalid_argument("jacobi_integrate: kappa must be positive");
    const double c = std::cos(k * r), sn = std::sin(k * r);
    out.y(i) = c * s.y(i) + sn / k * s.dy(i);
    out.dy(i) = -k * sn * s.y(i) + c * s.dy(i);
  }
  return out;
}

double jacobi_shape_value(const JacobiState& s) {
  const double n2 = s.y.squaredNorm();
  if (n2 == 0.0) return -kInf;
  return -s.dy.dot(s.y) / n2;
}

double m_jacobi_defect(const JacobiState& s, const Eigen::MatrixXd& shape) {
  const Eigen::Index m = shape.rows();
  if (shape.cols() != m || s.y.size() < m) throw std::invalid_argument("m_jacobi_defect: size mismatch");
  const double normal_part = s.y.tail(s.y.size() - m).norm();
  const double tangent_part = (s.dy.head(m) + shape * s.y.head(m)).norm();
  return std::max(normal_part, tangent_part);
}

Eigen::MatrixXd tube_shape_operator(const Eigen::MatrixXd& shape, int other_normals, double r) {
  const Eigen::Index m = shape.rows();
  const Eigen::Index dim = m + 1 + other_normals;
  Eigen::VectorXd kappa = Eigen::VectorXd::Ones(dim);
  kappa(m) = 2.0;
  Eigen::MatrixXd y(dim, dim), dy(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    JacobiState s{Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim), kappa};
    if (c < m) {
      s.y(c) = 1.0;
      s.dy.head(m) = -shape.col(c);
    } else {
      s.dy(c) = 1.0;
    }
    const JacobiState at = jacobi_integrate(s, r);
    y.col(c) = at.y;
    dy.col(c) = at.dy;
  }
  // A(r) = −Y'Y⁻¹, i.e. solve Yᵀ Aᵀ = −Y'ᵀ.
  return -y.transpose().partialPivLu().solve(dy.transpose()).transpose();
}

}  // namespace fstube
