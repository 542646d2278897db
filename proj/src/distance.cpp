#include "fstube/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "fstube/hyperdual.hpp"
#include "submanifold_internal.hpp"

namespace fstube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Newton systems are at most 2(n+1)+2 = 12 real unknowns for n ≤ 4 in the
// test matrix; larger n falls back to heap storage transparently.
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 16, 1>;

// Fixed quasi-random directions shared by all calls with the same n.
const std::vector<CVector>& start_directions(int n, int count) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<CVector>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& dirs = cache[{n, count}];
  if (dirs.empty()) {
    Rng rng = stream_rng(0x5eedd157ULL, static_cast<std::uint64_t>(n));
    for (int i = 0; i < count; ++i) dirs.push_back(gaussian_unit_vector(n + 1, rng));
  }
  return dirs;
}

struct Candidate {
  double distance = kInf;
  CVector closest;
  double residual = kInf;
};

// |tangent part of p's horizontal component at q| and |P(q)| for unit q.
double hypersurface_certificate(const HomogeneousPolynomial& poly, double cnorm, const CVector& p, const CVector& q) {
  const CVector w = p - hermitian(p, q) * q;
  const CVector normal = poly.gradient(q).conjugate();
  const double nn = normal.norm();
  if (!(nn > 0.0)) return kInf;
  const CVector nhat = normal / nn;
  const CVector tangent = w - hermitian(w, nhat) * nhat;
  return std::max(tangent.norm(), std::abs(poly(q)) / cnorm);
}

Candidate newton_incidence(const HomogeneousPolynomial& poly, double cnorm, const CVector& p, CVector q, Complex tau,
                           const Tolerances& tol) {
  const Eigen::Index m = q.size();
  const Eigen::Index dim = 2 * m + 2;
  SmallMatrix jac(dim, dim);
  SmallVector res(dim);
  for (int it = 0; it < 40; ++it) {
    const CVector g = poly.gradient(q);
    const Complex val = poly(q);
    const CVector f1 = q + tau * g.conjugate() - p;
    res.head(m) = f1.real();
    res.segment(m, m) = f1.imag();
    res(2 * m) = val.real();
    res(2 * m + 1) = val.imag();
    const double rn = res.norm();
    if (!std::isfinite(rn)) return {};
    if (rn < 1e-15) break;
    const CMatrix b = std::conj(tau) * poly.hessian(q);
    const Eigen::MatrixXd br = b.real(), bi = b.imag();
    jac.setZero();
    jac.topLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m) + br;
    jac.block(0, m, m, m) = -bi;
    jac.block(m, 0, m, m) = -bi;
    jac.block(m, m, m, m) = Eigen::MatrixXd::Identity(m, m) - br;
    jac.block(0, 2 * m, m, 1) = g.real();
    jac.block(0, 2 * m + 1, m, 1) = g.imag();
    jac.block(m, 2 * m, m, 1) = -g.imag();
    jac.block(m, 2 * m + 1, m, 1) = g.real();
    jac.block(2 * m, 0, 1, m) = g.real().transpose();
    jac.block(2 * m, m, 1, m) = -g.imag().transpose();
    jac.block(2 * m + 1, 0, 1, m) = g.imag().transpose();
    jac.block(2 * m + 1, m, 1, m) = g.real().transpose();
    const SmallVector dx = jac.partialPivLu().solve(-res);
    if (!dx.allFinite()) return {};
    for (Eigen::Index i = 0; i < m; ++i) q(i) += Complex(dx(i), dx(m + i));
    tau += Complex(dx(2 * m), dx(2 * m + 1));
    if (dx.norm() < 1e-15 * (1.0 + q.norm())) break;
  }
  const double nq = q.norm();
  if (!(nq > 1e-8)) return {};
  Candidate c;
  c.closest = q / nq;
  c.residual = hypersurface_certificate(poly, cnorm, p, c.closest);
  if (!(c.residual < tol.first_order_residual)) return {};
  c.distance = fs_distance(ProjectivePoint::from_homogeneous(p), ProjectivePoint::from_homogeneous(c.closest));
  return c;
}

DistanceResult hypersurface_distance(const HomogeneousPolynomial& poly, const ProjectivePoint& pt,
                                     const Tolerances& tol) {
  const CVector& p = pt.rep();
  const double cnorm = detail::coefficient_norm(poly);
  DistanceResult out;
  if (poly.degree() == 1) {
    // Hyperplane {aᵀz = 0}: the nearest point is p minus its conj(a) component.
    const CVector a = poly.gradient(p).conjugate();
    const double s = std::min(1.0, std::abs(poly(p)) / a.norm());
    out.distance = std::asin(s);
    const CVector q = p - hermitian(p, a) / a.squaredNorm() * a;
    out.closest = q.norm() > 0.0 ? CVector(q / q.norm()) : CVector(a.normalized());
    out.residual = 0.0;
    out.certified_starts = 1;
    out.ok = true;
    return out;
  }
  Candidate best;
  std::vector<CVector> dirs;
  const CVector grad_dir = poly.gradient(p).conjugate();
  if (grad_dir.norm() > 1e-12 * cnorm) dirs.push_back(grad_dir);
  for (const CVector& u : start_directions(pt.dim(), std::max(tol.multistart - 1, 1))) dirs.push_back(u);
  for (const CVector& u : dirs) {
    CVector v = u - hermitian(u, p) * p;
    const double nv = v.norm();
    if (!(nv > 1e-12)) continue;
    v /= nv;
    const std::vector<Complex> coeffs = restrict_to_line(poly, p, v);
    std::vector<Complex> roots;
    try {
      roots = polynomial_roots(coeffs);
    } catch (const PolynomialError&) {
      continue;
    }
    if (roots.empty()) continue;
    const Complex lambda =
        *std::min_element(roots.begin(), roots.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    const CVector qt = p + lambda * v;
    const CVector q0 = hermitian(p, qt) / qt.squaredNorm() * qt;
    const CVector n0 = poly.gradient(q0).conjugate();
    if (!(n0.squaredNorm() > 0.0)) continue;
    const Complex tau0 = hermitian(p - q0, n0) / n0.squaredNorm();
    const Candidate c = newton_incidence(poly, cnorm, p, q0, tau0, tol);
    if (!std::isfinite(c.distance)) continue;
    ++out.certified_starts;
    if (c.distance < best.distance) best = c;
  }
  if (out.certified_starts == 0) return out;
  out.distance = best.distance;
  out.closest = best.closest;
  out.residual = best.residual;
  out.ok = true;
  return out;
}

// φ(u) = |⟨Γ(u), p⟩|² / |Γ(u)|² = cos² d; value, gradient and Hessian in (Re u, Im u).
struct CurveObjective {
  const RationalCurve& curve;
  const CVector& p;
  bool second_chart;

  HyperDual<double> eval(Complex u, Complex d1, Complex d2) const {
    const HyperDualC uu(u, d1, d2, 0.0);
    const HyperDualC one(1.0);
    const std::vector<HyperDualC> g = second_chart ? curve.evaluate<HyperDualC>(one, uu) : curve.evaluate<HyperDualC>(uu, one);
    HyperDualC ip{}, nn{};
    for (std::size_t i = 0; i < g.size(); ++i) {
      ip = ip + g[i] * HyperDualC(std::conj(p(i)));
      nn = nn + g[i] * conj(g[i]);
    }
    return real_part(ip * conj(ip) / nn);
  }

  void derivatives(Complex u, double& value, Eigen::Vector2d& grad, Eigen::Matrix2d& hess) const {
    const Complex ex(1.0, 0.0), ey(0.0, 1.0);
    const HyperDual<double> xx = eval(u, ex, ex);
    const HyperDual<double> xy = eval(u, ex, ey);
    const HyperDual<double> yy = eval(u, ey, ey);
    value = xx.v;
    grad << xx.e1, yy.e1;
    hess << xx.e12, xy.e12, xy.e12, yy.e12;
  }
};

DistanceResult curve_distance(const RationalCurve& curve, const ProjectivePoint& pt, const Tolerances& tol) {
  const CVector& p = pt.rep();
  DistanceResult out;
  Candidate best;
  std::vector<Complex> starts = {0.0};
  const int ring = std::max(tol.multistart - 1, 1);
  for (int j = 0; j < ring; ++j) starts.push_back(std::polar(0.6, 2.0 * std::numbers::pi * (j + 0.5) / ring));
  for (bool second : {false, true}) {
    const CurveObjective obj{curve, p, second};
    for (Complex u : starts) {
      double value = 0.0;
      Eigen::Vector2d grad;
      Eigen::Matrix2d hess;
      bool converged = false;
      for (int it = 0; it < 100; ++it) {
        obj.derivatives(u, value, grad, hess);
        if (!std::isfinite(value) || std::abs(u) > 1e6) break;
        if (grad.norm() < 1e-13) {
          converged = true;
          break;
        }
        // Newton when the Hessian is negative definite (ascent), else a scaled gradient step.
        Eigen::Vector2d step;
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
        if (es.eigenvalues().maxCoeff() < 0.0) step = -hess.ldlt().solve(grad);
        else step = grad / std::max(1.0, grad.norm()) * 0.5;
        double t = 1.0;
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
          const Complex trial = u + t * Complex(step(0), step(1));
          double tv = 0.0;
          Eigen::Vector2d tg;
          Eigen::Matrix2d th;
          obj.derivatives(trial, tv, tg, th);
          if (std::isfinite(tv) && tv >= value - 1e-15) break;
        }
        const Complex next = u + t * Complex(step(0), step(1));
        if (std::abs(next - u) < 1e-15 * (1.0 + std::abs(u))) {
          converged = true;
          break;
        }
        u = next;
      }
      if (!converged) continue;
      const CVector g = second ? curve(1.0, u) : curve(u, 1.0);
      const double ng = g.norm();
      if (!(ng > 0.0)) continue;
      const CVector q = g / ng;
      const CVector w = p - hermitian(p, q) * q;
      CVector t = curve.chart_derivative(u, second);
      t -= hermitian(t, q) * q;
      if (!(t.norm() > 0.0)) continue;
      const double residual = std::abs(hermitian(w, t.normalized()));
      if (!(residual < tol.first_order_residual)) continue;
      ++out.certified_starts;
      const double dist = fs_distance(pt, ProjectivePoint::from_homogeneous(q));
      if (dist < best.distance) best = {dist, q, residual};
    }
  }
  if (out.certified_starts == 0) return out;
  out.distance = best.distance;
  out.closest = best.closest;
  out.residual = best.residual;
  out.ok = true;
  return out;
}

}  // namespace

DistanceResult distance_to_submanifold(const ProjectivePoint& p, const Submanifold& x, const Tolerances& tol) {
  if (p.dim() != x.ambient_dim()) throw GeometryError("distance_to_submanifold: dimension mismatch");
  const CVector& z = p.rep();
  return std::visit(
      [&](const auto& kind) -> DistanceResult {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, Hypersurface>) {
          return hypersurface_distance(kind.poly, p, tol);
        } else if constexpr (std::is_same_v<T, RationalCurve>) {
          return curve_distance(kind, p, tol);
        } else if constexpr (std::is_same_v<T, LinearSubspace>) {
          DistanceResult out;
          const double head = z.head(kind.k + 1).norm(), tail = z.tail(kind.n - kind.k).norm();
          out.distance = std::atan2(tail, head);
          out.closest = CVector::Zero(z.size());
          if (head > 0.0) out.closest.head(kind.k + 1) = z.head(kind.k + 1) / head;
          else out.closest(0) = 1.0;
          out.certified_starts = 1;
          out.ok = true;
          return out;
        } else {
          // Segre: distance to the rank-one 2×(k+1) matrices.
          const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
              z.data(), 2, kind.k + 1);
          Eigen::JacobiSVD<CMatrix> svd(CMatrix(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
          const auto& sv = svd.singularValues();
          DistanceResult out;
          out.distance = std::atan2(sv(1), sv(0));
          const CMatrix rank1 = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
          out.closest.resize(z.size());
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j <= kind.k; ++j) out.closest(i * (kind.k + 1) + j) = rank1(i, j);
          out.certified_starts = 1;
          out.ok = true;
          return out;
        }
      },
      x.kind());
}

}  // namespace fstube
