#include "fstube/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "fstube/hyperdual.hpp"
#include "submanifold_internal.hpp"

namespace fstube {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Types

RationalCurve::RationalCurve(int n, std::vector<HomogeneousPolynomial> components)
    : n_(n), d_(0), components_(std::move(components)) {
  if (n < 1) throw PolynomialError("rational curve: target dimension must be >= 1");
  if (static_cast<int>(components_.size()) != n + 1)
    throw PolynomialError("rational curve: expected " + std::to_string(n + 1) + " components, got " +
                          std::to_string(components_.size()));
  d_ = components_.front().degree();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].ambient_dim() != 1)
      throw PolynomialError("rational curve component " + std::to_string(i) + " is not a binary form");
    if (components_[i].degree() != d_)
      throw PolynomialError("rational curve component " + std::to_string(i) + " has degree " +
                            std::to_string(components_[i].degree()) + ", expected " + std::to_string(d_));
  }
  // Base points: common zeros of all components. Every common zero is a root of
  // the component with the largest coefficients, so testing its roots (and ∞)
  // is exhaustive.
  std::size_t lead = 0;
  double best = -1.0;
  std::vector<std::vector<Complex>> ascending(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    ascending[i].assign(d_ + 1, 0.0);
    double norm = 0.0;
    for (const Monomial& m : components_[i].terms()) {
      ascending[i][m.exponents[0]] += m.coeff;  // chart t = 1: coefficient of s^e
      norm += std::norm(m.coeff);
    }
    if (norm > best) best = norm, lead = i;
  }
  if (!(best > 0.0)) throw PolynomialError("rational curve: all components vanish");
  std::vector<std::pair<Complex, Complex>> candidates = {{1.0, 0.0}};
  bool all_zero = true;
  for (const Complex& c : ascending[lead]) all_zero = all_zero && std::abs(c) == 0.0;
  if (!all_zero)
    for (const Complex& r : polynomial_roots(ascending[lead])) candidates.emplace_back(r, 1.0);
  for (auto [s, t] : candidates) {
    const double scale = std::pow(std::abs(s) * std::abs(s) + std::abs(t) * std::abs(t), 0.5 * d_);
    const CVector v = (*this)(s, t);
    if (v.norm() <= 1e-10 * std::sqrt(best) * scale)
      throw PolynomialError("rational curve has a base point (all components vanish at a common parameter)");
  }
}

CVector RationalCurve::operator()(Complex s, Complex t) const {
  const std::vector<Complex> v = evaluate<Complex>(s, t);
  return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

CVector RationalCurve::chart_derivative(Complex u, bool second_chart) const {
  CVector out(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    Complex acc = 0.0;
    for (const Monomial& m : components_[i].terms()) {
      // second chart differentiates in t at s = 1, first chart in s at t = 1
      const int e = second_chart ? m.exponents[1] : m.exponents[0];
      if (e == 0) continue;
      acc += m.coeff * static_cast<double>(e) * std::pow(u, e - 1);
    }
    out(i) = acc;
  }
  return out;
}

RationalCurve RationalCurve::reparametrized(const Eigen::Matrix2cd& m) const {
  if (std::abs(m.determinant()) < 1e-14) throw PolynomialError("reparametrization matrix is singular");
  std::vector<HomogeneousPolynomial> comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) comps.push_back(c.compose_linear(m));
  return {n_, std::move(comps)};
}

Submanifold::Submanifold(Kind kind, std::string name) : kind_(std::move(kind)), name_(std::move(name)) {
  std::visit(overloaded{
                 [](const Hypersurface& h) {
                   if (h.poly.ambient_dim() < 1) throw SubmanifoldError("hypersurface needs n >= 1");
                 },
                 [](const RationalCurve&) {},
                 [](const LinearSubspace& l) {
                   if (l.n < 1 || l.k < 0 || l.k >= l.n)
                     throw SubmanifoldError("linear subspace needs 0 <= k < n");
                 },
                 [](const SegreEmbedding& s) {
                   if (s.k < 1) throw SubmanifoldError("Segre embedding needs k >= 1");
                 },
             },
             kind_);
}

int Submanifold::ambient_dim() const {
  return std::visit(overloaded{
                        [](const Hypersurface& h) { return h.poly.ambient_dim(); },
                        [](const RationalCurve& c) { return c.ambient_dim(); },
                        [](const LinearSubspace& l) { return l.n; },
                        [](const SegreEmbedding& s) { return 2 * s.k + 1; },
                    },
                    kind_);
}

int Submanifold::complex_dim() const {
  return std::visit(overloaded{
                        [](const Hypersurface& h) { return h.poly.ambient_dim() - 1; },
                        [](const RationalCurve&) { return 1; },
                        [](const LinearSubspace& l) { return l.k; },
                        [](const SegreEmbedding& s) { return s.k + 1; },
                    },
                    kind_);
}

int Submanifold::degree() const {
  return std::visit(overloaded{
                        [](const Hypersurface& h) { return h.poly.degree(); },
                        [](const RationalCurve& c) { return c.degree(); },
                        [](const LinearSubspace&) { return 1; },
                        [](const SegreEmbedding& s) { return s.k + 1; },
                    },
                    kind_);
}

Submanifold make_linear(int n, int k) {
  return {LinearSubspace{n, k}, "linear P^" + std::to_string(k) + " in P^" + std::to_string(n)};
}

Submanifold make_hypersurface(HomogeneousPolynomial poly, std::string name) {
  return {Hypersurface{std::move(poly)}, std::move(name)};
}

Submanifold make_fermat(int n, int d) {
  return make_hypersurface(HomogeneousPolynomial::fermat(n, d),
                           "fermat degree " + std::to_string(d) + " in P^" + std::to_string(n));
}

Submanifold make_quadric(int n) {
  return make_hypersurface(HomogeneousPolynomial::fermat(n, 2), "quadric Q^" + std::to_string(n - 1));
}

Submanifold make_segre(int k) {
  return {SegreEmbedding{k}, "segre P^1 x P^" + std::to_string(k) + " in P^" + std::to_string(2 * k + 1)};
}

Submanifold make_rational_curve(RationalCurve curve, std::string name) {
  return {std::move(curve), std::move(name)};
}

RationalCurve rational_normal_curve(int d, int n) {
  if (d < 1 || n < d) throw PolynomialError("rational normal curve needs 1 <= d <= n");
  std::vector<HomogeneousPolynomial> comps;
  for (int i = 0; i <= n; ++i) {
    if (i <= d) {
      const double binom = std::tgamma(d + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(d - i + 1.0));
      comps.emplace_back(1, d, std::vector<Monomial>{{std::sqrt(binom), {d - i, i}}});
    } else {
      comps.emplace_back(1, d, std::vector<Monomial>{{0.0, {d, 0}}});
    }
  }
  return {n, std::move(comps)};
}

RationalCurve quadric_ruling() {
  const Complex i(0, 1);
  std::vector<HomogeneousPolynomial> comps;
  comps.emplace_back(1, 1, std::vector<Monomial>{{1.0, {1, 0}}});
  comps.emplace_back(1, 1, std::vector<Monomial>{{i, {1, 0}}});
  comps.emplace_back(1, 1, std::vector<Monomial>{{1.0, {0, 1}}});
  comps.emplace_back(1, 1, std::vector<Monomial>{{i, {0, 1}}});
  return {3, std::move(comps)};
}

// ---------------------------------------------------------------------------
// Internals shared with distance.cpp

namespace detail {

double coefficient_norm(const HomogeneousPolynomial& p) {
  double s = 0.0;
  for (const Monomial& m : p.terms()) s += std::norm(m.coeff);
  return std::sqrt(s);
}

CMatrix complex_complement(const CMatrix& spanning, double threshold) {
  const Eigen::Index m = spanning.rows();
  Eigen::ColPivHouseholderQR<CMatrix> qr(spanning);
  qr.setThreshold(threshold);
  const Eigen::Index rank = qr.rank();
  const CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  return q.rightCols(m - rank);
}

std::pair<Complex, Complex> curve_parameter(const RationalCurve& curve, const ProjectivePoint& p, double* residual) {
  const int n = curve.ambient_dim();
  const int d = curve.degree();
  // A fixed probe vector v ⊥ p: parameters with Γ ∥ p are among the roots of ⟨Γ, v⟩.
  Rng probe_rng = stream_rng(0x70b3c0deULL, static_cast<std::uint64_t>(n));
  CVector v;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const CVector u = gaussian_unit_vector(n + 1, probe_rng);
    v = u - hermitian(u, p.rep()) * p.rep();
    if (v.norm() > 0.1) break;
  }
  std::vector<Complex> ascending(d + 1, 0.0);
  for (int i = 0; i <= n; ++i)
    for (const Monomial& m : curve.components()[i].terms()) ascending[m.exponents[0]] += m.coeff * std::conj(v(i));
  std::vector<std::pair<Complex, Complex>> candidates = {{1.0, 0.0}};
  double scale = 0.0;
  for (const Complex& c : ascending) scale = std::max(scale, std::abs(c));
  if (scale > 0.0)
    for (const Complex& r : polynomial_roots(ascending)) candidates.emplace_back(r, 1.0);
  double best = std::numeric_limits<double>::infinity();
  std::pair<Complex, Complex> arg{1.0, 0.0};
  for (auto [s, t] : candidates) {
    const double norm = std::hypot(std::abs(s), std::abs(t));
    s /= norm, t /= norm;
    const CVector g = curve(s, t);
    if (g.norm() == 0.0) continue;
    const double dist = fs_distance(p, ProjectivePoint::from_homogeneous(g));
    if (dist < best) best = dist, arg = {s, t};
  }
  if (residual) *residual = best;
  return arg;
}

}  // namespace detail

using detail::coefficient_norm;
using detail::complex_complement;

// ---------------------------------------------------------------------------
// Sampling

namespace {

ProjectivePoint sample_hypersurface(const HomogeneousPolynomial& poly, Rng& rng, const Tolerances& tol) {
  const int n = poly.ambient_dim();
  const int d = poly.degree();
  const double cnorm = coefficient_norm(poly);
  for (int attempt = 0; attempt < tol.max_resample; ++attempt) {
    const CVector a = gaussian_unit_vector(n + 1, rng);
    const CVector b = gaussian_unit_vector(n + 1, rng);
    const std::vector<Complex> coeffs = restrict_to_line(poly, a, b);
    const std::vector<Complex> roots = polynomial_roots(coeffs);
    if (static_cast<int>(roots.size()) != d) continue;
    std::uniform_int_distribution<int> pick(0, d - 1);
    const Complex lambda = roots[pick(rng)];
    const CVector z = (a + lambda * b).normalized();
    if (std::abs(poly(z)) > tol.sample_residual * std::max(1.0, cnorm)) continue;
    if (poly.gradient(z).norm() <= tol.smooth_gradient * d * cnorm) continue;
    return ProjectivePoint::from_homogeneous(z);
  }
  throw SubmanifoldError("sample_point: no smooth point found after " + std::to_string(tol.max_resample) +
                         " random-line intersections");
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

ProjectivePoint sample_point(const Submanifold& x, Rng& rng, const Tolerances& tol) {
  return std::visit(
      overloaded{
          [&](const Hypersurface& h) { return sample_hypersurface(h.poly, rng, tol); },
          [&](const RationalCurve& c) {
            for (int attempt = 0; attempt < tol.max_resample; ++attempt) {
              const CVector st = gaussian_unit_vector(2, rng);
              const CVector g = c(st(0), st(1));
              if (g.norm() > 1e-12) return ProjectivePoint::from_homogeneous(g);
            }
            throw SubmanifoldError("sample_point: curve evaluation vanished repeatedly");
          },
          [&](const LinearSubspace& l) {
            CVector z = CVector::Zero(l.n + 1);
            z.head(l.k + 1) = gaussian_unit_vector(l.k + 1, rng);
            return ProjectivePoint::from_homogeneous(z);
          },
          [&](const SegreEmbedding& s) {
            const CVector a = gaussian_unit_vector(2, rng);
            const CVector b = gaussian_unit_vector(s.k + 1, rng);
            return ProjectivePoint::from_homogeneous(kron(a, b));
          },
      },
      x.kind());
}

namespace {

double segre_residual(const SegreEmbedding& s, const ProjectivePoint& p) {
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      p.rep().data(), 2, s.k + 1);
  Eigen::JacobiSVD<CMatrix> svd{CMatrix(m)};
  const auto& sv = svd.singularValues();
  return std::atan2(sv(1), sv(0));
}

}  // namespace

double on_variety_residual(const Submanifold& x, const ProjectivePoint& p) {
  if (p.dim() != x.ambient_dim()) throw GeometryError("point and submanifold live in different P^n");
  return std::visit(overloaded{
                        [&](const Hypersurface& h) { return std::abs(h.poly(p.rep())) / coefficient_norm(h.poly); },
                        [&](const RationalCurve& c) {
                          double res = 0.0;
                          detail::curve_parameter(c, p, &res);
                          return res;
                        },
                        [&](const LinearSubspace& l) { return p.rep().tail(l.n - l.k).norm(); },
                        [&](const SegreEmbedding& s) { return segre_residual(s, p); },
                    },
                    x.kind());
}

// ---------------------------------------------------------------------------
// Holomorphic charts

namespace {

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const HyperDualC& z) {
  return std::abs(z.v) + std::abs(z.e1) + std::abs(z.e2) + std::abs(z.e12);
}

template <class S>
std::vector<S> affine(const CVector& base, const std::vector<CVector>& dirs, std::span<const S> w) {
  std::vector<S> f(base.size());
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    S acc = S(base(i));
    for (std::size_t a = 0; a < dirs.size(); ++a) acc = acc + w[a] * S(dirs[a](i));
    f[i] = acc;
  }
  return f;
}

struct LinearChart {
  CVector base;
  std::vector<CVector> dirs;
  template <class S>
  std::vector<S> operator()(std::span<const S> w) const {
    return affine(base, dirs, w);
  }
};

// f(w) = z + Σ wₐ tₐ + g(w)·e_m with g solved from P(f(w)) = 0 by Newton's
// method carried out in the scalar type S (so hyper-dual parts are the exact
// implicit derivatives).
struct HypersurfaceChart {
  const HomogeneousPolynomial* poly;
  CVector base;
  std::vector<CVector> dirs;
  int solve_index;
  template <class S>
  std::vector<S> operator()(std::span<const S> w) const {
    std::vector<S> f = affine(base, dirs, w);
    const S start = f[solve_index];
    S g{};
    for (int it = 0; it < 40; ++it) {
      f[solve_index] = start + g;
      const std::span<const S> fs(f.data(), f.size());
      const S step = poly->evaluate<S>(fs) / poly->partial<S>(solve_index, fs);
      g = g - step;
      if (magnitude(step) <= 1e-15 * (1.0 + magnitude(g))) break;
    }
    f[solve_index] = start + g;
    return f;
  }
};

struct CurveChart {
  const RationalCurve* curve;
  Complex s0, t0, ds, dt;
  template <class S>
  std::vector<S> operator()(std::span<const S> w) const {
    return curve->evaluate<S>(S(s0) + w[0] * S(ds), S(t0) + w[0] * S(dt));
  }
};

struct SegreChart {
  CVector a0, a1, b0;
  std::vector<CVector> bdirs;
  template <class S>
  std::vector<S> operator()(std::span<const S> w) const {
    std::vector<S> a(2);
    for (int i = 0; i < 2; ++i) a[i] = S(a0(i)) + w[0] * S(a1(i));
    const std::vector<S> b = affine(b0, bdirs, w.subspan(1));
    std::vector<S> out;
    out.reserve(2 * b.size());
    for (const S& ai : a)
      for (const S& bj : b) out.push_back(ai * bj);
    return out;
  }
};

using Chart = std::variant<LinearChart, HypersurfaceChart, CurveChart, SegreChart>;

void require_on(bool ok, const char* what, double residual) {
  if (!ok) throw SubmanifoldError(std::string(what) + ": point is not on the submanifold (residual " +
                                  std::to_string(residual) + ")");
}

Chart make_chart(const Submanifold& x, const ProjectivePoint& p, const Tolerances& tol) {
  if (p.dim() != x.ambient_dim()) throw GeometryError("point and submanifold live in different P^n");
  const CVector& z = p.rep();
  return std::visit(
      overloaded{
          [&](const Hypersurface& h) -> Chart {
            const double cnorm = coefficient_norm(h.poly);
            const double res = std::abs(h.poly(z)) / cnorm;
            require_on(res < tol.on_variety, "hypersurface chart", res);
            const CVector grad = h.poly.gradient(z);
            if (grad.norm() <= tol.smooth_gradient * h.poly.degree() * cnorm)
              throw SubmanifoldError("hypersurface chart: singular point (gradient below threshold)");
            int m = 0;
            grad.cwiseAbs().maxCoeff(&m);
            CMatrix span(z.size(), 2);
            span.col(0) = z;
            span.col(1) = grad.conjugate();
            const CMatrix t = complex_complement(span, 1e-10);
            std::vector<CVector> dirs;
            for (Eigen::Index c = 0; c < t.cols(); ++c) dirs.push_back(t.col(c));
            return HypersurfaceChart{&h.poly, z, std::move(dirs), m};
          },
          [&](const RationalCurve& c) -> Chart {
            double res = 0.0;
            const auto [s, t] = detail::curve_parameter(c, p, &res);
            require_on(res < tol.on_variety, "curve chart", res);
            return CurveChart{&c, s, t, -std::conj(t), std::conj(s)};
          },
          [&](const LinearSubspace& l) -> Chart {
            const double res = z.tail(l.n - l.k).norm();
            require_on(res < tol.on_variety, "linear chart", res);
            CVector head = CVector::Zero(l.n + 1);
            head.head(l.k + 1) = z.head(l.k + 1);
            std::vector<CVector> dirs;
            if (l.k > 0) {
              const CMatrix t = complex_complement(CMatrix(z.head(l.k + 1)), 1e-10);
              for (Eigen::Index col = 0; col < t.cols(); ++col) {
                CVector d = CVector::Zero(l.n + 1);
                d.head(l.k + 1) = t.col(col);
                dirs.push_back(std::move(d));
              }
            }
            return LinearChart{head, std::move(dirs)};
          },
          [&](const SegreEmbedding& s) -> Chart {
            const double res = segre_residual(s, p);
            require_on(res < tol.on_variety, "segre chart", res);
            const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
                z.data(), 2, s.k + 1);
            Eigen::JacobiSVD<CMatrix> svd(CMatrix(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
            const double sigma = svd.singularValues()(0);
            const CVector a0 = sigma * svd.matrixU().col(0);
            const CVector b0 = svd.matrixV().col(0).conjugate();
            CVector a1(2);
            a1 << -std::conj(a0(1)), std::conj(a0(0));
            a1 /= a1.norm();
            const CMatrix bt = complex_complement(CMatrix(b0), 1e-10);
            std::vector<CVector> bdirs;
            for (Eigen::Index col = 0; col < bt.cols(); ++col) bdirs.push_back(bt.col(col));
            return SegreChart{a0, a1, b0, std::move(bdirs)};
          },
      },
      x.kind());
}

// Complex direction in w-space for real coordinate α (Re wₐ or Im wₐ).
Complex coordinate_direction(int alpha, int a) {
  if (alpha / 2 != a) return 0.0;
  return alpha % 2 == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
}

template <class F>
LocalJet jet_hyper_dual(const F& chart, int k) {
  const int m = 2 * k;
  LocalJet jet;
  jet.real_dim = m;
  jet.first.resize(m);
  jet.second.resize(m * m);
  if (m == 0) {
    const std::vector<Complex> f = chart(std::span<const Complex>());
    jet.point = Eigen::Map<const CVector>(f.data(), static_cast<Eigen::Index>(f.size()));
    return jet;
  }
  std::vector<HyperDualC> w(k);
  for (int alpha = 0; alpha < m; ++alpha)
    for (int beta = alpha; beta < m; ++beta) {
      for (int a = 0; a < k; ++a)
        w[a] = HyperDualC(0.0, coordinate_direction(alpha, a), coordinate_direction(beta, a), 0.0);
      const std::vector<HyperDualC> f = chart(std::span<const HyperDualC>(w));
      const Eigen::Index dim = static_cast<Eigen::Index>(f.size());
      CVector v(dim), d1(dim), d12(dim);
      for (Eigen::Index i = 0; i < dim; ++i) v(i) = f[i].v, d1(i) = f[i].e1, d12(i) = f[i].e12;
      if (alpha == 0 && beta == 0) jet.point = v;
      if (beta == alpha) jet.first[alpha] = d1;
      jet.second[alpha * m + beta] = d12;
      jet.second[beta * m + alpha] = d12;
    }
  return jet;
}

template <class F>
LocalJet jet_finite_difference(const F& chart, int k, double h) {
  const int m = 2 * k;
  LocalJet jet;
  jet.real_dim = m;
  jet.first.resize(m);
  jet.second.resize(m * m);
  auto eval = [&](const std::vector<Complex>& w) {
    const std::vector<Complex> f = chart(std::span<const Complex>(w));
    return CVector(Eigen::Map<const CVector>(f.data(), static_cast<Eigen::Index>(f.size())));
  };
  auto offset = [&](int alpha, double ha, int beta, double hb) {
    std::vector<Complex> w(k, 0.0);
    for (int a = 0; a < k; ++a)
      w[a] = ha * coordinate_direction(alpha, a) + (beta >= 0 ? hb * coordinate_direction(beta, a) : 0.0);
    return eval(w);
  };
  jet.point = eval(std::vector<Complex>(k, 0.0));
  auto first = [&](int alpha, double step) {
    return CVector((offset(alpha, step, -1, 0) - offset(alpha, -step, -1, 0)) / (2.0 * step));
  };
  auto second = [&](int alpha, int beta, double step) -> CVector {
    if (alpha == beta)
      return (offset(alpha, step, -1, 0) - 2.0 * jet.point + offset(alpha, -step, -1, 0)) / (step * step);
    return (offset(alpha, step, beta, step) - offset(alpha, step, beta, -step) - offset(alpha, -step, beta, step) +
            offset(alpha, -step, beta, -step)) /
           (4.0 * step * step);
  };
  for (int alpha = 0; alpha < m; ++alpha) {
    // Richardson: both stencils are O(h²), so (4·D(h/2) − D(h))/3 is O(h⁴).
    jet.first[alpha] = (4.0 * first(alpha, 0.5 * h) - first(alpha, h)) / 3.0;
    for (int beta = alpha; beta < m; ++beta) {
      const CVector d = (4.0 * second(alpha, beta, 0.5 * h) - second(alpha, beta, h)) / 3.0;
      jet.second[alpha * m + beta] = d;
      jet.second[beta * m + alpha] = d;
    }
  }
  return jet;
}

}  // namespace

LocalJet local_jet(const Submanifold& x, const ProjectivePoint& p, DiffMethod method, const Tolerances& tol) {
  const Chart chart = make_chart(x, p, tol);
  const int k = x.complex_dim();
  LocalJet jet = std::visit(
      [&](const auto& c) {
        return method == DiffMethod::hyper_dual ? jet_hyper_dual(c, k) : jet_finite_difference(c, k, tol.fd_step);
      },
      chart);
  // Rescale f by a constant so that f(0) is the unit representative p.rep()
  // (up to the residual of p on X). Constant rescaling keeps f holomorphic.
  const Complex lambda = hermitian(p.rep(), jet.point) / jet.point.squaredNorm();
  const Complex scale = lambda / (lambda * jet.point).norm();
  jet.point *= scale;
  for (auto& v : jet.first) v *= scale;
  for (auto& v : jet.second) v *= scale;
  return jet;
}

// ---------------------------------------------------------------------------
// Frames and shape operators

namespace detail {

JetBasis basis_from_jet(const LocalJet& jet, const Tolerances& tol) {
  const int m = jet.real_dim;
  const CVector& z = jet.point;
  const Eigen::Index dim = z.size();
  JetBasis out;
  if (m > 0) {
    // Horizontal parts of the real derivatives, stacked as real 2(n+1)-vectors.
    Eigen::MatrixXd hr(2 * dim, m);
    double largest = 0.0;
    for (int a = 0; a < m; ++a) {
      const CVector h = jet.first[a] - hermitian(jet.first[a], z) * z;
      hr.col(a).head(dim) = h.real();
      hr.col(a).tail(dim) = h.imag();
      largest = std::max(largest, h.norm());
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(hr);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    for (int a = 0; a < m; ++a)
      if (!(std::abs(r(a, a)) > 1e-8 * std::max(largest, 1e-300)))
        throw SubmanifoldError("tangent frame: rank deficiency (singular point or degenerate chart)");
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * dim, m);
    for (int a = 0; a < m; ++a) {
      CVector e(dim);
      for (Eigen::Index i = 0; i < dim; ++i) e(i) = Complex(q(i, a), q(dim + i, a));
      out.tangent.push_back(std::move(e));
    }
    out.coords_to_basis = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m, m));
  }
  // ν = complement of span_ℂ{z, T}. A complex submanifold has complex rank k+1 here.
  CMatrix span(dim, 1 + m);
  span.col(0) = z;
  for (int a = 0; a < m; ++a) span.col(1 + a) = out.tangent[a];
  const CMatrix nu = complex_complement(span, 1e-8);
  if (nu.cols() != dim - 1 - m / 2)
    throw SubmanifoldError("tangent frame: tangent space is not complex (J-invariance fails)");
  for (Eigen::Index c = 0; c < nu.cols(); ++c) {
    out.normal.push_back(nu.col(c));
    out.normal.push_back(Complex(0.0, 1.0) * nu.col(c));
  }
  double j_defect = 0.0;
  for (const CVector& e : out.tangent) {
    const CVector je = Complex(0.0, 1.0) * e;
    CVector proj = CVector::Zero(dim);
    for (const CVector& f : out.tangent) proj += real_inner(je, f) * f;
    j_defect = std::max(j_defect, (je - proj).norm());
  }
  if (j_defect > tol.complex_invariance)
    throw SubmanifoldError("tangent frame: J T_pX is not contained in T_pX (defect " + std::to_string(j_defect) + ")");
  return out;
}

}  // namespace detail

SubmanifoldFrame tangent_normal_frame(const Submanifold& x, const ProjectivePoint& p, const Tolerances& tol) {
  const LocalJet jet = local_jet(x, p, DiffMethod::hyper_dual, tol);
  detail::JetBasis b = detail::basis_from_jet(jet, tol);
  return {ProjectivePoint::from_homogeneous(jet.point), std::move(b.tangent), std::move(b.normal)};
}

FrameDefects frame_defects(const SubmanifoldFrame& frame) {
  FrameDefects d;
  const CVector& z = frame.point.rep();
  std::vector<CVector> all = frame.tangent;
  all.insert(all.end(), frame.normal.begin(), frame.normal.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    d.horizontality = std::max(d.horizontality, std::abs(hermitian(all[i], z)));
    for (std::size_t j = 0; j < all.size(); ++j)
      d.orthonormality = std::max(d.orthonormality, std::abs(real_inner(all[i], all[j]) - (i == j ? 1.0 : 0.0)));
  }
  for (const CVector& e : frame.tangent) {
    const CVector je = Complex(0.0, 1.0) * e;
    CVector proj = CVector::Zero(z.size());
    for (const CVector& f : frame.tangent) proj += real_inner(je, f) * f;
    d.complex_invariance = std::max(d.complex_invariance, (je - proj).norm());
  }
  if (static_cast<Eigen::Index>(all.size()) != 2 * (z.size() - 1))
    d.orthonormality = std::max(d.orthonormality, 1.0);  // T ⊕ ν must fill the horizontal space
  return d;
}

SubmanifoldFrame rotate_tangent_frame(const SubmanifoldFrame& frame, const Eigen::MatrixXd& q) {
  const int m = frame.tangent_dim();
  if (q.rows() != m || q.cols() != m) throw GeometryError("rotate_tangent_frame: size mismatch");
  if ((q.transpose() * q - Eigen::MatrixXd::Identity(m, m)).norm() > 1e-10)
    throw GeometryError("rotate_tangent_frame: matrix is not orthogonal");
  SubmanifoldFrame out = frame;
  for (int b = 0; b < m; ++b) {
    CVector f = CVector::Zero(frame.point.rep().size());
    for (int a = 0; a < m; ++a) f += q(a, b) * frame.tangent[a];
    out.tangent[b] = std::move(f);
  }
  return out;
}

TangentVector random_unit_normal(const SubmanifoldFrame& frame, Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    CVector v = CVector::Zero(frame.point.rep().size());
    for (const CVector& e : frame.normal) v += normal(rng) * e;
    if (v.norm() > 1e-12) return TangentVector::project(frame.point, v / v.norm());
  }
}

Eigen::MatrixXd shape_operator(const Submanifold& x, const SubmanifoldFrame& frame, const TangentVector& xi,
                               DiffMethod method, const Tolerances& tol) {
  const int m = frame.tangent_dim();
  if ((xi.base().rep() - frame.point.rep()).norm() > tol.point_equality)
    throw GeometryError("shape_operator: normal vector is not based at the frame point");
  if (std::abs(xi.norm() - 1.0) > 1e-10) throw GeometryError("shape_operator: normal vector must be unit");
  for (const CVector& e : frame.tangent)
    if (std::abs(real_inner(xi.vec(), e)) > tol.on_variety)
      throw GeometryError("shape_operator: vector is not normal to the submanifold");
  if (m == 0) return Eigen::MatrixXd(0, 0);

  const LocalJet jet = local_jet(x, frame.point, method, tol);
  const detail::JetBasis b = detail::basis_from_jet(jet, tol);
  if ((jet.point - frame.point.rep()).norm() > tol.point_equality * 10)
    throw GeometryError("shape_operator: frame point and chart disagree");
  Eigen::MatrixXd coord(m, m);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) coord(a, c) = real_inner(jet.second[a * m + c], xi.vec());
  const Eigen::MatrixXd in_jet_basis = b.coords_to_basis.transpose() * coord * b.coords_to_basis;
  Eigen::MatrixXd change(m, m);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) change(a, c) = real_inner(b.tangent[a], frame.tangent[c]);
  return change.transpose() * in_jet_basis * change;
}

Eigen::VectorXd sorted_spectrum(const Eigen::MatrixXd& symmetric) {
  if (symmetric.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (symmetric + symmetric.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double curvature_adapted_defect(const SubmanifoldFrame& frame, const TangentVector& xi, const Eigen::MatrixXd& shape) {
  const int m = frame.tangent_dim();
  Eigen::MatrixXd k(m, m);
  for (int a = 0; a < m; ++a) {
    const TangentVector ka = curvature_operator(xi, TangentVector::project(frame.point, frame.tangent[a]));
    for (int c = 0; c < m; ++c) k(c, a) = real_inner(ka.vec(), frame.tangent[c]);
  }
  return (k * shape - shape * k).norm();
}

}  // namespace fstube
