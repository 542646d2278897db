#include "fstube/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace fstube {

namespace {

std::vector<Monomial> differentiate(const std::vector<Monomial>& terms, int k) {
  std::vector<Monomial> out;
  for (const Monomial& t : terms) {
    if (t.exponents[k] == 0) continue;
    Monomial d = t;
    d.coeff *= static_cast<double>(t.exponents[k]);
    d.exponents[k] -= 1;
    out.push_back(std::move(d));
  }
  return out;
}

using ExponentMap = std::map<std::vector<int>, Complex>;

ExponentMap multiply(const ExponentMap& a, const ExponentMap& b) {
  ExponentMap out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  return out;
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int n, int d, std::vector<Monomial> terms)
    : n_(n), d_(d), terms_(std::move(terms)) {
  if (n < 1) throw PolynomialError("polynomial needs at least 2 variables (n >= 1)");
  if (d < 1) throw PolynomialError("polynomial degree must be >= 1");
  if (terms_.empty()) throw PolynomialError("polynomial has no terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& e = terms_[i].exponents;
    if (static_cast<int>(e.size()) != n + 1)
      throw PolynomialError("term " + std::to_string(i) + ": exponent has " + std::to_string(e.size()) +
                            " entries, expected " + std::to_string(n + 1));
    int sum = 0;
    for (int x : e) {
      if (x < 0) throw PolynomialError("term " + std::to_string(i) + ": negative exponent");
      sum += x;
    }
    if (sum != d)
      throw PolynomialError("term " + std::to_string(i) + ": exponents sum to " + std::to_string(sum) +
                            ", expected degree " + std::to_string(d));
  }
  gradient_terms_.reserve(n + 1);
  for (int k = 0; k <= n; ++k) gradient_terms_.push_back(differentiate(terms_, k));
  hessian_terms_.reserve((n + 1) * (n + 1));
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) hessian_terms_.push_back(differentiate(gradient_terms_[k], l));
}

HomogeneousPolynomial HomogeneousPolynomial::fermat(int n, int d) {
  std::vector<Monomial> terms;
  for (int i = 0; i <= n; ++i) {
    std::vector<int> e(n + 1, 0);
    e[i] = d;
    terms.push_back({1.0, std::move(e)});
  }
  return {n, d, std::move(terms)};
}

HomogeneousPolynomial HomogeneousPolynomial::coordinate(int n, int index) {
  std::vector<int> e(n + 1, 0);
  e.at(index) = 1;
  return {n, 1, {{1.0, std::move(e)}}};
}

Complex HomogeneousPolynomial::operator()(const CVector& z) const {
  return evaluate_terms<Complex>(terms_, std::span<const Complex>(z.data(), z.size()));
}

CVector HomogeneousPolynomial::gradient(const CVector& z) const {
  const std::span<const Complex> s(z.data(), z.size());
  CVector g(n_ + 1);
  for (int k = 0; k <= n_; ++k) g(k) = evaluate_terms<Complex>(gradient_terms_[k], s);
  return g;
}

CMatrix HomogeneousPolynomial::hessian(const CVector& z) const {
  const std::span<const Complex> s(z.data(), z.size());
  CMatrix h(n_ + 1, n_ + 1);
  for (int k = 0; k <= n_; ++k)
    for (int l = 0; l <= n_; ++l) h(k, l) = evaluate_terms<Complex>(hessian_terms_[k * (n_ + 1) + l], s);
  return h;
}

HomogeneousPolynomial HomogeneousPolynomial::compose_linear(const CMatrix& m) const {
  if (m.rows() != n_ + 1 || m.cols() != n_ + 1) throw PolynomialError("compose_linear: matrix size mismatch");
  // Row i of M gives the linear form replacing zᵢ.
  std::vector<ExponentMap> linear(n_ + 1);
  for (int i = 0; i <= n_; ++i)
    for (int j = 0; j <= n_; ++j) {
      if (m(i, j) == Complex(0.0)) continue;
      std::vector<int> e(n_ + 1, 0);
      e[j] = 1;
      linear[i][e] += m(i, j);
    }
  ExponentMap total;
  for (const Monomial& t : terms_) {
    ExponentMap acc{{std::vector<int>(n_ + 1, 0), t.coeff}};
    for (int i = 0; i <= n_; ++i)
      for (int e = 0; e < t.exponents[i]; ++e) acc = multiply(acc, linear[i]);
    for (const auto& [e, c] : acc) total[e] += c;
  }
  std::vector<Monomial> terms;
  for (const auto& [e, c] : total)
    if (std::abs(c) > 0.0) terms.push_back({c, e});
  if (terms.empty()) throw PolynomialError("compose_linear: result vanishes identically");
  return {n_, d_, std::move(terms)};
}

std::vector<Complex> polynomial_roots(std::span<const Complex> ascending, double tiny) {
  double scale = 0.0;
  for (const Complex& c : ascending) scale = std::max(scale, std::abs(c));
  if (!(scale > 0.0)) throw PolynomialError("polynomial_roots: zero polynomial");
  int deg = static_cast<int>(ascending.size()) - 1;
  while (deg > 0 && std::abs(ascending[deg]) <= tiny * scale) --deg;
  std::vector<Complex> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-ascending[0] / ascending[1]);
  } else if (deg == 2) {
    // Cancellation-free quadratic formula.
    const Complex a = ascending[2], b = ascending[1], c = ascending[0];
    Complex disc = std::sqrt(b * b - 4.0 * a * c);
    if ((std::conj(b) * disc).real() < 0.0) disc = -disc;
    const Complex q = -0.5 * (b + disc);
    if (std::abs(q) == 0.0) {
      roots.assign(2, Complex(0.0));
    } else {
      roots.push_back(q / a);
      roots.push_back(c / q);
    }
  } else {
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -ascending[i] / ascending[deg];
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw PolynomialError("polynomial_roots: eigenvalue solver failed");
    for (int i = 0; i < deg; ++i) roots.push_back(solver.eigenvalues()(i));
  }
  for (Complex& r : roots) {
    for (int it = 0; it < 3; ++it) {
      Complex f = 0.0, df = 0.0;
      for (int i = deg; i >= 0; --i) {
        df = df * r + f;
        f = f * r + ascending[i];
      }
      if (std::abs(df) == 0.0) break;
      const Complex step = f / df;
      if (!std::isfinite(std::abs(step))) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
  }
  return roots;
}

std::vector<Complex> restrict_to_line(const HomogeneousPolynomial& p, const CVector& a, const CVector& b) {
  const int d = p.degree();
  const int m = d + 1;
  // Interpolate on the (d+1)-th roots of unity; the DFT matrix is unitary up to
  // scale, so this is perfectly conditioned.
  std::vector<Complex> values(m);
  for (int k = 0; k < m; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    values[k] = p(a + w * b);
  }
  std::vector<Complex> coeffs(m);
  for (int j = 0; j < m; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) acc += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / m);
    coeffs[j] = acc / static_cast<double>(m);
  }
  return coeffs;
}

}  // namespace fstube
