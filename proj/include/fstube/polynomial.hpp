#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fstube/hyperdual.hpp"
#include "fstube/projective.hpp"

namespace fstube {

class PolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Monomial {
  Complex coeff;
  std::vector<int> exponents;  // one entry per homogeneous variable
};

// Homogeneous polynomial of degree d in the n+1 variables z₀…zₙ.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int n, int d, std::vector<Monomial> terms);

  static HomogeneousPolynomial fermat(int n, int d);
  static HomogeneousPolynomial coordinate(int n, int index);  // P = z_index

  int ambient_dim() const { return n_; }
  int degree() const { return d_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  template <class S>
  S evaluate(std::span<const S> z) const {
    return evaluate_terms(terms_, z);
  }
  Complex operator()(const CVector& z) const;
  CVector gradient(const CVector& z) const;  // (∂P/∂zₖ)ₖ, holomorphic
  CMatrix hessian(const CVector& z) const;   // (∂²P/∂zₖ∂zₗ), complex symmetric
  // ∂P/∂z_k at z for any scalar type.
  template <class S>
  S partial(int k, std::span<const S> z) const {
    return evaluate_terms(gradient_terms_.at(k), z);
  }

  // P(M z) as a polynomial in z (same degree).
  HomogeneousPolynomial compose_linear(const CMatrix& m) const;

 private:
  template <class S>
  static S evaluate_terms(const std::vector<Monomial>& terms, std::span<const S> z) {
    S acc{};
    for (const Monomial& t : terms) {
      S prod = S(t.coeff);
      for (std::size_t i = 0; i < t.exponents.size(); ++i)
        for (int e = 0; e < t.exponents[i]; ++e) prod = prod * z[i];
      acc = acc + prod;
    }
    return acc;
  }

  int n_;
  int d_;
  std::vector<Monomial> terms_;
  std::vector<std::vector<Monomial>> gradient_terms_;
  std::vector<std::vector<Monomial>> hessian_terms_;  // row-major (n+1)²
};

// Roots of Σ cᵢ λⁱ (ascending coefficients) from the eigenvalues of the
// companion matrix, each polished by a few Newton steps. Leading coefficients
// below `tiny` relative to the largest are treated as zero (roots at ∞ dropped).
std::vector<Complex> polynomial_roots(std::span<const Complex> ascending, double tiny = 1e-14);

// Ascending coefficients of λ ↦ P(a + λ b), a univariate polynomial of degree ≤ d.
std::vector<Complex> restrict_to_line(const HomogeneousPolynomial& p, const CVector& a, const CVector& b);

}  // namespace fstube
