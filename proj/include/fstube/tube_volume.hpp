#pragma once

// Tube volumes in ℙⁿ. Gray's formula expresses Vol(T_X(r)) for a compact
// complex k-dimensional X as
//   (1/n!) ∫_X ∏ₐ(1 − F/π + xₐ) ∧ (π sin²r + cos²r·F)ⁿ,
// truncated to degree k, where xₐ are the Chern roots of TX and F the Kähler
// form. The integrals needed are I(j, k−j) = ∫_X cⱼ(TX) F^{k−j}.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fstube/submanifold.hpp"

namespace fstube {

using Rational = boost::multiprecision::cpp_rational;

// Σ c · π^a · s^b with rational c, where s = sin²r. Exponents of π may be negative.
class PiPolynomial {
 public:
  using Key = std::pair<int, int>;  // (power of π, power of s)

  PiPolynomial() = default;
  static PiPolynomial monomial(Rational c, int pi_power, int s_power);

  PiPolynomial& operator+=(const PiPolynomial& o);
  PiPolynomial operator*(const PiPolynomial& o) const;
  PiPolynomial scaled(const Rational& c) const;
  bool operator==(const PiPolynomial& o) const;

  double evaluate(double s) const;
  const std::map<Key, Rational>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  void prune();
  std::map<Key, Rational> terms_;
};

// Entry I(j, k−j): exact as rational · π^{k−j}, or a floating override.
struct ChernEntry {
  Rational rational;
  std::optional<double> numeric;
};

struct ChernIntegrals {
  int k = 0;
  std::vector<ChernEntry> entries;  // index j = 0…k

  bool exact() const;
  double value(int j) const;  // numeric value of I(j, k−j)
  void validate() const;

  static ChernIntegrals point();
  static ChernIntegrals projective_space(int k);
  static ChernIntegrals hypersurface(int n, int d);
  static ChernIntegrals segre(int k);
  // Rational curve (genus 0) with area vol; exact when the area is deg·π.
  static ChernIntegrals rational_curve(double vol);
  static ChernIntegrals rational_curve_of_degree(int degree);
};

// Table for a built-in model (hypersurfaces, linear subspaces, Segre); for a
// parametrized curve the area is computed by quadrature.
ChernIntegrals chern_integrals_for(const Submanifold& x);

double gray_tube_volume_general(const ChernIntegrals& ci, int n, double r);
// Exact form of the same as a polynomial in π and s = sin²r (requires ci.exact()).
PiPolynomial gray_tube_polynomial(const ChernIntegrals& ci, int n);

enum class HypersurfaceVariant { as_printed, corrected };
const char* to_string(HypersurfaceVariant v);

// as_printed: (πⁿ/n!)(1 − (1 − d·sin²(2r))ⁿ); corrected: sin²(2r) → sin²r.
double tube_volume_hypersurface(int n, int d, double r, HypersurfaceVariant variant);
PiPolynomial hypersurface_polynomial(int n, int d, HypersurfaceVariant variant);

// (π^{n−1} sin^{2n−2}r / (n−1)!)·((1 − (n+1)/n·sin²r)·vol + 2π sin²r / n).
double tube_volume_curve(int n, double vol_curve, double r);

// Which hypersurface variant equals Gray's general formula with the
// hypersurface Chern table, compared as exact polynomials in (π, sin²r).
struct VariantArbitration {
  int n = 0, d = 0;
  bool as_printed_matches = false;
  bool corrected_matches = false;
  std::string general;  // rendered polynomial
};
VariantArbitration arbitrate_hypersurface_variant(int n, int d);

}  // namespace fstube
