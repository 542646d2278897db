#include "fstube/tube_volume.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fstube {

namespace {

constexpr double kPi = std::numbers::pi;

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  boost::multiprecision::cpp_int b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return Rational(b);
}

Rational factorial(int n) {
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

PiPolynomial power(const PiPolynomial& p, int e) {
  PiPolynomial out = PiPolynomial::monomial(1, 0, 0);
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

void require_radius(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("tube volume: radius must be >= 0");
}

}  // namespace

PiPolynomial PiPolynomial::monomial(Rational c, int pi_power, int s_power) {
  PiPolynomial p;
  p.terms_[{pi_power, s_power}] = std::move(c);
  p.prune();
  return p;
}

PiPolynomial& PiPolynomial::operator+=(const PiPolynomial& o) {
  for (const auto& [key, c] : o.terms_) terms_[key] += c;
  prune();
  return *this;
}

PiPolynomial PiPolynomial::operator*(const PiPolynomial& o) const {
  PiPolynomial out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) out.terms_[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
  out.prune();
  return out;
}

PiPolynomial PiPolynomial::scaled(const Rational& c) const {
  PiPolynomial out = *this;
  for (auto& [key, v] : out.terms_) v *= c;
  out.prune();
  return out;
}

bool PiPolynomial::operator==(const PiPolynomial& o) const { return terms_ == o.terms_; }

void PiPolynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) it = terms_.erase(it);
    else ++it;
  }
}

double PiPolynomial::evaluate(double s) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) acc += c.convert_to<double>() * std::pow(kPi, key.first) * std::pow(s, key.second);
  return acc;
}

std::string PiPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [key, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << boost::multiprecision::abs(c);
    if (key.first != 0) os << "*pi^" << key.first;
    if (key.second != 0) os << "*s^" << key.second;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

PiPolynomial gray_tube_polynomial(const ChernIntegrals& ci, int n) {
  ci.validate();
  if (!ci.exact()) throw std::invalid_argument("gray_tube_polynomial: Chern table has floating entries");
  const int k = ci.k;
  if (k >= n) throw std::invalid_argument("gray_tube_polynomial: needs k < n");
  // (1 − F/π)^{k−j} (πs + (1−s)F)ⁿ: keep the coefficient of F^{k−j}; the
  // complementary factor eⱼ(x) pairs with it to give I(j, k−j).
  PiPolynomial total;
  for (int j = 0; j <= k; ++j) {
    const int m = k - j;
    PiPolynomial coeff;
    for (int i = 0; i <= m; ++i) {
      const int l = m - i;  // F-power taken from the second factor
      if (l > n) continue;
      Rational c = binomial(m, i) * binomial(n, l);
      if (i % 2 == 1) c = -c;
      // π^{−i} · (πs)^{n−l} · (1−s)^l
      PiPolynomial term = PiPolynomial::monomial(c, n - l - i, n - l);
      PiPolynomial one_minus_s = PiPolynomial::monomial(1, 0, 0);
      one_minus_s += PiPolynomial::monomial(-1, 0, 1);
      coeff += term * power(one_minus_s, l);
    }
    total += coeff * PiPolynomial::monomial(ci.entries[j].rational, m, 0);
  }
  return total.scaled(1 / factorial(n));
}

double gray_tube_volume_general(const ChernIntegrals& ci, int n, double r) {
  require_radius(r);
  ci.validate();
  const int k = ci.k;
  if (k >= n) throw std::invalid_argument("gray_tube_volume_general: needs k < n");
  const double s = std::sin(r) * std::sin(r);
  double vol = 0.0;
  for (int j = 0; j <= k; ++j) {
    const int m = k - j;
    double coeff = 0.0;
    for (int i = 0; i <= m; ++i) {
      const int l = m - i;
      if (l > n) continue;
      const double c = binomial(m, i).convert_to<double>() * binomial(n, l).convert_to<double>() * (i % 2 ? -1.0 : 1.0);
      coeff += c * std::pow(kPi, -i) * std::pow(kPi * s, n - l) * std::pow(1.0 - s, l);
    }
    vol += coeff * ci.value(j);
  }
  return vol / std::tgamma(n + 1.0);
}

const char* to_string(HypersurfaceVariant v) {
  return v == HypersurfaceVariant::as_printed ? "as-printed" : "corrected";
}

double tube_volume_hypersurface(int n, int d, double r, HypersurfaceVariant variant) {
  require_radius(r);
  if (n < 1 || d < 1) throw std::invalid_argument("tube_volume_hypersurface: needs n, d >= 1");
  const double x = variant == HypersurfaceVariant::as_printed ? std::sin(2.0 * r) : std::sin(r);
  return std::pow(kPi, n) / std::tgamma(n + 1.0) * (1.0 - std::pow(1.0 - d * x * x, n));
}

PiPolynomial hypersurface_polynomial(int n, int d, HypersurfaceVariant variant) {
  // as printed, sin²(2r) = 4s(1 − s)
  PiPolynomial inner = PiPolynomial::monomial(1, 0, 0);
  if (variant == HypersurfaceVariant::as_printed) {
    inner += PiPolynomial::monomial(-4 * d, 0, 1);
    inner += PiPolynomial::monomial(4 * d, 0, 2);
  } else {
    inner += PiPolynomial::monomial(-d, 0, 1);
  }
  PiPolynomial out = PiPolynomial::monomial(1, 0, 0);
  out += power(inner, n).scaled(-1);
  return out * PiPolynomial::monomial(1 / factorial(n), n, 0);
}

double tube_volume_curve(int n, double vol_curve, double r) {
  require_radius(r);
  if (n < 2) throw std::invalid_argument("tube_volume_curve: needs n >= 2");
  if (!(vol_curve > 0.0)) throw std::invalid_argument("tube_volume_curve: curve area must be positive");
  const double s = std::sin(r) * std::sin(r);
  return std::pow(kPi, n - 1) * std::pow(s, n - 1) / std::tgamma(n) *
         ((1.0 - (n + 1.0) / n * s) * vol_curve + 2.0 * kPi * s / n);
}

VariantArbitration arbitrate_hypersurface_variant(int n, int d) {
  VariantArbitration a;
  a.n = n;
  a.d = d;
  const PiPolynomial general = gray_tube_polynomial(ChernIntegrals::hypersurface(n, d), n);
  a.general = general.to_string();
  a.as_printed_matches = general == hypersurface_polynomial(n, d, HypersurfaceVariant::as_printed);
  a.corrected_matches = general == hypersurface_polynomial(n, d, HypersurfaceVariant::corrected);
  return a;
}

}  // namespace fstube
