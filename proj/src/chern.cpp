#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "fstube/tube_volume.hpp"

namespace fstube {

namespace {

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  boost::multiprecision::cpp_int b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return Rational(b);
}

}  // namespace

bool ChernIntegrals::exact() const {
  for (const auto& e : entries)
    if (e.numeric) return false;
  return true;
}

double ChernIntegrals::value(int j) const {
  const ChernEntry& e = entries.at(j);
  if (e.numeric) return *e.numeric;
  return e.rational.convert_to<double>() * std::pow(std::numbers::pi, k - j);
}

void ChernIntegrals::validate() const {
  if (k < 0) throw std::invalid_argument("Chern table: negative dimension");
  if (static_cast<int>(entries.size()) != k + 1)
    throw std::invalid_argument("Chern table: expected " + std::to_string(k + 1) + " entries I(j, k-j), got " +
                                std::to_string(entries.size()));
  if (!(value(0) > 0.0)) throw std::invalid_argument("Chern table: I(0, k) must be positive");
}

ChernIntegrals ChernIntegrals::point() { return {0, {{Rational(1), {}}}}; }

ChernIntegrals ChernIntegrals::projective_space(int k) {
  ChernIntegrals ci{k, {}};
  for (int j = 0; j <= k; ++j) ci.entries.push_back({binomial(k + 1, j), {}});  // c(Tℙᵏ) = (1+h)^{k+1}
  return ci;
}

ChernIntegrals ChernIntegrals::hypersurface(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("Chern table: hypersurface needs n, d >= 1");
  // c(TX) = (1+h)^{n+1}/(1+dh) restricted to X, and ∫_X h^{n−1} = d.
  ChernIntegrals ci{n - 1, {}};
  Rational md = -d;
  for (int j = 0; j <= n - 1; ++j) {
    Rational c = 0, power = 1;
    for (int i = j; i >= 0; --i) {
      c += binomial(n + 1, i) * power;
      power *= md;
    }
    ci.entries.push_back({c * d, {}});
  }
  return ci;
}

ChernIntegrals ChernIntegrals::segre(int k) {
  if (k < 1) throw std::invalid_argument("Chern table: Segre needs k >= 1");
  // ℙ¹ × ℙᵏ with hyperplane class h = a + b, a² = 0, b^{k+1} = 0, ∫ a·bᵏ = 1,
  // and c(T) = (1+a)²(1+b)^{k+1} = (1+2a)(1+b)^{k+1}.
  const int dim = k + 1;
  // class as coefficients [a-power 0/1][b-power 0…k]
  using Class = std::vector<std::array<Rational, 2>>;
  auto mul = [&](const Class& x, const Class& y) {
    Class z(k + 1, {Rational(0), Rational(0)});
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j)
        for (int ea = 0; ea < 2; ++ea)
          for (int eb = 0; ea + eb < 2; ++eb) z[i + j][ea + eb] += x[i][ea] * y[j][eb];
    return z;
  };
  Class c(k + 1, {Rational(0), Rational(0)});
  for (int j = 0; j <= k; ++j) {
    c[j][0] = binomial(k + 1, j);
    c[j][1] = 2 * binomial(k + 1, j);  // 2a · bʲ
  }
  ChernIntegrals ci{dim, {}};
  for (int j = 0; j <= dim; ++j) {
    Class part(k + 1, {Rational(0), Rational(0)});  // degree-j part of c
    for (int b = 0; b <= k; ++b)
      for (int ea = 0; ea < 2; ++ea)
        if (b + ea == j) part[b][ea] = c[b][ea];
    Class h(k + 1, {Rational(0), Rational(0)});
    h[0][0] = 1;
    Class hyper(k + 1, {Rational(0), Rational(0)});
    hyper[0][1] = 1;
    if (k >= 1) hyper[1][0] = 1;
    for (int m = 0; m < dim - j; ++m) h = mul(h, hyper);
    ci.entries.push_back({mul(part, h)[k][1], {}});
  }
  return ci;
}

ChernIntegrals ChernIntegrals::rational_curve(double vol) {
  if (!(vol > 0.0)) throw std::invalid_argument("Chern table: curve area must be positive");
  ChernIntegrals ci{1, {}};
  ci.entries.push_back({Rational(0), vol});
  ci.entries.push_back({Rational(2), {}});  // ∫ c₁(Tℙ¹) = 2
  return ci;
}

ChernIntegrals ChernIntegrals::rational_curve_of_degree(int degree) {
  if (degree < 1) throw std::invalid_argument("Chern table: curve degree must be >= 1");
  return {1, {{Rational(degree), {}}, {Rational(2), {}}}};
}

ChernIntegrals chern_integrals_for(const Submanifold& x) {
  return std::visit(
      [&](const auto& kind) -> ChernIntegrals {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, Hypersurface>) {
          return ChernIntegrals::hypersurface(kind.poly.ambient_dim(), kind.poly.degree());
        } else if constexpr (std::is_same_v<T, LinearSubspace>) {
          return kind.k == 0 ? ChernIntegrals::point() : ChernIntegrals::projective_space(kind.k);
        } else if constexpr (std::is_same_v<T, SegreEmbedding>) {
          return ChernIntegrals::segre(kind.k);
        } else {
          return ChernIntegrals::rational_curve(curve_volume(kind).volume);
        }
      },
      x.kind());
}

}  // namespace fstube
