#pragma once

#include <complex>

namespace fstube {

// Second-order hyper-dual number a + b·ε₁ + c·ε₂ + d·ε₁ε₂ with ε₁² = ε₂² = 0.
// Evaluating f(x + ε₁u + ε₂v) yields f, ∂ᵤf, ∂ᵥf and ∂ᵤ∂ᵥf exactly (no truncation
// error). The perturbations are real, so conj() acts componentwise and
// non-holomorphic expressions such as |z|² differentiate correctly.
template <class T>
struct HyperDual {
  T v{}, e1{}, e2{}, e12{};

  HyperDual() = default;
  HyperDual(T value) : v(value) {}  // NOLINT: implicit lift of constants
  HyperDual(T value, T d1, T d2, T d12) : v(value), e1(d1), e2(d2), e12(d12) {}

  HyperDual& operator+=(const HyperDual& o) {
    v += o.v, e1 += o.e1, e2 += o.e2, e12 += o.e12;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    v -= o.v, e1 -= o.e1, e2 -= o.e2, e12 -= o.e12;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
  friend HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
  friend HyperDual operator-(const HyperDual& a) { return {-a.v, -a.e1, -a.e2, -a.e12}; }

  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.v * b.v, a.e1 * b.v + a.v * b.e1, a.e2 * b.v + a.v * b.e2,
            a.e12 * b.v + a.e1 * b.e2 + a.e2 * b.e1 + a.v * b.e12};
  }
  friend HyperDual operator*(const HyperDual& a, const T& s) { return {a.v * s, a.e1 * s, a.e2 * s, a.e12 * s}; }
  friend HyperDual operator*(const T& s, const HyperDual& a) { return a * s; }

  friend HyperDual reciprocal(const HyperDual& b) {
    const T inv = T(1) / b.v;
    const T inv2 = inv * inv;
    return {inv, -b.e1 * inv2, -b.e2 * inv2, T(2) * b.e1 * b.e2 * inv2 * inv - b.e12 * inv2};
  }
  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) { return a * reciprocal(b); }
  friend HyperDual operator/(const HyperDual& a, const T& s) { return a * (T(1) / s); }
};

template <class T>
HyperDual<std::complex<T>> conj(const HyperDual<std::complex<T>>& a) {
  return {std::conj(a.v), std::conj(a.e1), std::conj(a.e2), std::conj(a.e12)};
}

template <class T>
HyperDual<T> real_part(const HyperDual<std::complex<T>>& a) {
  return {a.v.real(), a.e1.real(), a.e2.real(), a.e12.real()};
}

using HyperDualC = HyperDual<std::complex<double>>;

// Uniform access to the value part for Newton-type stopping rules.
inline std::complex<double> value_of(const std::complex<double>& z) { return z; }
inline std::complex<double> value_of(const HyperDualC& z) { return z.v; }

}  // namespace fstube
