#pragma once

#include <cstdint>
#include <random>

namespace fstube {

// Every numeric threshold used by the library lives here so that tests and the
// CLI can override them in one place.
struct Tolerances {
  double unit_norm = 1e-12;           // ‖rep‖ = 1
  double horizontal = 1e-12;          // ⟨v, p⟩ = 0 for tangent vectors
  double point_equality = 1e-9;       // |⟨p, q⟩| − 1
  double on_variety = 1e-8;           // residual for "p lies on X"
  double sample_residual = 1e-10;     // |P(z)| after sampling
  double smooth_gradient = 1e-8;      // scaled ‖∇P‖ at a smooth point
  double complex_invariance = 1e-8;   // J T_pX ⊂ T_pX
  double frame_orthonormal = 1e-10;
  double first_order_residual = 1e-8; // projection certificate
  double riccati_switch = 1e3;        // raw λ → phase variable
  double riccati_blowup = 1e6;        // blow-up detection
  double bisection_radius = 1e-8;
  double fd_step = 1e-4;              // finite-difference fallback
  int max_resample = 64;
  int multistart = 8;
};

inline constexpr Tolerances kDefaultTolerances{};

using Rng = std::mt19937_64;

// Independent stream `stream` derived from a root seed.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

}  // namespace fstube
