#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fstube/submanifold.hpp"

namespace fstube {

struct VolumeReport {
  double value = 0.0;
  std::string method;                 // closed-form-g1, closed-form-hypersurface, closed-form-curve, monte-carlo
  std::optional<std::string> variant; // hypersurface variant
  std::optional<double> stderr_value;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::optional<long> failures;       // distance solves that did not certify
};

class MonteCarloError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection estimate of Vol(T_X(r)) for each radius from one shared sample of
// N uniform points. Samples are drawn in fixed blocks, each with its own RNG
// stream, so the result depends on (seed, N) only, not on the worker count.
// Throws MonteCarloError if more than 0.1% of distance solves fail.
std::vector<VolumeReport> mc_tube_volume(const Submanifold& x, const std::vector<double>& radii, long samples,
                                         std::uint64_t seed, int workers = 1,
                                         const Tolerances& tol = kDefaultTolerances);

}  // namespace fstube
