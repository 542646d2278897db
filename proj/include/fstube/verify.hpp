#pragma once

// Experiment runners. Each returns a self-contained report that is
// reproducible from (claim, inputs, seed).

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fstube/focal.hpp"
#include "fstube/submanifold.hpp"
#include "fstube/tube_volume.hpp"

namespace fstube {

using Json = nlohmann::ordered_json;

// Non-finite doubles become the strings "inf", "-inf", "nan".
Json json_number(double x);

struct ExperimentReport {
  std::string claim;
  Json inputs = Json::object();
  Json values = Json::object();
  Json margins = Json::object();
  bool pass = false;
  std::string outcome;  // "pass", "fail" or "hypothesis-fail"
  std::uint64_t seed = 0;
  std::string variant;
  double wall_clock_seconds = 0.0;
};

// Largest radius Gray's bound allows, sin⁻¹(1/√d), expressed in the given
// normalization (the as-printed form fills at half that radius).
double gray_bound(int d, HypersurfaceVariant variant);

// Resolves "auto" by exact comparison with the general formula.
HypersurfaceVariant canonical_variant(int n, int d);

ExperimentReport check_gray_degree_bound(const Submanifold& x, int num_points, int num_normals, std::uint64_t seed,
                                         HypersurfaceVariant variant);

ExperimentReport cot_sum_monotonicity(int num_trials, int dim, std::uint64_t seed);

// `symmetric_model`: require constant spectra with nonzero values in {±1}.
ExperimentReport constant_spectrum_scan(const Submanifold& x, int num_points, int num_normals, std::uint64_t seed,
                                        bool symmetric_model);

ExperimentReport leaf_distance_pattern(const Submanifold& x, std::uint64_t seed);

// R(r) = (π/n)(1 − (1 − 2s)ⁿ)/(s^{n−1} − ((n+1)/n)sⁿ), s = sin²r, as r ↑ π/4.
// The limit is π·2ⁿ/(n − 1).
ExperimentReport curve_ratio_limit(const std::vector<int>& ns);

ExperimentReport quadric_curve_bound(const Submanifold& curve, int num_points, int num_normals, std::uint64_t seed);

ExperimentReport quadric_focal(int n, int num_points, int num_normals, std::uint64_t seed);

ExperimentReport riccati_equivalence(int num_branches, std::uint64_t seed, double step = 1e-3);

ExperimentReport jacobi_consistency(const Submanifold& x, int num_radii, std::uint64_t seed);

// Symbolic variant arbitration plus Monte Carlo agreement at three radii below
// the sampled focal estimate.
ExperimentReport tube_volume_oracle(int n, int d, long samples, std::uint64_t seed, int workers);

struct SuiteOptions {
  std::string suite = "all";
  std::uint64_t seed = 7;
  long samples = 200000;  // Monte Carlo sample count per tube-volume case
  int workers = 1;
};

// Names accepted by SuiteOptions::suite besides "all".
const std::vector<std::string>& suite_names();

std::vector<ExperimentReport> run_suite(const SuiteOptions& opt);

}  // namespace fstube
