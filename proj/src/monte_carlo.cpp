#include "fstube/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fstube/distance.hpp"

namespace fstube {

namespace {
constexpr long kBlock = 4096;
}

std::vector<VolumeReport> mc_tube_volume(const Submanifold& x, const std::vector<double>& radii, long samples,
                                         std::uint64_t seed, int workers, const Tolerances& tol) {
  if (samples < 1000) throw std::invalid_argument("mc_tube_volume: need at least 1000 samples");
  if (workers < 1) throw std::invalid_argument("mc_tube_volume: workers must be >= 1");
  for (double r : radii)
    if (!(r >= 0.0 && r <= kDiameter)) throw std::invalid_argument("mc_tube_volume: radius outside [0, pi/2]");
  const int n = x.ambient_dim();
  const long blocks = (samples + kBlock - 1) / kBlock;
  // Per-block integer tallies; summing integers in block order is exact.
  std::vector<std::vector<long>> hits(blocks, std::vector<long>(radii.size(), 0));
  std::vector<long> failures(blocks, 0);
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    try {
      for (long b = next++; b < blocks; b = next++) {
        Rng rng = stream_rng(seed, static_cast<std::uint64_t>(b));
        const long count = std::min(kBlock, samples - b * kBlock);
        for (long i = 0; i < count; ++i) {
          const ProjectivePoint p = uniform_sample(n, rng);
          const DistanceResult d = distance_to_submanifold(p, x, tol);
          if (!d.ok) {
            ++failures[b];
            continue;
          }
          for (std::size_t j = 0; j < radii.size(); ++j)
            if (d.distance <= radii[j]) ++hits[b][j];
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = blocks;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  long failed = 0;
  for (long f : failures) failed += f;
  if (failed * 1000 > samples)
    throw MonteCarloError("mc_tube_volume: " + std::to_string(failed) + " of " + std::to_string(samples) +
                          " distance solves failed to certify (limit 0.1%)");
  // Uncertified points are dropped from numerator and denominator alike.
  const long used = samples - failed;
  const double total = projective_volume(n);
  std::vector<VolumeReport> out;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    long h = 0;
    for (long b = 0; b < blocks; ++b) h += hits[b][j];
    const double frac = static_cast<double>(h) / used;
    VolumeReport rep;
    rep.value = total * frac;
    rep.method = "monte-carlo";
    rep.stderr_value = total * std::sqrt(frac * (1.0 - frac) / used);
    rep.samples = samples;
    rep.seed = seed;
    rep.failures = failed;
    out.push_back(rep);
  }
  return out;
}

}  // namespace fstube
