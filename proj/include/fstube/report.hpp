#pragma once

#include <string>
#include <vector>

#include "fstube/monte_carlo.hpp"
#include "fstube/verify.hpp"

namespace fstube {

inline constexpr const char* kVersion = "0.1.0";

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

// {claim, inputs, values, pass, outcome, margins, seed, variant, version, input_digest}
// plus wall_clock_seconds when `timing` is set. Timing is off by default so
// that reports are byte-identical across runs.
Json report_json(const ExperimentReport& rep, bool timing = false);

Json volume_json(const VolumeReport& rep);

// Top-level document for a suite run.
Json suite_json(const std::vector<ExperimentReport>& reports, std::uint64_t seed, int workers, long samples,
                const std::string& suite, bool timing = false);

}  // namespace fstube
