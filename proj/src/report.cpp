#include "fstube/report.hpp"

#include <cstdio>

namespace fstube {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json report_json(const ExperimentReport& rep, bool timing) {
  Json j;
  j["claim"] = rep.claim;
  j["inputs"] = rep.inputs;
  j["values"] = rep.values;
  j["pass"] = rep.pass;
  j["outcome"] = rep.outcome;
  j["margins"] = rep.margins;
  j["seed"] = rep.seed;
  j["variant"] = rep.variant.empty() ? Json(nullptr) : Json(rep.variant);
  j["version"] = kVersion;
  j["input_digest"] = fnv1a_hex(rep.claim + "|" + rep.inputs.dump() + "|" + std::to_string(rep.seed));
  if (timing) j["wall_clock_seconds"] = rep.wall_clock_seconds;
  return j;
}

Json volume_json(const VolumeReport& rep) {
  Json j;
  j["value"] = json_number(rep.value);
  j["method"] = rep.method;
  if (rep.variant) j["variant"] = *rep.variant;
  if (rep.stderr_value) j["stderr"] = json_number(*rep.stderr_value);
  if (rep.samples) j["N"] = *rep.samples;
  if (rep.seed) j["seed"] = *rep.seed;
  if (rep.failures) j["failures"] = *rep.failures;
  return j;
}

Json suite_json(const std::vector<ExperimentReport>& reports, std::uint64_t seed, int workers, long samples,
                const std::string& suite, bool timing) {
  Json j;
  j["claim"] = "verify-suite";
  j["inputs"] = {{"suite", suite}, {"samples", samples}, {"workers", workers}};
  bool all = true;
  Json list = Json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    list.push_back(report_json(r, timing));
  }
  j["pass"] = all;
  j["seed"] = seed;
  j["variant"] = "auto";
  j["version"] = kVersion;
  j["input_digest"] = fnv1a_hex(j["inputs"].dump() + "|" + std::to_string(seed));
  j["reports"] = std::move(list);
  return j;
}

}  // namespace fstube
