#include "qstc/manifest.hpp"

#include <chrono>
#include <cstdio>

#include "qstc/fingerprint.hpp"

namespace qstc {

std::string hex64(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

RunManifest build_manifest(const SimConfig& config, const SweepResult& result) {
  nlohmann::json doc = {
      {"artifact", {{"name", kArtifactName}, {"version", kArtifactVersion}}},
      {"config",
       {{"schemes", config.schemes},
        {"snr_db_grid", config.snr_db_grid},
        {"min_trials", config.min_trials},
        {"max_trials", config.max_trials},
        {"target_bit_errors", config.target_bit_errors},
        {"seed", config.seed},
        {"workers", config.workers}}},
      {"run_metadata", result.metadata},
  };

  // The worker count cannot change any output byte (per-trial streams, exact
  // integer reductions), so it stays out of the fingerprint basis.
  nlohmann::json basis = doc;
  basis["config"].erase("workers");
  basis["run_metadata"].erase("workers");
  const std::string fingerprint = hex64(fnv1a64(basis.dump()));
  doc["fingerprint"] = fingerprint;

  const auto now = std::chrono::system_clock::now();
  doc["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();

  return {std::move(doc), fingerprint};
}

}  // namespace qstc
