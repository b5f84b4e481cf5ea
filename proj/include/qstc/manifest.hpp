#pragma once

#include <string>

#include <json.hpp>

#include "qstc/montecarlo.hpp"

namespace qstc {

inline constexpr const char* kArtifactName = "qstc";
inline constexpr const char* kArtifactVersion = "1.0.0";

/// Reproduction record written next to every result set: the full config
/// echo, per-scheme metadata and a fingerprint over everything that
/// determines the outputs. The fingerprint excludes the timestamp, so a
/// rerun of the same config produces the same fingerprint and byte-identical
/// CSV.
struct RunManifest {
  nlohmann::json document;
  std::string fingerprint;
};

RunManifest build_manifest(const SimConfig& config, const SweepResult& result);

}  // namespace qstc
