#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qstc/scheme.hpp"

namespace qstc {

/// One BER experiment: schemes to sweep, the SNR grid, and the stopping rule.
/// Results are bit-exact functions of this struct — worker count included —
/// because each trial's random stream is keyed by
/// (seed, scheme id, snr index, trial index) and early stopping is evaluated
/// only at fixed batch boundaries from exact integer counts.
struct SimConfig {
  std::vector<std::string> schemes;
  std::vector<double> snr_db_grid;
  std::int64_t min_trials = 1000;
  std::int64_t max_trials = 100000;
  std::int64_t target_bit_errors = 200;
  std::uint64_t seed = 1;
  int workers = 1;

  void validate() const;  // throws UsageError on violations
};

struct BerPoint {
  double snr_db = 0.0;
  std::int64_t trials = 0;
  std::int64_t bit_errors = 0;
  double ber = 0.0;
  double ci95_half_width = 0.0;
  bool zero_errors = false;  // flagged, not omitted, at very high SNR
};

struct SweepResult {
  std::vector<std::string> scheme_names;
  std::vector<std::vector<BerPoint>> points;  // [scheme][snr index]
  nlohmann::json metadata;
};

/// Number of trials processed between early-stop evaluations. Stopping at
/// fixed boundaries keeps results independent of the worker count; the batch
/// is large enough that per-batch thread spawns cost well under a percent.
inline constexpr std::int64_t kTrialBatch = 65536;

/// Per-trial diagnostic sink (JSON lines); invoked for the first few trials
/// of a point when attached.
struct TrialDump {
  std::int64_t limit = 0;
  std::function<void(const nlohmann::json&)> sink;
};

/// Runs one SNR point: trials continue until max_trials or
/// target_bit_errors, whichever comes first, but never fewer than
/// min_trials. snr_index must address config.snr_db_grid.
BerPoint run_point(const SimConfig& config, const Scheme& scheme, int snr_index,
                   const TrialDump* dump = nullptr);

/// Convenience overload; snr_db must be an entry of config.snr_db_grid.
BerPoint run_point(const SimConfig& config, const Scheme& scheme, double snr_db,
                   const TrialDump* dump = nullptr);

/// One BerPoint per (scheme, grid entry) plus reproduction metadata.
SweepResult run_sweep(const SimConfig& config, const TrialDump* dump = nullptr);

/// Least-squares BER decay in decades per 10 dB of SNR over the points with
/// snr in [snr_lo_db, snr_hi_db] and ber > 0. Positive for decreasing BER.
/// Throws std::invalid_argument when fewer than two usable points exist.
double diversity_slope(std::span<const BerPoint> points, double snr_lo_db,
                       double snr_hi_db);

/// CSV with columns scheme,snr_db,trials,bit_errors,ber,ci95 and a leading
/// "# manifest=<fingerprint>" comment line.
std::string sweep_csv(const SweepResult& result, const std::string& manifest_fingerprint);

nlohmann::json sweep_json(const SweepResult& result,
                          const std::string& manifest_fingerprint);

}  // namespace qstc
