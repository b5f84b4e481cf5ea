#pragma once

#include <string>
#include <vector>

#include "qstc/montecarlo.hpp"

namespace qstc {

/// Everything a sweep run needs: the simulation config plus output locations.
struct RunOptions {
  SimConfig sim;
  std::string out_dir = ".";
  bool verbose = false;
};

/// Flat key = value text format, '#' comments. Keys:
///   schemes  = stabilizer-gr4, differential-r05
///   snr_db   = 0:30:5        (or a comma list: 0, 5, 10)
///   min_trials, max_trials, target_bit_errors, seed, workers = integers
///   out      = results/
/// Unknown keys and malformed values raise UsageError with the line number.
RunOptions load_config_file(const std::string& path);

/// "a:b:step" (inclusive endpoints) or a comma-separated list.
std::vector<double> parse_snr_spec(const std::string& spec);

std::vector<std::string> parse_scheme_list(const std::string& spec);

}  // namespace qstc
