#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qstc/rng.hpp"

namespace qstc {

/// One simulated transmission scheme at a fixed rate. Implementations are
/// immutable after construction and safe to share across Monte Carlo workers;
/// every trial draws all of its randomness from the supplied stream.
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual const std::string& name() const = 0;
  virtual int bits_per_interval() const = 0;
  double rate() const { return bits_per_interval() / 4.0; }

  /// Runs one coherence interval (payload draw, channel, noise, decode) and
  /// returns the number of bit errors. When `diag` is non-null, fills a
  /// JSON record with per-trial decision details.
  virtual int run_interval(double sigma_n_sq, Rng& rng,
                           nlohmann::json* diag = nullptr) const = 0;

  /// Rate, alphabet/codebook fingerprints, and any scheme-specific notes.
  virtual nlohmann::json metadata() const = 0;
};

/// Known scheme names:
///   stabilizer-gr4, stabilizer-gr8, alamouti-r05, alamouti-r1,
///   differential-r05, differential-r1,
/// plus the perfect-CSI reference variants alamouti-r05-perfect and
/// alamouti-r1-perfect. Unknown names raise LookupError.
std::unique_ptr<Scheme> make_scheme(const std::string& name);

const std::vector<std::string>& scheme_names();

/// Stable stream id used in the per-trial RNG key. Registered names use
/// fixed small integers; anything else hashes its name.
std::uint32_t scheme_stream_id(const std::string& name);

}  // namespace qstc
