#include "qstc/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "qstc/channel.hpp"
#include "qstc/errors.hpp"

namespace qstc {

namespace {

constexpr const char* kSnrDefinition =
    "SNR = 1/sigma_n_sq (unit-power transmit columns, E|H_ij|^2 = 1); "
    "snr_db = -10 log10(sigma_n_sq)";

std::int64_t count_batch_errors(const Scheme& scheme, double sigma_n_sq,
                                std::uint64_t seed, std::uint32_t scheme_id,
                                std::uint32_t snr_index, std::int64_t first_trial,
                                std::int64_t count) {
  std::int64_t errors = 0;
  for (std::int64_t t = 0; t < count; ++t) {
    Rng rng = Rng::for_trial(seed, scheme_id, snr_index,
                             static_cast<std::uint64_t>(first_trial + t));
    errors += scheme.run_interval(sigma_n_sq, rng);
  }
  return errors;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void SimConfig::validate() const {
  if (schemes.empty()) throw UsageError("config: no schemes selected");
  for (const std::string& s : schemes)
    make_scheme(s);  // raises LookupError on unknown names
  if (snr_db_grid.empty()) throw UsageError("config: empty snr grid");
  for (std::size_t i = 1; i < snr_db_grid.size(); ++i)
    if (!(snr_db_grid[i] > snr_db_grid[i - 1]))
      throw UsageError("config: snr grid must be strictly increasing");
  if (min_trials < 1) throw UsageError("config: min_trials must be positive");
  if (min_trials > max_trials)
    throw UsageError("config: min_trials exceeds max_trials");
  if (target_bit_errors < 1)
    throw UsageError("config: target_bit_errors must be positive");
  if (workers < 1) throw UsageError("config: workers must be positive");
}

BerPoint run_point(const SimConfig& config, const Scheme& scheme, int snr_index,
                   const TrialDump* dump) {
  if (snr_index < 0 || snr_index >= static_cast<int>(config.snr_db_grid.size()))
    throw std::invalid_argument("run_point: snr_index out of range");
  const double snr_db = config.snr_db_grid[snr_index];
  const double sigma_n_sq = snr_db_to_sigma_sq(snr_db);
  const std::uint32_t scheme_id = scheme_stream_id(scheme.name());
  const std::uint32_t snr_key = static_cast<std::uint32_t>(snr_index);

  std::int64_t trials = 0;
  std::int64_t errors = 0;
  std::int64_t dumped = 0;

  while (true) {
    const std::int64_t batch = std::min(kTrialBatch, config.max_trials - trials);

    // Diagnostic dumps replay the leading trials of the batch serially; the
    // streams are per-trial, so the counts are unaffected.
    if (dump && dumped < dump->limit) {
      const std::int64_t n = std::min(batch, dump->limit - dumped);
      for (std::int64_t t = 0; t < n; ++t) {
        Rng rng = Rng::for_trial(config.seed, scheme_id, snr_key,
                                 static_cast<std::uint64_t>(trials + t));
        nlohmann::json record;
        scheme.run_interval(sigma_n_sq, rng, &record);
        record["scheme"] = scheme.name();
        record["snr_db"] = snr_db;
        record["trial"] = trials + t;
        dump->sink(record);
      }
      dumped += n;
    }

    if (config.workers <= 1 || batch < 2 * config.workers) {
      errors += count_batch_errors(scheme, sigma_n_sq, config.seed, scheme_id,
                                   snr_key, trials, batch);
    } else {
      const int n_workers = config.workers;
      std::vector<std::int64_t> partial(n_workers, 0);
      std::vector<std::thread> threads;
      threads.reserve(n_workers);
      for (int w = 0; w < n_workers; ++w) {
        const std::int64_t begin = batch * w / n_workers;
        const std::int64_t end = batch * (w + 1) / n_workers;
        threads.emplace_back([&, w, begin, end] {
          partial[w] = count_batch_errors(scheme, sigma_n_sq, config.seed,
                                          scheme_id, snr_key, trials + begin,
                                          end - begin);
        });
      }
      for (std::thread& t : threads) t.join();
      for (std::int64_t p : partial) errors += p;  // integer reduction: exact
    }
    trials += batch;

    if (trials >= config.min_trials &&
        (errors >= config.target_bit_errors || trials >= config.max_trials))
      break;
  }

  BerPoint point;
  point.snr_db = snr_db;
  point.trials = trials;
  point.bit_errors = errors;
  const double total_bits =
      static_cast<double>(trials) * scheme.bits_per_interval();
  point.ber = static_cast<double>(errors) / total_bits;
  point.ci95_half_width =
      1.96 * std::sqrt(std::max(point.ber * (1.0 - point.ber), 0.0) / total_bits);
  point.zero_errors = errors == 0;
  return point;
}

BerPoint run_point(const SimConfig& config, const Scheme& scheme, double snr_db,
                   const TrialDump* dump) {
  for (std::size_t i = 0; i < config.snr_db_grid.size(); ++i)
    if (config.snr_db_grid[i] == snr_db)
      return run_point(config, scheme, static_cast<int>(i), dump);
  throw std::invalid_argument("run_point: snr_db not present in the grid");
}

SweepResult run_sweep(const SimConfig& config, const TrialDump* dump) {
  config.validate();
  SweepResult result;
  nlohmann::json scheme_meta = nlohmann::json::array();

  for (const std::string& name : config.schemes) {
    const std::unique_ptr<Scheme> scheme = make_scheme(name);
    std::vector<BerPoint> points;
    points.reserve(config.snr_db_grid.size());
    for (int i = 0; i < static_cast<int>(config.snr_db_grid.size()); ++i) {
      const auto start = std::chrono::steady_clock::now();
      points.push_back(run_point(config, *scheme, i, dump));
      const BerPoint& p = points.back();
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      std::fprintf(stderr, "%s snr_db=%g trials=%lld errors=%lld ber=%.3g (%.1f s)\n",
                   name.c_str(), p.snr_db, static_cast<long long>(p.trials),
                   static_cast<long long>(p.bit_errors), p.ber, elapsed);
    }
    result.scheme_names.push_back(name);
    result.points.push_back(std::move(points));

    nlohmann::json meta = scheme->metadata();
    meta["scheme"] = name;
    meta["stream_id"] = scheme_stream_id(name);
    scheme_meta.push_back(std::move(meta));
  }

  result.metadata = {
      {"schemes", std::move(scheme_meta)},
      {"snr_db_grid", config.snr_db_grid},
      {"snr_definition", kSnrDefinition},
      {"seed", config.seed},
      {"workers", config.workers},
      {"min_trials", config.min_trials},
      {"max_trials", config.max_trials},
      {"target_bit_errors", config.target_bit_errors},
      {"rng_contract",
       "counter-based stream per trial keyed by (seed, scheme id, snr index, "
       "trial index); results independent of scheduling and worker count"},
      {"early_stop_note",
       "stopping on target_bit_errors gives a mild negative bias in the BER "
       "estimate; trials counted are all trials run"},
  };
  return result;
}

double diversity_slope(std::span<const BerPoint> points, double snr_lo_db,
                       double snr_hi_db) {
  std::vector<double> x, y;
  for (const BerPoint& p : points) {
    if (p.snr_db < snr_lo_db || p.snr_db > snr_hi_db || p.ber <= 0.0) continue;
    x.push_back(p.snr_db / 10.0);
    y.push_back(std::log10(p.ber));
  }
  if (x.size() < 2)
    throw std::invalid_argument(
        "diversity_slope: need at least two points with ber > 0 in the window");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw std::invalid_argument("diversity_slope: degenerate snr window");
  return -(n * sxy - sx * sy) / denom;
}

std::string sweep_csv(const SweepResult& result,
                      const std::string& manifest_fingerprint) {
  std::string out = "# manifest=" + manifest_fingerprint + "\n";
  out += "scheme,snr_db,trials,bit_errors,ber,ci95\n";
  for (std::size_t s = 0; s < result.scheme_names.size(); ++s) {
    for (const BerPoint& p : result.points[s]) {
      out += result.scheme_names[s];
      out += ',';
      out += format_double(p.snr_db);
      out += ',';
      out += std::to_string(p.trials);
      out += ',';
      out += std::to_string(p.bit_errors);
      out += ',';
      out += format_double(p.ber);
      out += ',';
      out += format_double(p.ci95_half_width);
      out += '\n';
    }
  }
  return out;
}

nlohmann::json sweep_json(const SweepResult& result,
                          const std::string& manifest_fingerprint) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t s = 0; s < result.scheme_names.size(); ++s) {
    for (const BerPoint& p : result.points[s]) {
      points.push_back({{"scheme", result.scheme_names[s]},
                        {"snr_db", p.snr_db},
                        {"trials", p.trials},
                        {"bit_errors", p.bit_errors},
                        {"ber", p.ber},
                        {"ci95", p.ci95_half_width},
                        {"zero_errors", p.zero_errors}});
    }
  }
  return {{"manifest", manifest_fingerprint},
          {"metadata", result.metadata},
          {"points", std::move(points)}};
}

}  // namespace qstc
