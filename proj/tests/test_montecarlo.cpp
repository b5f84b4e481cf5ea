#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>

#include "qstc/channel.hpp"
#include "qstc/decoder.hpp"
#include "qstc/errors.hpp"
#include "qstc/manifest.hpp"
#include "qstc/montecarlo.hpp"
#include "qstc/stabilizer.hpp"

using namespace qstc;

namespace {

SimConfig small_config(const std::string& scheme) {
  SimConfig cfg;
  cfg.schemes = {scheme};
  cfg.snr_db_grid = {0.0, 10.0, 20.0};
  cfg.min_trials = 2000;
  cfg.max_trials = 20000;
  cfg.target_bit_errors = 1000000;  // effectively disabled
  cfg.seed = 42;
  cfg.workers = 1;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SimConfig cfg = small_config("stabilizer-gr4");
  CHECK_NOTHROW(cfg.validate());

  SimConfig bad = cfg;
  bad.schemes = {"stabilizer-gr5"};
  CHECK_THROWS_AS(bad.validate(), LookupError);

  bad = cfg;
  bad.snr_db_grid = {10.0, 10.0};
  CHECK_THROWS_AS(bad.validate(), UsageError);

  bad = cfg;
  bad.min_trials = 100;
  bad.max_trials = 50;
  CHECK_THROWS_AS(bad.validate(), UsageError);

  bad = cfg;
  bad.workers = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);

  bad = cfg;
  bad.snr_db_grid.clear();
  CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("noiseless points decode without errors") {
  SimConfig cfg = small_config("stabilizer-gr4");
  cfg.snr_db_grid = {std::numeric_limits<double>::infinity()};
  cfg.min_trials = 10000;
  cfg.max_trials = 10000;
  const auto scheme = make_scheme("stabilizer-gr4");
  const BerPoint point = run_point(cfg, *scheme, 0);
  CHECK(point.trials == 10000);
  CHECK(point.bit_errors == 0);
  CHECK(point.ber == 0.0);
  CHECK(point.zero_errors);
}

TEST_CASE("same config twice gives bit-identical points") {
  const SimConfig cfg = small_config("differential-r05");
  const auto scheme = make_scheme("differential-r05");
  const BerPoint a = run_point(cfg, *scheme, 1);
  const BerPoint b = run_point(cfg, *scheme, 1);
  CHECK(a.trials == b.trials);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.ber == b.ber);
  CHECK(a.ci95_half_width == b.ci95_half_width);
}

TEST_CASE("worker count does not change results") {
  SimConfig cfg = small_config("stabilizer-gr4");
  cfg.max_trials = 12000;
  cfg.min_trials = 12000;
  const auto scheme = make_scheme("stabilizer-gr4");

  cfg.workers = 1;
  const BerPoint serial = run_point(cfg, *scheme, 1);
  cfg.workers = 4;
  const BerPoint parallel = run_point(cfg, *scheme, 1);
  CHECK(serial.trials == parallel.trials);
  CHECK(serial.bit_errors == parallel.bit_errors);
  CHECK(serial.ber == parallel.ber);
}

TEST_CASE("early stopping respects min_trials and batch boundaries") {
  SimConfig cfg = small_config("alamouti-r05");
  cfg.snr_db_grid = {0.0};
  cfg.min_trials = 5000;
  cfg.max_trials = 1000000;
  cfg.target_bit_errors = 10;  // reached almost immediately at 0 dB
  const auto scheme = make_scheme("alamouti-r05");
  const BerPoint point = run_point(cfg, *scheme, 0);
  CHECK(point.trials >= 5000);
  CHECK(point.trials % kTrialBatch == 0);
  CHECK(point.bit_errors >= 10);
  CHECK(point.trials < cfg.max_trials);
}

TEST_CASE("sweep is monotone within confidence bands") {
  SimConfig cfg = small_config("stabilizer-gr4");
  cfg.snr_db_grid = {0.0, 10.0, 20.0};
  cfg.min_trials = 30000;
  cfg.max_trials = 30000;
  const SweepResult sweep = run_sweep(cfg);
  REQUIRE(sweep.points.size() == 1);
  const std::vector<BerPoint>& pts = sweep.points[0];
  REQUIRE(pts.size() == 3);
  for (std::size_t i = 1; i < pts.size(); ++i)
    CHECK(pts[i].ber <= pts[i - 1].ber + pts[i].ci95_half_width +
                            pts[i - 1].ci95_half_width);
}

TEST_CASE("sweep metadata records the experiment description") {
  SimConfig cfg = small_config("stabilizer-gr4");
  cfg.min_trials = cfg.max_trials = 4096;
  const SweepResult sweep = run_sweep(cfg);
  const nlohmann::json& meta = sweep.metadata;
  CHECK(meta.contains("snr_definition"));
  CHECK(meta["seed"] == 42);
  CHECK(meta["schemes"][0]["scheme"] == "stabilizer-gr4");
  CHECK(meta["schemes"][0].contains("coherence"));
  CHECK(meta["schemes"][0].contains("codebook_fingerprint"));
  CHECK(meta.contains("rng_contract"));
}

TEST_CASE("diversity slope on synthetic power laws") {
  std::vector<BerPoint> points;
  for (double snr_db : {10.0, 15.0, 20.0, 25.0, 30.0}) {
    BerPoint p;
    p.snr_db = snr_db;
    p.ber = 3.0 * std::pow(10.0, -2.0 * snr_db / 10.0);  // ber = K snr^-2
    points.push_back(p);
  }
  CHECK(diversity_slope(points, 10.0, 30.0) == doctest::Approx(2.0).epsilon(1e-6));

  // Window filtering and failure cases.
  CHECK(diversity_slope(points, 15.0, 25.0) == doctest::Approx(2.0).epsilon(1e-6));
  std::vector<BerPoint> single(points.begin(), points.begin() + 1);
  CHECK_THROWS_AS(diversity_slope(single, 0.0, 40.0), std::invalid_argument);
  for (BerPoint& p : points) p.ber = 0.0;
  CHECK_THROWS_AS(diversity_slope(points, 0.0, 40.0), std::invalid_argument);
}

TEST_CASE("csv shape and manifest embedding") {
  SimConfig cfg = small_config("alamouti-r1");
  cfg.min_trials = cfg.max_trials = 4096;
  const SweepResult sweep = run_sweep(cfg);
  const RunManifest manifest = build_manifest(cfg, sweep);
  const std::string csv = sweep_csv(sweep, manifest.fingerprint);

  CHECK(csv.starts_with("# manifest=" + manifest.fingerprint + "\n"));
  CHECK(csv.find("scheme,snr_db,trials,bit_errors,ber,ci95\n") != std::string::npos);
  int rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 2 + 3);  // comment + header + one row per grid point

  const nlohmann::json json = sweep_json(sweep, manifest.fingerprint);
  CHECK(json["manifest"] == manifest.fingerprint);
  CHECK(json["points"].size() == 3);
  CHECK(json["points"][0].contains("zero_errors"));

  // The fingerprint is stable across rebuilds of the same run...
  const RunManifest again = build_manifest(cfg, run_sweep(cfg));
  CHECK(again.fingerprint == manifest.fingerprint);
  // ...and changes when the config changes.
  SimConfig other = cfg;
  other.seed = 43;
  const RunManifest changed = build_manifest(other, run_sweep(other));
  CHECK(changed.fingerprint != manifest.fingerprint);
}

TEST_CASE("fast trial path matches an independently coded reference pipeline") {
  // The production scheme fuses encode/transmit/reduce/decide into a
  // stack-only loop; the reference below rebuilds every trial from the
  // module-level operations on the same per-trial stream.
  const auto scheme = make_scheme("stabilizer-gr4");
  const StabilizerCode code = build_code();
  const Constellation gr4 = embedded("gr4");
  const double sigma = snr_db_to_sigma_sq(10.0);
  const std::uint32_t id = scheme_stream_id("stabilizer-gr4");
  const int trials = 100000;

  std::int64_t fast_errors = 0, ref_errors = 0, mismatched_trials = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng_fast = Rng::for_trial(99, id, 0, t);
    const int fast = scheme->run_interval(sigma, rng_fast);

    Rng rng_ref = Rng::for_trial(99, id, 0, t);
    const int sent = static_cast<int>(rng_ref.uniform_index(gr4.size()));
    const CMat codeword = encode_matrix(code, gr4.points[sent]);
    const ChannelRealization ch = sample_channel(rng_ref);
    const CMat y = vec(transmit(codeword, ch.H, sigma, rng_ref));
    const int decoded = ml_decide(reduce(y, code), gr4, sigma);
    const int ref = std::popcount(static_cast<unsigned>(sent ^ decoded) & 3u);

    fast_errors += fast;
    ref_errors += ref;
    mismatched_trials += fast != ref;
  }
  CHECK(mismatched_trials == 0);

  // The spec-form comparison: BER estimates within 3 combined standard errors.
  const double bits = 2.0 * trials;
  const double ber_fast = fast_errors / bits;
  const double ber_ref = ref_errors / bits;
  const double se_fast = std::sqrt(ber_fast * (1 - ber_fast) / bits);
  const double se_ref = std::sqrt(ber_ref * (1 - ber_ref) / bits);
  CHECK(std::abs(ber_fast - ber_ref) <=
        3.0 * std::sqrt(se_fast * se_fast + se_ref * se_ref));
  CHECK(ber_fast > 0.0);  // 10 dB produces errors; the check is not vacuous
}

TEST_CASE("fast decider agrees with ml_decide on random inputs") {
  const StabilizerCode code = build_code();
  for (const char* name : {"gr4", "gr8"}) {
    const Constellation c = embedded(name);
    const FastMlDecider fast(code, c);
    Rng rng(2024);
    for (int rep = 0; rep < 20000; ++rep) {
      std::array<cxd, 8> y;
      CMat y_mat(8, 1);
      for (int i = 0; i < 8; ++i) {
        y[i] = rng.complex_normal(1.0);
        y_mat(i, 0) = y[i];
      }
      CHECK(fast.decide(y) == ml_decide(reduce(y_mat, code), c, 1.0));
    }
  }
}

TEST_CASE("per-trial rng streams are uncorrelated") {
  // Adjacent-stream smoke test: first draws of consecutive trial streams.
  const int n = 100000;
  double sum_x = 0, sum_y = 0, sum_xy = 0, sum_xx = 0, sum_yy = 0;
  for (int t = 0; t < n; ++t) {
    Rng a = Rng::for_trial(7, 1, 2, t);
    Rng b = Rng::for_trial(7, 1, 2, t + 1);
    const double x = a.uniform(), y = b.uniform();
    sum_x += x;
    sum_y += y;
    sum_xy += x * y;
    sum_xx += x * x;
    sum_yy += y * y;
  }
  const double mean_x = sum_x / n, mean_y = sum_y / n;
  const double cov = sum_xy / n - mean_x * mean_y;
  const double var_x = sum_xx / n - mean_x * mean_x;
  const double var_y = sum_yy / n - mean_y * mean_y;
  CHECK(std::abs(cov / std::sqrt(var_x * var_y)) < 0.02);
  CHECK(mean_x == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("scheme stream ids are stable and distinct") {
  CHECK(scheme_stream_id("stabilizer-gr4") == 0);
  CHECK(scheme_stream_id("stabilizer-gr8") == 1);
  CHECK(scheme_stream_id("alamouti-r05") != scheme_stream_id("alamouti-r1"));
  // Unregistered names still get a deterministic id.
  CHECK(scheme_stream_id("custom") == scheme_stream_id("custom"));
}

TEST_CASE("unknown scheme raises lookup error") {
  CHECK_THROWS_AS(make_scheme("nope"), LookupError);
}

TEST_CASE("scheme rates match their names") {
  CHECK(make_scheme("stabilizer-gr4")->bits_per_interval() == 2);
  CHECK(make_scheme("stabilizer-gr8")->bits_per_interval() == 3);
  CHECK(make_scheme("alamouti-r05")->bits_per_interval() == 2);
  CHECK(make_scheme("alamouti-r1")->bits_per_interval() == 4);
  CHECK(make_scheme("differential-r05")->bits_per_interval() == 2);
  CHECK(make_scheme("differential-r1")->bits_per_interval() == 4);
  CHECK(make_scheme("alamouti-r05")->rate() == doctest::Approx(0.5));
  CHECK(make_scheme("differential-r1")->rate() == doctest::Approx(1.0));
}
