// Command-line surface: sweep (Monte Carlo BER experiments), inspect
// (codebooks, packings, commutation structure), selftest (algebraic and
// oracle invariants). Exit codes: 0 ok, 1 runtime failure, 2 usage/lookup.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qstc/baselines.hpp"
#include "qstc/channel.hpp"
#include "qstc/config.hpp"
#include "qstc/constellation.hpp"
#include "qstc/decoder.hpp"
#include "qstc/errors.hpp"
#include "qstc/manifest.hpp"
#include "qstc/montecarlo.hpp"
#include "qstc/stabilizer.hpp"

namespace {

using namespace qstc;

struct CliArgs {
  std::string config_path;
  std::vector<std::string> schemes;
  std::string snr_spec;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir;
  bool verbose = false;
  std::string inspect_target;
  std::string selftest_constellation;
};

void print_matrix(std::ostream& out, const CMat& m, const std::string& indent) {
  out.precision(6);
  for (int i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (int j = 0; j < m.cols(); ++j) {
      const cxd v = m(i, j);
      out << (j ? ", " : " ") << v.real();
      if (v.imag() != 0.0) out << (v.imag() > 0 ? "+" : "") << v.imag() << "j";
    }
    out << " ]\n";
  }
}

int cmd_sweep(const CliArgs& args) {
  RunOptions options;
  if (!args.config_path.empty()) options = load_config_file(args.config_path);

  // Flag precedence: command line > config file > defaults.
  if (!args.schemes.empty()) options.sim.schemes = args.schemes;
  if (!args.snr_spec.empty()) options.sim.snr_db_grid = parse_snr_spec(args.snr_spec);
  if (args.trials) {
    options.sim.max_trials = *args.trials;
    options.sim.min_trials = std::min(options.sim.min_trials, *args.trials);
  }
  if (args.seed) options.sim.seed = *args.seed;
  if (args.workers) options.sim.workers = *args.workers;
  if (!args.out_dir.empty()) options.out_dir = args.out_dir;
  options.verbose = options.verbose || args.verbose;
  options.sim.validate();

  std::filesystem::create_directories(options.out_dir);
  const std::filesystem::path out(options.out_dir);

  std::ofstream diag_stream;
  TrialDump dump;
  const TrialDump* dump_ptr = nullptr;
  if (options.verbose) {
    diag_stream.open(out / "diagnostics.jsonl");
    dump.limit = 50;
    dump.sink = [&diag_stream](const nlohmann::json& record) {
      diag_stream << record.dump() << "\n";
    };
    dump_ptr = &dump;
  }

  const auto start = std::chrono::steady_clock::now();
  SweepResult result = run_sweep(options.sim, dump_ptr);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const RunManifest manifest = build_manifest(options.sim, result);

  std::ofstream csv(out / "results.csv", std::ios::binary);
  csv << sweep_csv(result, manifest.fingerprint);
  std::ofstream json_out(out / "results.json", std::ios::binary);
  json_out << sweep_json(result, manifest.fingerprint).dump(2) << "\n";
  std::ofstream manifest_out(out / "manifest.json", std::ios::binary);
  manifest_out << manifest.document.dump(2) << "\n";

  std::cerr << "sweep: " << result.scheme_names.size() << " scheme(s) x "
            << options.sim.snr_db_grid.size() << " snr point(s) in " << elapsed
            << " s; results in " << out.string() << " (manifest "
            << manifest.fingerprint << ")\n";
  return 0;
}

void inspect_constellation(std::ostream& out, const Constellation& c) {
  out << "constellation " << c.name << ": N=" << c.size()
      << ", bits/symbol=" << c.label_bits()
      << ", rate=" << c.label_bits() / 4.0 << " bits/use\n";
  out << "  coherence    = " << coherence(c) << "\n";
  out << "  welch bound  = " << welch_bound(c.size(), 2) << "\n";
  out << "  min margin   = " << pairing_criterion(c, 0.0)
      << "  (4(1-coherence^2) = " << 4.0 * (1.0 - std::pow(coherence(c), 2))
      << ")\n";
  out << "  points (one per line):\n";
  for (int i = 0; i < c.size(); ++i) {
    const CMat& p = c.points[i];
    out << "    " << i << ": [" << p(0, 0).real() << (p(0, 0).imag() < 0 ? "" : "+")
        << p(0, 0).imag() << "j, " << p(1, 0).real()
        << (p(1, 0).imag() < 0 ? "" : "+") << p(1, 0).imag() << "j]\n";
  }
}

void inspect_stabilizer(std::ostream& out) {
  const StabilizerCode code = build_code();
  out << "stabilizer code: generators";
  for (const PauliOp& g : code.generators) out << " " << g.str();
  out << "; errors";
  for (const PauliOp& e : code.errors) out << " " << e.str();
  out << "\n  commutation (C=commute, A=anticommute):\n";
  out << "           S0=" << code.generators[0].str()
      << "  S1=" << code.generators[1].str() << "\n";
  for (std::size_t k = 0; k < code.errors.size(); ++k) {
    out << "    E" << k << "=" << code.errors[k].str() << ":";
    for (int bit : code.signatures[k]) out << "   " << (bit ? 'A' : 'C');
    out << "\n";
  }
  out << "  basis columns (norm^2 = 4 each):\n";
  print_matrix(out, code.basis, "    ");
  const double proj_err =
      max_abs_diff(code.projectors[0] + code.projectors[1] + code.projectors[2] +
                       code.projectors[3],
                   CMat::identity(8));
  out << "  sum of projectors vs identity: max |diff| = " << proj_err << "\n";
}

int cmd_inspect(const CliArgs& args) {
  const std::string& target = args.inspect_target;
  std::ostream& out = std::cout;
  if (target == "stabilizer" || target == "stabilizer-gr4" ||
      target == "stabilizer-gr8") {
    inspect_stabilizer(out);
    if (target != "stabilizer")
      inspect_constellation(out, embedded(target == "stabilizer-gr4" ? "gr4" : "gr8"));
    return 0;
  }
  if (target == "gr4" || target == "gr8") {
    inspect_constellation(out, embedded(target));
    return 0;
  }
  if (target.starts_with("alamouti")) {
    const std::unique_ptr<Scheme> scheme = make_scheme(target);  // validates name
    const AlamoutiScheme alamouti =
        make_alamouti(scheme->bits_per_interval() == 2 ? 0.5 : 1.0,
                      target.ends_with("perfect"));
    out << "scheme " << target << ": rate " << scheme->rate() << " bits/use, "
        << (alamouti.bits_per_interval == 2 ? "BPSK" : "QPSK") << " symbols, "
        << (alamouti.perfect_csi ? "perfect" : "pilot-estimated") << " CSI\n";
    out << "  pilot matrix (uses 1-2):\n";
    print_matrix(out, alamouti.pilot, "    ");
    return 0;
  }
  if (target.starts_with("differential")) {
    const std::unique_ptr<Scheme> scheme = make_scheme(target);
    const DifferentialScheme diff =
        make_differential(scheme->bits_per_interval() == 2 ? 0.5 : 1.0);
    out << "scheme " << target << ": rate " << scheme->rate()
        << " bits/use, codebook of " << diff.codebook.size()
        << " unitary matrices, reference block I2\n";
    double min_dist = 1e300;
    for (std::size_t i = 0; i < diff.codebook.size(); ++i)
      for (std::size_t j = i + 1; j < diff.codebook.size(); ++j)
        min_dist = std::min(min_dist,
                            (diff.codebook[i] - diff.codebook[j]).frobenius_norm_sq());
    out << "  min pairwise ||U_i - U_j||_F^2 = " << min_dist << "\n";
    for (std::size_t i = 0; i < diff.codebook.size(); ++i) {
      out << "  U" << i << ":\n";
      print_matrix(out, diff.codebook[i], "    ");
    }
    return 0;
  }
  throw LookupError("unknown inspect target \"" + target + "\"");
}

struct SelftestGroup {
  std::string name;
  bool passed;
  std::string detail;
};

int cmd_selftest(const CliArgs& args) {
  std::vector<SelftestGroup> groups;
  const auto run_group = [&groups](const std::string& name, auto&& body) {
    try {
      body();
      groups.push_back({name, true, ""});
    } catch (const std::exception& e) {
      groups.push_back({name, false, e.what()});
    }
  };

  run_group("pauli-commutation", [] {
    const StabilizerCode code = build_code();
    const std::vector<std::vector<int>> expected = {
        {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (std::size_t k = 0; k < code.errors.size(); ++k)
      if (signature(code.errors[k], code.generators) != expected[k])
        throw std::runtime_error("signature table mismatch at error " +
                                 std::to_string(k));
    if (!(code.generators[0] * code.generators[1] ==
          code.generators[1] * code.generators[0]))
      throw std::runtime_error("generators do not commute");
  });

  run_group("projectors", [] {
    const StabilizerCode code = build_code();
    CMat sum(8, 8);
    for (int k = 0; k < 4; ++k) {
      const CMat& p = code.projectors[k];
      if (max_abs_diff(p * p, p) > 1e-10)
        throw std::runtime_error("P" + std::to_string(k) + " not idempotent");
      if (max_abs_diff(p.adjoint(), p) > 1e-10)
        throw std::runtime_error("P" + std::to_string(k) + " not Hermitian");
      if (max_abs_diff(p * code.error_matrices[k],
                       code.error_matrices[k] * code.projectors[0]) > 1e-10)
        throw std::runtime_error("P_k E_k != E_k P_0 at k=" + std::to_string(k));
      sum += p;
    }
    if (max_abs_diff(sum, CMat::identity(8)) > 1e-10)
      throw std::runtime_error("projectors do not sum to identity");
  });

  run_group("codespace", [] {
    const StabilizerCode code = build_code();
    if (max_abs_diff(code.basis.adjoint() * code.basis,
                     CMat::identity(2) * cxd{4.0, 0.0}) > 1e-10)
      throw std::runtime_error("C*C != 4I");
    Rng rng(0x5e1f7e57);
    for (int i = 0; i < 100; ++i) {
      CMat s = CMat::column({rng.complex_normal(1.0), rng.complex_normal(1.0)});
      s *= cxd{1.0 / std::sqrt(s.frobenius_norm_sq()), 0.0};
      if (std::abs(encode(code, s).frobenius_norm_sq() - 4.0) > 1e-9)
        throw std::runtime_error("||Cs||^2 != 4");
    }
  });

  run_group("channel-decomposition", [] {
    Rng rng(0xc4a22e1);
    for (int i = 0; i < 1000; ++i) {
      const ChannelRealization ch = sample_channel(rng);
      if (max_abs_diff(reconstruct(ch.c), ch.H) > 1e-12)
        throw std::runtime_error("reconstruct(decompose(H)) != H");
    }
  });

  run_group("packings", [&args] {
    for (const char* name : {"gr4", "gr8"}) {
      const Constellation c = embedded(name);
      c.validate();
      if (coherence(c) < welch_bound(c.size(), 2) - 1e-9)
        throw std::runtime_error(std::string(name) + " beats the Welch bound");
    }
    if (std::abs(coherence(embedded("gr4")) - std::sqrt(1.0 / 3.0)) > 1e-6)
      throw std::runtime_error("gr4 does not meet the Welch bound");
    if (!args.selftest_constellation.empty()) {
      std::ifstream in(args.selftest_constellation);
      if (!in)
        throw std::runtime_error("cannot open " + args.selftest_constellation);
      load_constellation(in, "file").validate();
    }
  });

  run_group("oracle-agreement", [] {
    const StabilizerCode code = build_code();
    const Constellation gr4 = embedded("gr4");
    const double sigma = snr_db_to_sigma_sq(10.0);
    for (int trial = 0; trial < 1000; ++trial) {
      Rng rng = Rng::for_trial(0x0acc0de, 99, 0, trial);
      const int sent = static_cast<int>(rng.uniform_index(gr4.size()));
      const CMat t = encode_matrix(code, gr4.points[sent]);
      const ChannelRealization ch = sample_channel(rng);
      const CMat y = vec(transmit(t, ch.H, sigma, rng));
      const SufficientStats stats = reduce(y, code);
      const int a = ml_decide(stats, gr4, sigma);
      const int b = bruteforce_ml(y, code, gr4, sigma);
      const int c = fidelity_decide(stats, gr4);
      if (a != b || a != c)
        throw std::runtime_error("decoder disagreement at trial " +
                                 std::to_string(trial));
    }
  });

  bool all_passed = true;
  for (const SelftestGroup& g : groups) {
    std::cout << (g.passed ? "[PASS] " : "[FAIL] ") << g.name;
    if (!g.passed) std::cout << ": " << g.detail;
    std::cout << "\n";
    all_passed = all_passed && g.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncoherent space-time code link-level simulator"};
  app.require_subcommand(1);
  CliArgs args;

  CLI::App* sweep = app.add_subcommand("sweep", "run a Monte Carlo BER sweep");
  sweep->add_option("--config", args.config_path, "config file path");
  sweep->add_option("--scheme", args.schemes, "scheme name (repeatable)");
  sweep->add_option("--snr", args.snr_spec, "snr grid, a:b:step or comma list");
  sweep->add_option("--trials", args.trials, "max trials per point");
  sweep->add_option("--seed", args.seed, "rng seed");
  sweep->add_option("--workers", args.workers, "worker threads");
  sweep->add_option("--out", args.out_dir, "output directory");
  sweep->add_flag("--verbose", args.verbose, "per-trial diagnostics jsonl");

  CLI::App* inspect =
      app.add_subcommand("inspect", "describe a scheme or constellation");
  inspect->add_option("target", args.inspect_target, "scheme or constellation name")
      ->required();

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the algebraic invariant suite");
  selftest->add_option("--constellation", args.selftest_constellation,
                       "also validate a constellation file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(args);
    if (inspect->parsed()) return cmd_inspect(args);
    if (selftest->parsed()) return cmd_selftest(args);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
