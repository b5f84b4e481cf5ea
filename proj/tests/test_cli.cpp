// End-to-end tests of the command-line tool: drives the built binary through
// /bin/sh and checks exit codes, output files and byte-level reproducibility.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* cli_path() {
#ifdef QSTC_CLI_PATH
  return QSTC_CLI_PATH;
#else
  return "./qstc";
#endif
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string run_cli_capture(const std::string& args, int* exit_code = nullptr) {
  const fs::path tmp = fs::temp_directory_path() / "qstc_cli_capture.txt";
  const std::string cmd =
      std::string(cli_path()) + " " + args + " >" + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (exit_code) *exit_code = WEXITSTATUS(status);
  std::ifstream in(tmp);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() /
                   ("qstc_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("sweep from a minimal config writes three csv rows") {
  TempDir dir;
  const fs::path config = dir.path / "run.cfg";
  {
    std::ofstream out(config);
    out << "# minimal experiment\n"
        << "schemes = stabilizer-gr4\n"
        << "snr_db = 0, 5, 10\n"
        << "min_trials = 4096\n"
        << "max_trials = 4096\n"
        << "seed = 9\n"
        << "out = " << (dir.path / "results").string() << "\n";
  }
  CHECK(run_cli("sweep --config " + config.string()) == 0);

  const std::string csv = read_file(dir.path / "results" / "results.csv");
  int rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 2 + 3);
  CHECK(csv.find("stabilizer-gr4,0,") != std::string::npos);
  CHECK(csv.substr(0, 11) == "# manifest=");
  CHECK(fs::exists(dir.path / "results" / "results.json"));
  CHECK(fs::exists(dir.path / "results" / "manifest.json"));
}

TEST_CASE("reruns and worker counts give byte-identical csv") {
  TempDir dir;
  const std::string base =
      "sweep --scheme stabilizer-gr4 --scheme differential-r05 --snr 5:15:5 "
      "--trials 8192 --seed 1234 ";
  CHECK(run_cli(base + "--workers 1 --out " + (dir.path / "a").string()) == 0);
  CHECK(run_cli(base + "--workers 1 --out " + (dir.path / "b").string()) == 0);
  CHECK(run_cli(base + "--workers 4 --out " + (dir.path / "c").string()) == 0);

  const std::string a = read_file(dir.path / "a" / "results.csv");
  CHECK(!a.empty());
  CHECK(a == read_file(dir.path / "b" / "results.csv"));
  CHECK(a == read_file(dir.path / "c" / "results.csv"));
}

TEST_CASE("all six schemes over a seven-point grid give 42 csv rows") {
  TempDir dir;
  const fs::path out_dir = dir.path / "out";
  CHECK(run_cli("sweep --scheme stabilizer-gr4 --scheme stabilizer-gr8 "
                "--scheme alamouti-r05 --scheme alamouti-r1 "
                "--scheme differential-r05 --scheme differential-r1 "
                "--snr 0:30:5 --trials 4096 --seed 2 --out " +
                out_dir.string()) == 0);
  const std::string csv = read_file(out_dir / "results.csv");
  int rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 2 + 42);
}

TEST_CASE("cli overrides take precedence over the config file") {
  TempDir dir;
  const fs::path config = dir.path / "run.cfg";
  {
    std::ofstream out(config);
    out << "schemes = alamouti-r05\nsnr_db = 0\nmin_trials = 4096\n"
        << "max_trials = 4096\nseed = 7\n";
  }
  const fs::path out_dir = dir.path / "out";
  CHECK(run_cli("sweep --config " + config.string() + " --scheme differential-r05" +
                " --out " + out_dir.string()) == 0);
  const std::string csv = read_file(out_dir / "results.csv");
  CHECK(csv.find("differential-r05") != std::string::npos);
  CHECK(csv.find("alamouti-r05") == std::string::npos);
}

TEST_CASE("malformed configs exit with usage errors") {
  TempDir dir;
  const fs::path config = dir.path / "bad.cfg";
  {
    std::ofstream out(config);
    out << "schemes = stabilizer-gr4\nsnr_db = zero\n";
  }
  CHECK(run_cli("sweep --config " + config.string()) == 2);

  {
    std::ofstream out(config);
    out << "unknown_key = 5\n";
  }
  CHECK(run_cli("sweep --config " + config.string()) == 2);

  CHECK(run_cli("sweep --config " + (dir.path / "missing.cfg").string()) == 2);
  CHECK(run_cli("sweep --scheme nope --snr 0 --trials 4096") == 2);
  CHECK(run_cli("bogus-subcommand") == 2);
}

TEST_CASE("inspect reports the commutation table and packings") {
  int code = 0;
  const std::string stab = run_cli_capture("inspect stabilizer", &code);
  CHECK(code == 0);
  CHECK(stab.find("E0=III:   C   C") != std::string::npos);
  CHECK(stab.find("E1=IIX:   C   A") != std::string::npos);
  CHECK(stab.find("E2=IIZ:   A   C") != std::string::npos);
  CHECK(stab.find("E3=IIY:   A   A") != std::string::npos);

  const std::string gr4 = run_cli_capture("inspect gr4", &code);
  CHECK(code == 0);
  CHECK(gr4.find("0.57735") != std::string::npos);
  CHECK(gr4.find("welch") != std::string::npos);

  const std::string diff = run_cli_capture("inspect differential-r1", &code);
  CHECK(code == 0);
  CHECK(diff.find("16 unitary matrices") != std::string::npos);

  CHECK(run_cli("inspect unknown-thing") == 2);
}

TEST_CASE("selftest passes on a fresh build within its time budget") {
  int code = 0;
  const auto start = std::chrono::steady_clock::now();
  const std::string out = run_cli_capture("selftest", &code);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  CHECK(code == 0);
  CHECK(out.find("[FAIL]") == std::string::npos);
  CHECK(out.find("[PASS] oracle-agreement") != std::string::npos);
  CHECK(elapsed < 60.0);
}

TEST_CASE("selftest fails on a corrupted constellation file") {
  TempDir dir;
  const fs::path file = dir.path / "broken.pts";
  {
    std::ofstream out(file);
    out << "# N=2 d=2 coherence=0\n2,0 0,0\n0,0 1,0\n";  // non-unit point
  }
  int code = 0;
  const std::string out =
      run_cli_capture("selftest --constellation " + file.string(), &code);
  CHECK(code == 1);
  CHECK(out.find("[FAIL] packings") != std::string::npos);
}

TEST_CASE("verbose sweep writes diagnostics jsonl") {
  TempDir dir;
  const fs::path out_dir = dir.path / "out";
  CHECK(run_cli("sweep --scheme stabilizer-gr4 --snr 10 --trials 4096 --seed 3 "
                "--verbose --out " +
                out_dir.string()) == 0);
  const std::string jsonl = read_file(out_dir / "diagnostics.jsonl");
  CHECK(!jsonl.empty());
  CHECK(jsonl.find("\"scores\"") != std::string::npos);
  CHECK(jsonl.find("\"chosen\"") != std::string::npos);
}
