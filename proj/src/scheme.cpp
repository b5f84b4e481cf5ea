#include "qstc/scheme.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <utility>

#include "qstc/baselines.hpp"
#include "qstc/channel.hpp"
#include "qstc/constellation.hpp"
#include "qstc/decoder.hpp"
#include "qstc/errors.hpp"
#include "qstc/fingerprint.hpp"

namespace qstc {

namespace {

std::string matrix_bytes(const CMat& m) {
  std::string out;
  char buf[64];
  for (const cxd& e : m.data()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g;", e.real(), e.imag());
    out += buf;
  }
  return out;
}

std::string points_fingerprint(const std::vector<CMat>& points) {
  std::string bytes;
  for (const CMat& p : points) bytes += matrix_bytes(p);
  return hex64(fnv1a64(bytes));
}

std::vector<int> draw_bits(Rng& rng, int count) {
  const std::uint64_t word = rng();
  std::vector<int> bits(count);
  for (int i = 0; i < count; ++i) bits[i] = static_cast<int>(word >> i & 1);
  return bits;
}

int count_bit_diff(const std::vector<int>& a, const std::vector<int>& b) {
  int errors = 0;
  for (std::size_t i = 0; i < a.size(); ++i) errors += a[i] != b[i];
  return errors;
}

class StabilizerScheme final : public Scheme {
 public:
  StabilizerScheme(std::string name, Constellation constellation)
      : name_(std::move(name)),
        code_(build_code()),
        constellation_(std::move(constellation)),
        decider_(code_, constellation_),
        bits_(constellation_.label_bits()) {}

  const std::string& name() const override { return name_; }
  int bits_per_interval() const override { return bits_; }

  // Allocation-free trial. Draw order (symbol index, H row-major, N row-major)
  // matches the module-path pipeline exactly, so the two implementations can
  // be cross-checked on shared trial streams.
  int run_interval(double sigma_n_sq, Rng& rng, nlohmann::json* diag) const override {
    const int sent = static_cast<int>(rng.uniform_index(constellation_.size()));
    const CMat& point = constellation_.points[sent];
    const cxd a = point(0, 0), b = point(1, 0);
    // Codeword columns of T = [[a,-b,-b,a],[-b,-a,a,b]].
    const cxd t[2][4] = {{a, -b, -b, a}, {-b, -a, a, b}};

    cxd h[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) h[i][j] = rng.complex_normal(1.0);

    cxd noise[2][4] = {};
    if (sigma_n_sq > 0.0)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) noise[i][j] = rng.complex_normal(sigma_n_sq);

    std::array<cxd, 8> y;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 2; ++i) {
        const cxd& h0 = h[i][0];
        const cxd& h1 = h[i][1];
        const cxd& t0 = t[0][j];
        const cxd& t1 = t[1][j];
        y[j * 2 + i] = {h0.real() * t0.real() - h0.imag() * t0.imag() +
                            h1.real() * t1.real() - h1.imag() * t1.imag() +
                            noise[i][j].real(),
                        h0.real() * t0.imag() + h0.imag() * t0.real() +
                            h1.real() * t1.imag() + h1.imag() * t1.real() +
                            noise[i][j].imag()};
      }

    std::vector<double> scores;
    const int decoded = decider_.decide(y, diag ? &scores : nullptr);
    if (diag) {
      *diag = {{"sent", sent}, {"chosen", decoded}, {"scores", scores}};
    }
    return std::popcount(static_cast<unsigned>(sent ^ decoded) &
                         ((1u << bits_) - 1));
  }

  nlohmann::json metadata() const override {
    return {{"family", "stabilizer"},
            {"rate_bits_per_use", rate()},
            {"constellation", constellation_.name},
            {"constellation_size", constellation_.size()},
            {"coherence", coherence(constellation_)},
            {"welch_bound", welch_bound(constellation_.size(), 2)},
            {"bit_labeling", "natural binary by point index"},
            {"codebook_fingerprint", points_fingerprint(constellation_.points)}};
  }

 private:
  std::string name_;
  StabilizerCode code_;
  Constellation constellation_;
  FastMlDecider decider_;
  int bits_;
};

class AlamoutiAdapter final : public Scheme {
 public:
  AlamoutiAdapter(std::string name, double rate, bool perfect_csi)
      : name_(std::move(name)), scheme_(make_alamouti(rate, perfect_csi)) {}

  const std::string& name() const override { return name_; }
  int bits_per_interval() const override { return scheme_.bits_per_interval; }

  int run_interval(double sigma_n_sq, Rng& rng, nlohmann::json* diag) const override {
    const std::vector<int> bits = draw_bits(rng, scheme_.bits_per_interval);
    const ChannelRealization channel = sample_channel(rng);
    const std::vector<int> decoded =
        alamouti_run_interval(scheme_, bits, channel.H, sigma_n_sq, rng);
    if (diag) *diag = {{"sent", bits}, {"decoded", decoded}};
    return count_bit_diff(bits, decoded);
  }

  nlohmann::json metadata() const override {
    return {{"family", "alamouti"},
            {"rate_bits_per_use", rate()},
            {"alphabet", scheme_.bits_per_interval == 2 ? "BPSK" : "QPSK"},
            {"csi", scheme_.perfect_csi ? "perfect" : "pilot-estimated"},
            {"pilot_fingerprint", hex64(fnv1a64(matrix_bytes(scheme_.pilot)))}};
  }

 private:
  std::string name_;
  AlamoutiScheme scheme_;
};

class DifferentialAdapter final : public Scheme {
 public:
  DifferentialAdapter(std::string name, double rate)
      : name_(std::move(name)), scheme_(make_differential(rate)) {}

  const std::string& name() const override { return name_; }
  int bits_per_interval() const override { return scheme_.bits_per_interval; }

  int run_interval(double sigma_n_sq, Rng& rng, nlohmann::json* diag) const override {
    const std::vector<int> bits = draw_bits(rng, scheme_.bits_per_interval);
    const ChannelRealization channel = sample_channel(rng);
    const std::vector<int> decoded =
        differential_run_interval(scheme_, bits, channel.H, sigma_n_sq, rng);
    if (diag) *diag = {{"sent", bits}, {"decoded", decoded}};
    return count_bit_diff(bits, decoded);
  }

  nlohmann::json metadata() const override {
    return {{"family", "differential"},
            {"rate_bits_per_use", rate()},
            {"codebook",
             scheme_.bits_per_interval == 2 ? "cyclic pauli group (jX)^k over QPSK"
                                            : "dicyclic-16: a^k and a^k b"},
            {"codebook_size", scheme_.codebook.size()},
            {"codebook_fingerprint", points_fingerprint(scheme_.codebook)}};
  }

 private:
  std::string name_;
  DifferentialScheme scheme_;
};

}  // namespace

std::unique_ptr<Scheme> make_scheme(const std::string& name) {
  if (name == "stabilizer-gr4")
    return std::make_unique<StabilizerScheme>(name, embedded("gr4"));
  if (name == "stabilizer-gr8")
    return std::make_unique<StabilizerScheme>(name, embedded("gr8"));
  if (name == "alamouti-r05") return std::make_unique<AlamoutiAdapter>(name, 0.5, false);
  if (name == "alamouti-r1") return std::make_unique<AlamoutiAdapter>(name, 1.0, false);
  if (name == "alamouti-r05-perfect")
    return std::make_unique<AlamoutiAdapter>(name, 0.5, true);
  if (name == "alamouti-r1-perfect")
    return std::make_unique<AlamoutiAdapter>(name, 1.0, true);
  if (name == "differential-r05")
    return std::make_unique<DifferentialAdapter>(name, 0.5);
  if (name == "differential-r1")
    return std::make_unique<DifferentialAdapter>(name, 1.0);
  throw LookupError("unknown scheme \"" + name + "\"");
}

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> kNames = {
      "stabilizer-gr4",  "stabilizer-gr8",      "alamouti-r05",
      "alamouti-r1",     "differential-r05",    "differential-r1",
      "alamouti-r05-perfect", "alamouti-r1-perfect",
  };
  return kNames;
}

std::uint32_t scheme_stream_id(const std::string& name) {
  const auto& names = scheme_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<std::uint32_t>(i);
  return static_cast<std::uint32_t>(fnv1a64(name) >> 32 | 0x80000000u);
}

}  // namespace qstc
