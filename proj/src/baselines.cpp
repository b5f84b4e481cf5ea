#include "qstc/baselines.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qstc/channel.hpp"
#include "qstc/constellation.hpp"
#include "qstc/pauli.hpp"

namespace qstc {

namespace {

cxd bpsk_symbol(int bit) {
  return {(1.0 - 2.0 * bit) / std::sqrt(2.0), 0.0};
}

cxd qpsk_symbol(int bit_re, int bit_im) {
  // Gray labeling: each quadrant neighbor differs in one bit.
  return {(1.0 - 2.0 * bit_re) / 2.0, (1.0 - 2.0 * bit_im) / 2.0};
}

void check_bits(std::span<const int> bits, int expected) {
  if (static_cast<int>(bits.size()) != expected)
    throw std::invalid_argument("baseline: expected " + std::to_string(expected) +
                                " bits per interval");
  for (int b : bits)
    if (b != 0 && b != 1)
      throw std::invalid_argument("baseline: bits must be 0/1");
}

}  // namespace

AlamoutiScheme make_alamouti(double rate, bool perfect_csi) {
  if (rate != 0.5 && rate != 1.0)
    throw std::invalid_argument("alamouti: rate must be 1/2 or 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMat pilot(2, 2, {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2});
  return {rate == 0.5 ? 2 : 4, perfect_csi, std::move(pilot)};
}

std::vector<int> alamouti_run_interval(const AlamoutiScheme& scheme,
                                       std::span<const int> bits, const CMat& H,
                                       double sigma_n_sq, Rng& rng) {
  check_bits(bits, scheme.bits_per_interval);
  const bool qpsk = scheme.bits_per_interval == 4;

  // Uses 1-2: pilots. The pilot matrix is unitary, so H_hat = Yp P*.
  const CMat yp = H * scheme.pilot + sample_noise(2, 2, sigma_n_sq, rng);
  const CMat h_hat = scheme.perfect_csi ? H : yp * scheme.pilot.adjoint();

  // Uses 3-4: one Alamouti block, columns of unit power.
  cxd x1, x2;
  if (qpsk) {
    x1 = qpsk_symbol(bits[0], bits[1]);
    x2 = qpsk_symbol(bits[2], bits[3]);
  } else {
    x1 = bpsk_symbol(bits[0]);
    x2 = bpsk_symbol(bits[1]);
  }
  CMat block(2, 2, {x1, -std::conj(x2), x2, std::conj(x1)});
  const CMat yd = H * block + sample_noise(2, 2, sigma_n_sq, rng);

  // Orthogonal combining with the (estimated) channel.
  cxd g1{0.0, 0.0}, g2{0.0, 0.0};
  for (int j = 0; j < 2; ++j) {
    g1 += std::conj(h_hat(j, 0)) * yd(j, 0) + h_hat(j, 1) * std::conj(yd(j, 1));
    g2 += std::conj(h_hat(j, 1)) * yd(j, 0) - h_hat(j, 0) * std::conj(yd(j, 1));
  }

  std::vector<int> decoded;
  decoded.reserve(bits.size());
  if (qpsk) {
    decoded.push_back(g1.real() < 0.0 ? 1 : 0);
    decoded.push_back(g1.imag() < 0.0 ? 1 : 0);
    decoded.push_back(g2.real() < 0.0 ? 1 : 0);
    decoded.push_back(g2.imag() < 0.0 ? 1 : 0);
  } else {
    decoded.push_back(g1.real() < 0.0 ? 1 : 0);
    decoded.push_back(g2.real() < 0.0 ? 1 : 0);
  }
  return decoded;
}

std::vector<CMat> build_dicyclic_16() {
  using std::numbers::pi;
  const cxd w = std::polar(1.0, pi / 4.0);
  CMat a(2, 2, {w, 0, 0, std::conj(w)});
  CMat b(2, 2, {0, 1, -1, 0});
  std::vector<CMat> elements;
  CMat ak = CMat::identity(2);
  for (int k = 0; k < 8; ++k) {
    elements.push_back(ak);
    ak = ak * a;
  }
  ak = CMat::identity(2);
  for (int k = 0; k < 8; ++k) {
    elements.push_back(ak * b);
    ak = ak * a;
  }
  return elements;
}

DifferentialScheme make_differential(double rate) {
  if (rate != 0.5 && rate != 1.0)
    throw std::invalid_argument("differential: rate must be 1/2 or 1");
  DifferentialScheme scheme;
  scheme.bits_per_interval = rate == 0.5 ? 2 : 4;
  if (rate == 0.5) {
    // Cyclic Pauli-group code over QPSK: V_k = (jX)^k, i.e. {I, jX, -I, -jX}.
    // Every difference V_k - V_m has full rank (the group is fixed-point
    // free), which the plain letters {I,X,Z,Y} do not satisfy — e.g. I - X
    // is singular, which would cost a diversity order.
    const PauliOp generator = PauliOp::parse("jX");
    PauliOp element = PauliOp::identity(1);
    for (int k = 0; k < 4; ++k) {
      scheme.codebook.push_back(element.to_matrix());
      element = element * generator;
    }
  } else {
    scheme.codebook = build_dicyclic_16();
  }
  scheme.reference = CMat::identity(2);
  return scheme;
}

std::vector<int> differential_run_interval(const DifferentialScheme& scheme,
                                           std::span<const int> bits, const CMat& H,
                                           double sigma_n_sq, Rng& rng) {
  check_bits(bits, scheme.bits_per_interval);
  const int index = bits_to_symbol(bits);
  const CMat& v = scheme.codebook[index];

  const CMat y1 = H * scheme.reference + sample_noise(2, 2, sigma_n_sq, rng);
  const CMat y2 = H * (scheme.reference * v) + sample_noise(2, 2, sigma_n_sq, rng);

  int best = 0;
  double best_metric = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scheme.codebook.size(); ++i) {
    const double metric = (y2 - y1 * scheme.codebook[i]).frobenius_norm_sq();
    if (metric < best_metric) {
      best_metric = metric;
      best = static_cast<int>(i);
    }
  }
  return symbol_to_bits(best, scheme.bits_per_interval);
}

}  // namespace qstc
