#include "qstc/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qstc {

double snr_db_to_sigma_sq(double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

double sigma_sq_to_snr_db(double sigma_n_sq) {
  if (sigma_n_sq == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(sigma_n_sq);
}

NoiseParams NoiseParams::from_snr_db(double snr_db) {
  const double sigma = snr_db_to_sigma_sq(snr_db);
  if (!(sigma > 0.0))
    throw std::invalid_argument("noise: sigma_n_sq must be positive");
  return {sigma, snr_db};
}

NoiseParams NoiseParams::from_sigma_sq(double sigma_n_sq) {
  if (!(sigma_n_sq > 0.0))
    throw std::invalid_argument("noise: sigma_n_sq must be positive");
  return {sigma_n_sq, sigma_sq_to_snr_db(sigma_n_sq)};
}

ChannelRealization sample_channel(Rng& rng) {
  CMat h(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) h(i, j) = rng.complex_normal(1.0);
  std::array<cxd, 4> c = decompose(h);
  return {std::move(h), c};
}

std::array<cxd, 4> decompose(const CMat& H) {
  if (H.rows() != 2 || H.cols() != 2)
    throw std::invalid_argument("decompose: H must be 2x2");
  const cxd j{0.0, 1.0};
  return {
      (H(0, 0) + H(1, 1)) * 0.5,
      (H(0, 1) + H(1, 0)) * 0.5,
      (H(0, 0) - H(1, 1)) * 0.5,
      j * (H(0, 1) - H(1, 0)) * 0.5,
  };
}

CMat reconstruct(const std::array<cxd, 4>& c) {
  const cxd j{0.0, 1.0};
  CMat h(2, 2);
  h(0, 0) = c[0] + c[2];
  h(1, 1) = c[0] - c[2];
  h(0, 1) = c[1] - j * c[3];
  h(1, 0) = c[1] + j * c[3];
  return h;
}

CMat sample_noise(int rows, int cols, double sigma_n_sq, Rng& rng) {
  if (sigma_n_sq < 0.0)
    throw std::invalid_argument("noise: sigma_n_sq must be nonnegative");
  CMat n(rows, cols);
  if (sigma_n_sq == 0.0) return n;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) n(i, j) = rng.complex_normal(sigma_n_sq);
  return n;
}

CMat transmit(const CMat& T, const CMat& H, double sigma_n_sq, Rng& rng) {
  if (T.rows() != 2 || T.cols() != 4 || H.rows() != 2 || H.cols() != 2)
    throw std::invalid_argument("transmit: expected 2x4 codeword and 2x2 channel");
  return transmit_with_noise(T, H, sample_noise(2, 4, sigma_n_sq, rng));
}

CMat transmit_with_noise(const CMat& T, const CMat& H, const CMat& N) {
  return H * T + N;
}

}  // namespace qstc
