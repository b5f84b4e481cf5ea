#pragma once

#include <array>

#include "qstc/cmat.hpp"
#include "qstc/rng.hpp"

namespace qstc {

/// One block-fading realization: the 2x2 gain matrix H together with its
/// coefficients in the Pauli basis {I, X, Z, Y}, ordered to match the error
/// set E0..E3. The coefficients satisfy
///   I ⊗ I ⊗ H = c0 E0 + c1 E1 + c2 E2 + c3 E3.
struct ChannelRealization {
  CMat H;                  // 2x2
  std::array<cxd, 4> c;    // c0..c3
};

/// Noise level for one operating point. SNR is defined as 1/sigma_n_sq: the
/// codeword columns carry unit average power and E|H_ij|^2 = 1, so the
/// per-receive-antenna signal power is 1.
struct NoiseParams {
  double sigma_n_sq;
  double snr_db;

  static NoiseParams from_snr_db(double snr_db);
  static NoiseParams from_sigma_sq(double sigma_n_sq);
};

double snr_db_to_sigma_sq(double snr_db);  // +inf maps to 0 (noiseless)
double sigma_sq_to_snr_db(double sigma_n_sq);

/// H with iid CN(0,1) entries (Rayleigh fading), drawn row-major, plus its
/// Pauli-basis coefficients. Fresh realization per coherence interval.
ChannelRealization sample_channel(Rng& rng);

/// c0 = (H11+H22)/2, c1 = (H12+H21)/2, c2 = (H11-H22)/2, c3 = j(H12-H21)/2.
std::array<cxd, 4> decompose(const CMat& H);

/// c0 I + c1 X + c2 Z + c3 Y; inverse of decompose.
CMat reconstruct(const std::array<cxd, 4>& c);

/// Matrix with iid CN(0, sigma_n_sq) entries, drawn row-major.
CMat sample_noise(int rows, int cols, double sigma_n_sq, Rng& rng);

/// Y = H T + N with fresh noise. sigma_n_sq = 0 is the noiseless path.
CMat transmit(const CMat& T, const CMat& H, double sigma_n_sq, Rng& rng);

/// Y = H T + N for caller-supplied noise (shared-noise comparisons).
CMat transmit_with_noise(const CMat& T, const CMat& H, const CMat& N);

}  // namespace qstc
