#pragma once

#include <span>
#include <vector>

#include "qstc/cmat.hpp"
#include "qstc/rng.hpp"

namespace qstc {

/// Pilot-aided coherent scheme over one 4-use coherence interval: two pilot
/// uses estimate H, then one Alamouti block carries two BPSK (r=1/2) or two
/// QPSK (r=1) symbols. Every transmit column has unit power.
struct AlamoutiScheme {
  int bits_per_interval;  // 2 or 4
  bool perfect_csi;       // combine with the true H instead of the estimate
  CMat pilot;             // 2x2 columns [1,1]/sqrt(2), [1,-1]/sqrt(2)
};

/// rate must be 0.5 or 1.0.
AlamoutiScheme make_alamouti(double rate, bool perfect_csi = false);

std::vector<int> alamouti_run_interval(const AlamoutiScheme& scheme,
                                       std::span<const int> bits, const CMat& H,
                                       double sigma_n_sq, Rng& rng);

/// Noncoherent differential scheme: uses 1-2 carry the reference block R = I,
/// uses 3-4 carry R*V with V from a unitary group codebook (the cyclic
/// Pauli-group code {(jX)^k} over QPSK at r=1/2, the order-16 dicyclic group
/// at r=1). The receiver picks argmin_V ||Y2 - Y1 V||_F without any channel
/// knowledge.
struct DifferentialScheme {
  int bits_per_interval;       // 2 or 4
  std::vector<CMat> codebook;  // unitary 2x2 matrices
  CMat reference;              // I2: unit-power columns, matching the other schemes
};

/// rate must be 0.5 or 1.0.
DifferentialScheme make_differential(double rate);

std::vector<int> differential_run_interval(const DifferentialScheme& scheme,
                                           std::span<const int> bits, const CMat& H,
                                           double sigma_n_sq, Rng& rng);

/// Order-16 dicyclic group: a = diag(w, conj(w)) with w = exp(j pi/4) and
/// b = [[0,1],[-1,0]], so a^8 = I, b^2 = a^4, b a b^-1 = a^-1. The codebook
/// lists a^k for k=0..7 then a^k b for k=0..7.
std::vector<CMat> build_dicyclic_16();

}  // namespace qstc
