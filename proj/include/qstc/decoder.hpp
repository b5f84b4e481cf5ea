#pragma once

#include <array>

#include "qstc/cmat.hpp"
#include "qstc/constellation.hpp"
#include "qstc/stabilizer.hpp"

namespace qstc {

/// Reduced receiver statistics. For each error index k,
///   z_k = E_k P_k y   and   q_k = C* z_k / (2 sqrt(2)),
/// so that a noiseless y = sum_k c_k E_k C s reduces to q_k = sqrt(2) c_k s.
struct SufficientStats {
  std::array<CMat, 4> q;  // 2x1 each
  std::array<CMat, 4> z;  // 8x1 each, kept for diagnostics
};

struct DecisionDiagnostics {
  std::vector<double> scores;   // one per candidate symbol
  int chosen = 0;
  double winner_fidelity = 0.0;
  bool tie = false;         // another candidate achieved the exact same score
  bool degenerate = false;  // all-zero statistics; index 0 by convention
};

/// The four projections [P0 y, P1 y, P2 y, P3 y]; they sum back to y.
std::array<CMat, 4> project(const CMat& y, const StabilizerCode& code);

/// Applies the unitary corrections and reduces onto the code basis.
SufficientStats correct_and_reduce(const std::array<CMat, 4>& projections,
                                   const StabilizerCode& code);

/// project + correct_and_reduce.
SufficientStats reduce(const CMat& y, const StabilizerCode& code);

/// s* (sum_k q_k q_k*) s — the per-candidate decision statistic.
double decision_statistic(const SufficientStats& stats, const CMat& s);

/// ML decision: argmax over the constellation of the decision statistic.
/// The statistic does not depend on sigma_n_sq (the noise-dependent terms of
/// the likelihood are constant across normalized candidates); the parameter
/// is kept for interface parity with the oracle. Exact ties resolve to the
/// lowest index.
int ml_decide(const SufficientStats& stats, const Constellation& c,
              double sigma_n_sq, DecisionDiagnostics* diag = nullptr);

/// Explicit inverse covariance factor U_s = (ss* + sigma_n_sq/2 I)^{-1}.
CMat u_s_matrix(const CMat& s, double sigma_n_sq);

/// Independent oracle: evaluates the full Gaussian log-likelihood of q per
/// candidate through U_s and det(Q) and returns the argmax. Requires
/// sigma_n_sq > 0 (the covariance is singular at zero noise).
int bruteforce_ml(const CMat& y, const StabilizerCode& code, const Constellation& c,
                  double sigma_n_sq);

/// Normalized mixed state Psi = sum_k q_k q_k* / sum_k tr(q_k q_k*).
/// Throws std::domain_error on all-zero statistics.
CMat mixed_state(const SufficientStats& stats);

/// Decision by fidelity against the mixed state: argmax sqrt(s* Psi s).
/// Decision-identical to ml_decide; all-zero statistics flag `degenerate`
/// and return index 0.
int fidelity_decide(const SufficientStats& stats, const Constellation& c,
                    DecisionDiagnostics* diag = nullptr);

/// Allocation-free decode path for the Monte Carlo hot loop. The reduction
/// chain q_k = C* E_k P_k y / (2 sqrt 2) is precomposed into four 2x8
/// matrices and the constellation is flattened; the decision rule is the one
/// in ml_decide. Agreement with the step-by-step chain is pinned by tests
/// (the paths differ only in floating-point association order).
class FastMlDecider {
 public:
  FastMlDecider(const StabilizerCode& code, const Constellation& c);

  int num_symbols() const { return static_cast<int>(points_.size()); }

  int decide(std::span<const cxd, 8> y,
             std::vector<double>* scores = nullptr) const;

 private:
  std::array<std::array<cxd, 16>, 4> reduction_;  // row-major 2x8 per error
  std::vector<std::array<cxd, 2>> points_;
};

}  // namespace qstc
