#include "qstc/decoder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qstc {

namespace {

// Accumulated outer product G = sum_k q_k q_k* (2x2 Hermitian PSD).
CMat gram_of_stats(const SufficientStats& stats) {
  CMat g(2, 2);
  for (const CMat& q : stats.q) g += q * q.adjoint();
  return g;
}

double quad_form(const CMat& m, const CMat& s) {
  return (s.adjoint() * m * s)(0, 0).real();
}

int argmax_lowest_index(const std::vector<double>& scores, bool* tie) {
  int best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  if (tie) {
    *tie = false;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (static_cast<int>(i) != best && scores[i] == scores[best]) *tie = true;
  }
  return best;
}

}  // namespace

std::array<CMat, 4> project(const CMat& y, const StabilizerCode& code) {
  if (y.rows() != 8 || y.cols() != 1)
    throw std::invalid_argument("decoder: received vector must be 8x1");
  std::array<CMat, 4> out{CMat(8, 1), CMat(8, 1), CMat(8, 1), CMat(8, 1)};
  for (int k = 0; k < 4; ++k) out[k] = code.projectors[k] * y;
  return out;
}

SufficientStats correct_and_reduce(const std::array<CMat, 4>& projections,
                                   const StabilizerCode& code) {
  const cxd scale{1.0 / (2.0 * std::sqrt(2.0)), 0.0};
  SufficientStats stats{{CMat(2, 1), CMat(2, 1), CMat(2, 1), CMat(2, 1)},
                        {CMat(8, 1), CMat(8, 1), CMat(8, 1), CMat(8, 1)}};
  const CMat basis_adjoint = code.basis.adjoint();
  for (int k = 0; k < 4; ++k) {
    stats.z[k] = code.error_matrices[k] * projections[k];
    stats.q[k] = basis_adjoint * stats.z[k] * scale;
  }
  return stats;
}

SufficientStats reduce(const CMat& y, const StabilizerCode& code) {
  return correct_and_reduce(project(y, code), code);
}

double decision_statistic(const SufficientStats& stats, const CMat& s) {
  return quad_form(gram_of_stats(stats), s);
}

int ml_decide(const SufficientStats& stats, const Constellation& c,
              double /*sigma_n_sq*/, DecisionDiagnostics* diag) {
  if (c.size() < 1)
    throw std::invalid_argument("ml_decide: empty constellation");
  const CMat g = gram_of_stats(stats);
  const double total = g.trace().real();

  std::vector<double> scores(c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i)
    scores[i] = quad_form(g, c.points[i]);

  bool tie = false;
  const int chosen = argmax_lowest_index(scores, &tie);
  if (diag) {
    diag->chosen = chosen;
    diag->degenerate = total <= 0.0;
    diag->tie = tie;
    diag->winner_fidelity =
        total > 0.0 ? std::sqrt(std::max(scores[chosen], 0.0) / total) : 0.0;
    diag->scores = std::move(scores);
  }
  return chosen;
}

CMat u_s_matrix(const CMat& s, double sigma_n_sq) {
  if (s.rows() != 2 || s.cols() != 1)
    throw std::invalid_argument("u_s_matrix: symbol must be 2x1");
  if (!(sigma_n_sq > 0.0))
    throw std::invalid_argument("u_s_matrix: sigma_n_sq must be positive");
  const double half = sigma_n_sq / 2.0;
  const double prefactor = 1.0 / (half * (1.0 + half));
  CMat u(2, 2);
  u(0, 0) = std::norm(s(1, 0)) + half;
  u(1, 1) = std::norm(s(0, 0)) + half;
  u(0, 1) = -s(0, 0) * std::conj(s(1, 0));
  u(1, 0) = -s(1, 0) * std::conj(s(0, 0));
  return u * cxd{prefactor, 0.0};
}

int bruteforce_ml(const CMat& y, const StabilizerCode& code, const Constellation& c,
                  double sigma_n_sq) {
  if (!(sigma_n_sq > 0.0))
    throw std::invalid_argument(
        "bruteforce_ml: covariance is singular at sigma_n_sq = 0; use the "
        "noiseless path");
  const SufficientStats stats = reduce(y, code);
  const double half = sigma_n_sq / 2.0;

  std::vector<double> loglik(c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const CMat& s = c.points[i];
    const CMat u = u_s_matrix(s, sigma_n_sq);
    double quad = 0.0;
    for (const CMat& q : stats.q) quad += quad_form(u, q);
    // det(Q) = det(ss* + sigma^2/2 I)^4; constant across unit-norm candidates
    // but evaluated per candidate as part of this independent path.
    const CMat cov = s * s.adjoint() + CMat::identity(2) * cxd{half, 0.0};
    const double det_q = std::pow(cov.det_2x2().real(), 4);
    loglik[i] = -quad - std::log(det_q) - 8.0 * std::log(std::numbers::pi);
  }
  return argmax_lowest_index(loglik, nullptr);
}

CMat mixed_state(const SufficientStats& stats) {
  const CMat g = gram_of_stats(stats);
  const double total = g.trace().real();
  if (total <= 0.0)
    throw std::domain_error("mixed_state: all-zero statistics");
  return g * cxd{1.0 / total, 0.0};
}

FastMlDecider::FastMlDecider(const StabilizerCode& code, const Constellation& c) {
  c.validate();
  const cxd scale{1.0 / (2.0 * std::sqrt(2.0)), 0.0};
  for (int k = 0; k < 4; ++k) {
    const CMat m =
        code.basis.adjoint() * code.error_matrices[k] * code.projectors[k] * scale;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 8; ++j) reduction_[k][i * 8 + j] = m(i, j);
  }
  for (const CMat& p : c.points) points_.push_back({p(0, 0), p(1, 0)});
}

int FastMlDecider::decide(std::span<const cxd, 8> y,
                          std::vector<double>* scores) const {
  // G = sum_k q_k q_k*, accumulated entrywise (Hermitian 2x2). The complex
  // products are written out in real arithmetic: operator* on std::complex
  // lowers to a libgcc call (inf/nan fixups) that dominates the trial cost.
  double g00 = 0.0, g11 = 0.0, g01r = 0.0, g01i = 0.0;
  for (int k = 0; k < 4; ++k) {
    double q0r = 0.0, q0i = 0.0, q1r = 0.0, q1i = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double yr = y[j].real(), yi = y[j].imag();
      const cxd& m0 = reduction_[k][j];
      const cxd& m1 = reduction_[k][8 + j];
      q0r += m0.real() * yr - m0.imag() * yi;
      q0i += m0.real() * yi + m0.imag() * yr;
      q1r += m1.real() * yr - m1.imag() * yi;
      q1i += m1.real() * yi + m1.imag() * yr;
    }
    g00 += q0r * q0r + q0i * q0i;
    g11 += q1r * q1r + q1i * q1i;
    g01r += q0r * q1r + q0i * q1i;  // q0 * conj(q1)
    g01i += q0i * q1r - q0r * q1i;
  }

  int best = 0;
  double best_score = -1.0;
  if (scores) scores->resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& s = points_[i];
    // conj(s0) s1, then score = g00|s0|^2 + g11|s1|^2 + 2 Re(g01 conj(s0) s1).
    const double cr = s[0].real() * s[1].real() + s[0].imag() * s[1].imag();
    const double ci = s[0].real() * s[1].imag() - s[0].imag() * s[1].real();
    const double score = g00 * std::norm(s[0]) + g11 * std::norm(s[1]) +
                         2.0 * (g01r * cr - g01i * ci);
    if (scores) (*scores)[i] = score;
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int fidelity_decide(const SufficientStats& stats, const Constellation& c,
                    DecisionDiagnostics* diag) {
  if (c.size() < 1)
    throw std::invalid_argument("fidelity_decide: empty constellation");
  const CMat g = gram_of_stats(stats);
  const double total = g.trace().real();
  if (total <= 0.0) {
    if (diag) {
      diag->scores.assign(c.points.size(), 0.0);
      diag->chosen = 0;
      diag->winner_fidelity = 0.0;
      diag->tie = c.size() > 1;
      diag->degenerate = true;
    }
    return 0;
  }
  const CMat psi = g * cxd{1.0 / total, 0.0};

  std::vector<double> fidelities(c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i)
    fidelities[i] = std::sqrt(std::max(quad_form(psi, c.points[i]), 0.0));

  bool tie = false;
  const int chosen = argmax_lowest_index(fidelities, &tie);
  if (diag) {
    diag->chosen = chosen;
    diag->degenerate = false;
    diag->tie = tie;
    diag->winner_fidelity = fidelities[chosen];
    diag->scores = std::move(fidelities);
  }
  return chosen;
}

}  // namespace qstc
