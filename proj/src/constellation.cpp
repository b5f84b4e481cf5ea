#include "qstc/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qstc/errors.hpp"

namespace qstc {

namespace {

constexpr double kUnitNormTol = 1e-9;

cxd inner(const CMat& a, const CMat& b) {
  cxd acc{0.0, 0.0};
  for (int i = 0; i < a.rows(); ++i) acc += std::conj(a(i, 0)) * b(i, 0);
  return acc;
}

CMat bloch_state(double polar, double azimuth) {
  return CMat::column({std::cos(polar / 2.0),
                       std::polar(std::sin(polar / 2.0), azimuth)});
}

void normalize_point(CMat& p) {
  const double norm = std::sqrt(p.frobenius_norm_sq());
  p *= cxd{1.0 / norm, 0.0};
}

double packing_coherence(const std::vector<CMat>& points) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      worst = std::max(worst, std::abs(inner(points[i], points[j])));
  return worst;
}

}  // namespace

int Constellation::label_bits() const {
  int bits = 0;
  while ((1 << bits) < size()) ++bits;
  return bits;
}

void Constellation::validate() const {
  if (points.size() < 2)
    throw std::invalid_argument("constellation: needs at least two points");
  if ((points.size() & (points.size() - 1)) != 0)
    throw std::invalid_argument("constellation: size must be a power of two");
  for (const CMat& p : points) {
    if (p.rows() != 2 || p.cols() != 1)
      throw std::invalid_argument("constellation: points must be 2x1 vectors");
    if (!p.is_finite())
      throw std::invalid_argument("constellation: point has non-finite entries");
    if (std::abs(p.frobenius_norm_sq() - 1.0) > kUnitNormTol)
      throw std::invalid_argument("constellation: point is not unit norm");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (std::abs(inner(points[i], points[j])) >= 1.0 - 1e-9)
        throw std::invalid_argument("constellation: colinear (repeated) points");
}

double coherence(const Constellation& c) {
  if (c.size() < 2)
    throw std::invalid_argument("coherence: needs at least two points");
  return packing_coherence(c.points);
}

double welch_bound(int n_points, int dim) {
  if (dim < 1 || n_points < 1)
    throw std::invalid_argument("welch_bound: arguments must be positive");
  if (n_points <= dim) return 0.0;
  return std::sqrt(static_cast<double>(n_points - dim) /
                   (static_cast<double>(dim) * (n_points - 1)));
}

Constellation embedded(const std::string& name) {
  using std::numbers::pi;
  Constellation c;
  c.name = name;
  if (name == "gr4") {
    // Four equiangular lines: |<s_i, s_j>| = 1/sqrt(3) for every pair, which
    // meets the Welch bound for N=4 in two dimensions.
    const double a = 1.0 / std::sqrt(3.0);
    const double b = std::sqrt(2.0 / 3.0);
    c.points.push_back(CMat::column({1.0, 0.0}));
    for (int k = 0; k < 3; ++k)
      c.points.push_back(
          CMat::column({a, std::polar(b, 2.0 * pi * k / 3.0)}));
  } else if (name == "gr8") {
    // Eight lines from the optimal square antiprism on the Bloch sphere:
    // two rings of four at polar angles theta and pi-theta, offset by 45
    // degrees, with cos^2(theta) = (2*sqrt(2)-1)/7 equalizing in-ring and
    // cross-ring separations. Coherence = sqrt((3+sqrt(2))/7) ~ 0.794104.
    const double polar = std::acos(std::sqrt((2.0 * std::sqrt(2.0) - 1.0) / 7.0));
    for (int k = 0; k < 4; ++k)
      c.points.push_back(bloch_state(polar, k * pi / 2.0));
    for (int k = 0; k < 4; ++k)
      c.points.push_back(bloch_state(pi - polar, pi / 4.0 + k * pi / 2.0));
  } else {
    throw LookupError("unknown constellation \"" + name + "\"");
  }
  c.validate();
  return c;
}

namespace {

// Potential sum_{i<j} (|s_i* s_j| / scale)^{2p}. The scale keeps the terms
// representable for large p; with scale fixed this is a monotone transform of
// the raw potential, so line-search comparisons are unaffected.
double scaled_potential(const std::vector<CMat>& pts, int p, double scale) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      acc += std::pow(std::norm(inner(pts[i], pts[j])) / (scale * scale), p);
  return acc;
}

std::vector<CMat> potential_gradient(const std::vector<CMat>& pts, int p,
                                     double scale) {
  std::vector<CMat> grad(pts.size(), CMat(2, 1));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const cxd cij = inner(pts[i], pts[j]);  // s_i* s_j
      const double w = std::pow(std::norm(cij) / (scale * scale), p - 1);
      grad[i] += (w * std::conj(cij)) * pts[j];
    }
  return grad;
}

}  // namespace

Constellation optimize_packing(int n_points, int dim, Rng& rng, int iters) {
  if (dim != 2)
    throw std::invalid_argument("optimize_packing: only dim=2 is supported");
  if (n_points < 2)
    throw std::invalid_argument("optimize_packing: need at least two points");

  const int restarts = 8;
  const int powers[] = {2, 8, 32, 128, 512, 2048};
  const int stages = static_cast<int>(std::size(powers));
  const int steps_per_stage = std::max(20, iters / stages);

  std::vector<CMat> best;
  double best_coh = 2.0;
  const auto consider = [&best, &best_coh](const std::vector<CMat>& pts) {
    const double coh = packing_coherence(pts);
    if (coh < best_coh) {
      best_coh = coh;
      best = pts;
    }
  };

  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<CMat> pts;
    for (int i = 0; i < n_points; ++i) {
      CMat p = CMat::column({rng.complex_normal(1.0), rng.complex_normal(1.0)});
      normalize_point(p);
      pts.push_back(std::move(p));
    }
    consider(pts);

    // Smoothed-max descent with a sharpening exponent and backtracking.
    for (int stage = 0; stage < stages; ++stage) {
      const int p = powers[stage];
      double step = 0.25;
      for (int it = 0; it < steps_per_stage; ++it) {
        const double scale = packing_coherence(pts);
        if (scale < 1e-9) break;  // already essentially orthogonal
        const double current = scaled_potential(pts, p, scale);
        const std::vector<CMat> grad = potential_gradient(pts, p, scale);
        double grad_norm = 0.0;
        for (const CMat& g : grad) grad_norm = std::max(grad_norm, g.frobenius_norm_sq());
        grad_norm = std::sqrt(grad_norm);
        if (grad_norm < 1e-300) break;

        bool accepted = false;
        for (; step > 1e-13; step *= 0.5) {
          std::vector<CMat> cand = pts;
          for (std::size_t i = 0; i < cand.size(); ++i) {
            cand[i] -= cxd{step / grad_norm, 0.0} * grad[i];
            normalize_point(cand[i]);
          }
          if (scaled_potential(cand, p, scale) < current) {
            pts = std::move(cand);
            accepted = true;
            step = std::min(step * 4.0, 0.5);
            break;
          }
        }
        if (!accepted) break;
        consider(pts);
      }
    }

    // Minimax polish: repeatedly push the single worst pair apart.
    double nudge = 0.02;
    for (int it = 0; it < steps_per_stage; ++it) {
      std::size_t wi = 0, wj = 1;
      double worst = -1.0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const double mag = std::abs(inner(pts[i], pts[j]));
          if (mag > worst) {
            worst = mag;
            wi = i;
            wj = j;
          }
        }
      const cxd cij = inner(pts[wi], pts[wj]);
      CMat si = pts[wi] - cxd{nudge, 0.0} * (std::conj(cij) * pts[wj]);
      CMat sj = pts[wj] - cxd{nudge, 0.0} * (cij * pts[wi]);
      normalize_point(si);
      normalize_point(sj);
      pts[wi] = std::move(si);
      pts[wj] = std::move(sj);
      consider(pts);
      nudge *= 0.995;
    }
  }

  if (best_coh < welch_bound(n_points, dim) - 1e-9)
    throw std::logic_error("optimize_packing: coherence below the Welch bound");

  Constellation c;
  c.name = "opt" + std::to_string(n_points);
  c.points = std::move(best);
  return c;
}

double pairing_criterion(const Constellation& c, double sigma_n_sq) {
  c.validate();
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < c.size(); ++i) {
    const CMat& s = c.points[i];
    CMat b = (s * s.adjoint()) * cxd{4.0, 0.0} +
             CMat::identity(2) * cxd{2.0 * sigma_n_sq, 0.0};
    for (int j = 0; j < c.size(); ++j) {
      if (j == i) continue;
      const CMat& cand = c.points[j];
      const double margin = (s.adjoint() * b * s)(0, 0).real() -
                            (cand.adjoint() * b * cand)(0, 0).real();
      worst = std::min(worst, margin);
    }
  }
  return worst;
}

int bits_to_symbol(std::span<const int> bits) {
  if (bits.empty() || bits.size() > 30)
    throw std::invalid_argument("labeling: bit count out of range");
  int idx = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("labeling: bits must be 0/1");
    idx = idx << 1 | b;
  }
  return idx;
}

std::vector<int> symbol_to_bits(int index, int label_bits) {
  if (label_bits < 1 || label_bits > 30)
    throw std::invalid_argument("labeling: bit count out of range");
  if (index < 0 || index >= (1 << label_bits))
    throw std::invalid_argument("labeling: index out of range");
  std::vector<int> bits(label_bits);
  for (int i = 0; i < label_bits; ++i)
    bits[i] = index >> (label_bits - 1 - i) & 1;
  return bits;
}

void save_constellation(const Constellation& c, std::ostream& out) {
  c.validate();
  out.precision(17);
  out << "# N=" << c.size() << " d=2 coherence=" << coherence(c) << "\n";
  for (const CMat& p : c.points) {
    out << p(0, 0).real() << "," << p(0, 0).imag() << " "
        << p(1, 0).real() << "," << p(1, 0).imag() << "\n";
  }
}

Constellation load_constellation(std::istream& in, const std::string& name) {
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("constellation file: missing header");
  int n = 0, d = 0;
  double recorded_coherence = -1.0;
  if (std::sscanf(header.c_str(), "# N=%d d=%d coherence=%lf", &n, &d,
                  &recorded_coherence) != 3)
    throw std::invalid_argument("constellation file: malformed header \"" + header + "\"");
  if (d != 2) throw std::invalid_argument("constellation file: only d=2 supported");

  Constellation c;
  c.name = name;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    double re0, im0, re1, im1;
    if (std::sscanf(line.c_str(), "%lf,%lf %lf,%lf", &re0, &im0, &re1, &im1) != 4)
      throw std::invalid_argument("constellation file: bad point at line " +
                                  std::to_string(line_no));
    c.points.push_back(CMat::column({cxd{re0, im0}, cxd{re1, im1}}));
  }
  if (c.size() != n)
    throw std::invalid_argument("constellation file: header N=" + std::to_string(n) +
                                " but found " + std::to_string(c.size()) + " points");
  c.validate();
  if (std::abs(coherence(c) - recorded_coherence) > 1e-6)
    throw std::invalid_argument("constellation file: recorded coherence disagrees "
                                "with the points");
  return c;
}

}  // namespace qstc
