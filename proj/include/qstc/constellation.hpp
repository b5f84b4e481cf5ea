#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qstc/cmat.hpp"
#include "qstc/rng.hpp"

namespace qstc {

/// Qubit symbol alphabet: N unit vectors in C^2 labelled by natural-binary
/// indices. Points are Grassmannian line packings — alphabets chosen to
/// minimize the maximum pairwise |inner product| (the coherence).
struct Constellation {
  std::string name;
  std::vector<CMat> points;  // 2x1 unit vectors

  int size() const { return static_cast<int>(points.size()); }
  int label_bits() const;

  /// Throws std::invalid_argument on any invariant violation: non-unit or
  /// non-finite points, N not a power of two, or a colinear pair.
  void validate() const;
};

/// max over i != j of |s_i* s_j|; requires at least two points.
double coherence(const Constellation& c);

/// sqrt((N-d)/(d(N-1))) for N > d; 0 otherwise (orthonormal sets exist).
double welch_bound(int n_points, int dim);

/// Built-in packings "gr4" (4 equiangular lines meeting the Welch bound) and
/// "gr8" (8 lines, square-antiprism arrangement on the Bloch sphere).
/// Unknown names raise LookupError.
Constellation embedded(const std::string& name);

/// Coherence minimization on the product of unit spheres: smoothed max
/// (|inner|^{2p} potential with p ramping up) descent with restarts, keeping
/// the best configuration seen. `iters` bounds the gradient steps per restart.
Constellation optimize_packing(int n_points, int dim, Rng& rng, int iters);

/// min over ordered pairs s != s_hat of s*Bs - s_hat*B*s_hat with
/// B = 4ss* + 2 sigma_n_sq I: the expected decision-statistic margin of the
/// receiver. Equals 4(1 - coherence^2) for any sigma.
double pairing_criterion(const Constellation& c, double sigma_n_sq);

/// Natural-binary labeling, most significant bit first.
int bits_to_symbol(std::span<const int> bits);
std::vector<int> symbol_to_bits(int index, int label_bits);

/// Plain-text format: header "# N=<n> d=2 coherence=<value>", then one point
/// per line as "re,im re,im". The loader revalidates all invariants.
void save_constellation(const Constellation& c, std::ostream& out);
Constellation load_constellation(std::istream& in, const std::string& name);

}  // namespace qstc
