#include <doctest.h>

#include <cmath>

#include "qstc/baselines.hpp"
#include "qstc/channel.hpp"
#include "qstc/constellation.hpp"
#include "qstc/montecarlo.hpp"
#include "qstc/pauli.hpp"
#include "test_helpers.hpp"

using namespace qstc;
using qstc::test::random_matrix;

namespace {

std::vector<int> random_bits(int n, Rng& rng) {
  std::vector<int> bits(n);
  for (int& b : bits) b = static_cast<int>(rng.uniform_index(2));
  return bits;
}

}  // namespace

TEST_CASE("pilot matrix is unitary") {
  const AlamoutiScheme scheme = make_alamouti(0.5);
  CHECK_MAT_NEAR(scheme.pilot * scheme.pilot.adjoint(), CMat::identity(2), 1e-12);
  // Each pilot use carries unit power.
  for (int j = 0; j < 2; ++j) {
    double col = 0.0;
    for (int i = 0; i < 2; ++i) col += std::norm(scheme.pilot(i, j));
    CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(make_alamouti(0.75), std::invalid_argument);
}

TEST_CASE("alamouti decodes exactly without noise") {
  Rng rng(81);
  for (double rate : {0.5, 1.0}) {
    const AlamoutiScheme scheme = make_alamouti(rate);
    for (int rep = 0; rep < 2000; ++rep) {
      const CMat h = random_matrix(2, 2, rng);
      if (std::abs(h.det_2x2()) < 1e-6) continue;
      const std::vector<int> bits = random_bits(scheme.bits_per_interval, rng);
      CHECK(alamouti_run_interval(scheme, bits, h, 0.0, rng) == bits);
    }
  }
}

TEST_CASE("perfect csi beats estimated csi at 10 dB") {
  const double sigma = snr_db_to_sigma_sq(10.0);
  const int trials = 100000;
  std::int64_t errors_est = 0, errors_perfect = 0;
  const AlamoutiScheme est = make_alamouti(0.5, false);
  const AlamoutiScheme perfect = make_alamouti(0.5, true);
  for (int rep = 0; rep < trials; ++rep) {
    // Shared channel and payload per trial; independent noise draws.
    Rng rng_shared = Rng::for_trial(0xa1a0, 0, 0, rep);
    const CMat h = random_matrix(2, 2, rng_shared);
    const std::vector<int> bits = random_bits(2, rng_shared);
    Rng rng_est = Rng::for_trial(0xa1a1, 0, 0, rep);
    Rng rng_perfect = Rng::for_trial(0xa1a2, 0, 0, rep);
    const std::vector<int> dec_est =
        alamouti_run_interval(est, bits, h, sigma, rng_est);
    const std::vector<int> dec_perfect =
        alamouti_run_interval(perfect, bits, h, sigma, rng_perfect);
    for (int i = 0; i < 2; ++i) {
      errors_est += dec_est[i] != bits[i];
      errors_perfect += dec_perfect[i] != bits[i];
    }
  }
  CHECK(errors_perfect < errors_est);
}

TEST_CASE("r=1/2 group codebook structure") {
  const DifferentialScheme scheme = make_differential(0.5);
  REQUIRE(scheme.codebook.size() == 4);
  // V_k = (jX)^k: pairwise ||V_i - V_j||_F^2 is 4 for adjacent group
  // elements and 8 for antipodal ones.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double dist =
          (scheme.codebook[i] - scheme.codebook[j]).frobenius_norm_sq();
      const double expected = (j - i) % 2 == 1 ? 4.0 : 8.0;
      CHECK(dist == doctest::Approx(expected).epsilon(1e-12));
    }
  for (const CMat& u : scheme.codebook) {
    CHECK_MAT_NEAR(u.adjoint() * u, CMat::identity(2), 1e-12);
    // Every codebook element is a Pauli group element.
    bool matches_pauli = false;
    for (const char* base : {"I", "X", "Y", "Z"})
      for (int phase = 0; phase < 4; ++phase)
        if (max_abs_diff(PauliOp(std::vector{PauliOp::parse(base).letter(0)}, phase)
                             .to_matrix(),
                         u) < 1e-12)
          matches_pauli = true;
    CHECK(matches_pauli);
  }
  // Full-rank differences: the property that buys the diversity order.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j)
        CHECK(std::abs((scheme.codebook[i] - scheme.codebook[j]).det_2x2()) > 0.5);
}

TEST_CASE("dicyclic group relations") {
  const std::vector<CMat> g = build_dicyclic_16();
  REQUIRE(g.size() == 16);

  const CMat a = g[1];       // a^1
  const CMat b = g[8];       // a^0 b
  CMat a_pow = CMat::identity(2);
  for (int k = 0; k < 8; ++k) a_pow = a_pow * a;
  CHECK_MAT_NEAR(a_pow, CMat::identity(2), 1e-12);           // a^8 = I
  CHECK_MAT_NEAR(b * b, g[4], 1e-12);                        // b^2 = a^4
  const CMat b_inv = b.adjoint();
  CHECK_MAT_NEAR(b * a * b_inv, g[7], 1e-12);                // b a b^-1 = a^-1 = a^7
  CHECK_MAT_NEAR(b * a * b_inv, a.adjoint(), 1e-12);

  for (const CMat& u : g) {
    CHECK_MAT_NEAR(u.adjoint() * u, CMat::identity(2), 1e-12);
  }
  // det(a^k b) = 1 for all k.
  for (int k = 8; k < 16; ++k)
    CHECK(std::abs(g[k].det_2x2() - cxd{1, 0}) <= 1e-12);

  // All 16 elements distinct.
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = i + 1; j < 16; ++j)
      CHECK((g[i] - g[j]).frobenius_norm_sq() > 1e-9);

  // Closure: the product of any two codebook elements is in the codebook.
  for (const CMat& u : g)
    for (const CMat& v : g) {
      const CMat prod = u * v;
      double best = 1e300;
      for (const CMat& w : g)
        best = std::min(best, (prod - w).frobenius_norm_sq());
      CHECK(best <= 1e-20);
    }
}

TEST_CASE("alamouti with perfect csi shows full-diversity decay") {
  // The orthogonal design with genie CSI decays like a diversity-4 scheme.
  // The fit window sits at 12-16 dB where errors are still collectable at
  // unit-test scale; deeper windows need billions of trials (the BER is
  // already ~1e-7 at 18 dB) and belong to the acceptance-scale runs.
  SimConfig cfg;
  cfg.schemes = {"alamouti-r05-perfect"};
  cfg.snr_db_grid = {12.0, 14.0, 16.0};
  cfg.min_trials = 200000;
  cfg.max_trials = 10000000;
  cfg.target_bit_errors = 200;
  cfg.seed = 0xa1;
  cfg.workers = 2;

  const auto scheme = make_scheme("alamouti-r05-perfect");
  std::vector<BerPoint> points;
  for (int i = 0; i < 3; ++i) points.push_back(run_point(cfg, *scheme, i));
  CHECK(diversity_slope(points, 12.0, 16.0) >= 1.7);
}

TEST_CASE("differential decodes exactly without noise") {
  Rng rng(82);
  for (double rate : {0.5, 1.0}) {
    const DifferentialScheme scheme = make_differential(rate);
    for (int rep = 0; rep < 2000; ++rep) {
      const CMat h = random_matrix(2, 2, rng);
      if (std::abs(h.det_2x2()) < 1e-6) continue;
      const std::vector<int> bits = random_bits(scheme.bits_per_interval, rng);
      CHECK(differential_run_interval(scheme, bits, h, 0.0, rng) == bits);
    }
  }
}

TEST_CASE("differential reference and codewords carry unit power per use") {
  for (double rate : {0.5, 1.0}) {
    const DifferentialScheme scheme = make_differential(rate);
    for (int j = 0; j < 2; ++j) {
      double col = 0.0;
      for (int i = 0; i < 2; ++i) col += std::norm(scheme.reference(i, j));
      CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const CMat& v : scheme.codebook) {
      const CMat block = scheme.reference * v;
      for (int j = 0; j < 2; ++j) {
        double col = 0.0;
        for (int i = 0; i < 2; ++i) col += std::norm(block(i, j));
        CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("differential decision invariant under scaled-unitary left factors") {
  // The statistic depends on Y2 - Y1 V only, and any common left factor M
  // turns it into M (Y2 - Y1 V). Scaled unitaries preserve the Frobenius
  // ordering exactly, hence the decision.
  Rng rng(83);
  const DifferentialScheme scheme = make_differential(0.5);
  for (int rep = 0; rep < 500; ++rep) {
    const CMat h = random_matrix(2, 2, rng);
    const std::vector<int> bits = random_bits(2, rng);
    const int index = bits_to_symbol(bits);
    const CMat v = scheme.codebook[index];
    const CMat y1 = h * scheme.reference + sample_noise(2, 2, 0.2, rng);
    const CMat y2 = h * scheme.reference * v + sample_noise(2, 2, 0.2, rng);

    const auto decide = [&scheme](const CMat& a, const CMat& b) {
      int best = 0;
      double best_metric = 1e300;
      for (std::size_t i = 0; i < scheme.codebook.size(); ++i) {
        const double m = (b - a * scheme.codebook[i]).frobenius_norm_sq();
        if (m < best_metric) {
          best_metric = m;
          best = static_cast<int>(i);
        }
      }
      return best;
    };

    const double angle = rng.uniform() * 3.14159;
    const cxd scale = std::polar(0.2 + 3.0 * rng.uniform(), rng.uniform());
    const CMat factor = CMat(2, 2, {std::cos(angle), -std::sin(angle),  //
                                    std::sin(angle), std::cos(angle)}) *
                        scale;
    CHECK(decide(y1, y2) == decide(factor * y1, factor * y2));
  }
}
