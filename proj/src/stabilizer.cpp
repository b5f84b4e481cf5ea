#include "qstc/stabilizer.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qstc {

namespace {

// GF(2) rank of the symplectic bit matrix (one [x|z] row per generator).
int symplectic_rank(const std::vector<PauliOp>& ops) {
  const int n = ops[0].num_qubits();
  std::vector<std::uint64_t> rows;
  rows.reserve(ops.size());
  for (const PauliOp& op : ops) {
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
      if (op.x_bit(i)) r |= std::uint64_t{1} << (2 * i);
      if (op.z_bit(i)) r |= std::uint64_t{1} << (2 * i + 1);
    }
    rows.push_back(r);
  }
  int rank = 0;
  for (int bit = 0; bit < 2 * n; ++bit) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] >> bit & 1)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != static_cast<std::size_t>(rank) && (rows[r] >> bit & 1))
        rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

bool is_identity_letters(const PauliOp& op) {
  for (int i = 0; i < op.num_qubits(); ++i)
    if (op.letter(i) != PauliLetter::I) return false;
  return true;
}

// Modified Gram-Schmidt over the columns of m; returns an orthonormal basis
// of the column space.
CMat orthonormal_column_basis(const CMat& m, double tol) {
  std::vector<CMat> basis;
  for (int j = 0; j < m.cols(); ++j) {
    CMat v(m.rows(), 1);
    for (int i = 0; i < m.rows(); ++i) v(i, 0) = m(i, j);
    for (const CMat& b : basis) {
      cxd proj{0.0, 0.0};
      for (int i = 0; i < m.rows(); ++i) proj += std::conj(b(i, 0)) * v(i, 0);
      for (int i = 0; i < m.rows(); ++i) v(i, 0) -= proj * b(i, 0);
    }
    const double norm = std::sqrt(v.frobenius_norm_sq());
    if (norm > tol) {
      v *= cxd{1.0 / norm, 0.0};
      basis.push_back(std::move(v));
    }
  }
  if (basis.empty()) throw std::invalid_argument("stabilizer: empty eigenspace");
  CMat out(m.rows(), static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (int i = 0; i < m.rows(); ++i) out(i, static_cast<int>(j)) = basis[j](i, 0);
  return out;
}

}  // namespace

void validate_stabilizer_generators(const std::vector<PauliOp>& generators) {
  if (generators.empty())
    throw std::invalid_argument("stabilizer: generator set is empty");
  if (generators.size() > 16)
    throw std::invalid_argument("stabilizer: generator set too large");
  const int n = generators[0].num_qubits();
  for (const PauliOp& g : generators) {
    if (g.num_qubits() != n)
      throw std::invalid_argument("stabilizer: generators act on different qubit counts");
    if (g.phase_exp() % 2 != 0)
      throw std::invalid_argument("stabilizer: generator " + g.str() + " is not Hermitian");
  }
  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b)
      if (!generators[a].commutes_with(generators[b]))
        throw std::invalid_argument("stabilizer: generators " + generators[a].str() +
                                    " and " + generators[b].str() + " anticommute");

  // Scan every nonempty subset product for a scalar multiple of the identity.
  const std::size_t m = generators.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    PauliOp prod = PauliOp::identity(n);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) prod = prod * generators[i];
    if (is_identity_letters(prod) && prod.phase_exp() != 0)
      throw std::invalid_argument(
          "stabilizer: generated group contains a nontrivial multiple of the identity");
  }

  if (symplectic_rank(generators) != static_cast<int>(m))
    throw std::invalid_argument("stabilizer: generators are not independent");
}

void validate_code(const std::vector<PauliOp>& generators,
                   const std::vector<PauliOp>& errors) {
  validate_stabilizer_generators(generators);
  const int n = generators[0].num_qubits();
  for (const PauliOp& e : errors)
    if (e.num_qubits() != n)
      throw std::invalid_argument("stabilizer: error " + e.str() +
                                  " acts on the wrong qubit count");
  std::vector<std::vector<int>> sigs;
  for (const PauliOp& e : errors) sigs.push_back(signature(e, generators));
  for (std::size_t a = 0; a < sigs.size(); ++a)
    for (std::size_t b = a + 1; b < sigs.size(); ++b)
      if (sigs[a] == sigs[b])
        throw std::invalid_argument("stabilizer: errors " + errors[a].str() + " and " +
                                    errors[b].str() +
                                    " share a commutation signature and are not "
                                    "distinguishable");
}

CMat eigenspace_basis(const std::vector<PauliOp>& generators) {
  validate_stabilizer_generators(generators);
  const int n = generators[0].num_qubits();
  const int dim = 1 << n;
  CMat projector = CMat::identity(dim);
  for (const PauliOp& g : generators) {
    CMat factor = (CMat::identity(dim) + g.to_matrix()) * cxd{0.5, 0.0};
    projector = projector * factor;
  }
  CMat basis = orthonormal_column_basis(projector, 1e-9);
  const int expected = 1 << (n - static_cast<int>(generators.size()));
  if (basis.cols() != expected)
    throw std::logic_error("stabilizer: eigenspace dimension mismatch");
  return basis;
}

StabilizerCode build_code() {
  StabilizerCode code;
  code.generators = {PauliOp::parse("XZX"), PauliOp::parse("XXZ")};
  code.errors = {PauliOp::parse("III"), PauliOp::parse("IIX"), PauliOp::parse("IIZ"),
                 PauliOp::parse("IIY")};
  validate_code(code.generators, code.errors);

  for (const PauliOp& e : code.errors)
    code.signatures.push_back(signature(e, code.generators));

  code.basis = CMat(8, 2, {
      1, 0,    //
      0, -1,   //
      0, -1,   //
      -1, 0,   //
      0, -1,   //
      1, 0,    //
      1, 0,    //
      0, 1,    //
  });

  for (const PauliOp& e : code.errors) code.error_matrices.push_back(e.to_matrix());

  // P_k = prod_n (I + (-1)^{sig_k[n]} S_n)/2, signs bound to the commutation
  // signature of error k so the projector selects exactly its error subspace.
  const CMat eye = CMat::identity(8);
  for (const std::vector<int>& sig : code.signatures) {
    CMat p = eye;
    for (std::size_t g = 0; g < code.generators.size(); ++g) {
      const cxd sign = sig[g] == 0 ? cxd{1.0, 0.0} : cxd{-1.0, 0.0};
      p = p * ((eye + sign * code.generators[g].to_matrix()) * cxd{0.5, 0.0});
    }
    code.projectors.push_back(std::move(p));
  }
  return code;
}

CMat encode(const StabilizerCode& code, const CMat& s) {
  if (s.rows() != code.basis.cols() || s.cols() != 1)
    throw std::invalid_argument("encode: symbol must be a 2x1 column vector");
  const double norm_sq = s.frobenius_norm_sq();
  if (std::abs(norm_sq - 1.0) > 1e-9)
    throw std::invalid_argument("encode: symbol must have unit norm");
  return code.basis * s;
}

CMat encode_matrix(const StabilizerCode& code, const CMat& s) {
  return unvec_2x4(encode(code, s));
}

}  // namespace qstc
