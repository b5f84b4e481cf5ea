#pragma once

#include <vector>

#include "qstc/cmat.hpp"
#include "qstc/pauli.hpp"

namespace qstc {

/// The three-qubit code used by the transmitter and receiver.
///
/// Generators S0 = XZX and S1 = XXZ commute and jointly fix a two-dimensional
/// code space. The channel error set is E0..E3 = III, IIX, IIZ, IIY; each
/// error carries a distinct commutation signature against the generators, so
/// the four error subspaces are mutually orthogonal and the projectors P0..P3
/// resolve the identity.
///
/// The basis matrix C = [v0 v1] keeps the columns at squared norm 4, exactly
/// as constructed, so that every codeword satisfies t*t = 4 (unit average
/// power over the four channel uses).
struct StabilizerCode {
  std::vector<PauliOp> generators;
  std::vector<PauliOp> errors;
  std::vector<std::vector<int>> signatures;  // one bit row per error
  CMat basis;                                // 8x2
  std::vector<CMat> error_matrices;          // dense 8x8 realizations of errors
  std::vector<CMat> projectors;              // four 8x8 orthogonal projectors
};

StabilizerCode build_code();

/// Throws std::invalid_argument unless the operators form a valid independent
/// stabilizer generating set (Hermitian, pairwise commuting, independent, and
/// the generated group excludes -I and the imaginary multiples of I).
void validate_stabilizer_generators(const std::vector<PauliOp>& generators);

/// validate_stabilizer_generators plus the error-correction condition: every
/// error must have a distinct commutation signature against the generators.
void validate_code(const std::vector<PauliOp>& generators,
                   const std::vector<PauliOp>& errors);

/// Orthonormal basis of the joint +1 eigenspace of the generators, computed
/// from the code-space projector. Independent of the hard-coded basis; used
/// to cross-check that v0, v1 span exactly this space.
CMat eigenspace_basis(const std::vector<PauliOp>& generators);

/// t = C s for a unit-norm symbol s in C^2; throws if |s*s - 1| > 1e-9.
CMat encode(const StabilizerCode& code, const CMat& s);

/// The 2x4 space-time codeword T = unvec(C s).
CMat encode_matrix(const StabilizerCode& code, const CMat& s);

}  // namespace qstc
