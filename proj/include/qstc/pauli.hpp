#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qstc/cmat.hpp"

namespace qstc {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(PauliLetter l);

/// Element of the n-qubit Pauli group: j^phase_exp * (L_0 ⊗ L_1 ⊗ ... ⊗ L_{n-1}),
/// with the letters denoting the literal Pauli matrices. Products, inverses and
/// commutation are computed exactly in the (letter, phase exponent) domain; dense
/// matrices are generated only on demand.
class PauliOp {
 public:
  PauliOp(std::vector<PauliLetter> letters, int phase_exp = 0);

  static PauliOp identity(int n);
  /// Parses "XZX", "-jYII", "+XIZ"... — an optional {+,-,j,+j,-j} phase prefix
  /// followed by one letter per qubit.
  static PauliOp parse(std::string_view text);
  std::string str() const;

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  PauliLetter letter(int i) const { return letters_[i]; }
  int phase_exp() const { return phase_exp_; }  // power of j, in {0,1,2,3}
  cxd phase() const;

  // Symplectic components: X=(1,0), Y=(1,1), Z=(0,1), I=(0,0).
  bool x_bit(int i) const;
  bool z_bit(int i) const;

  PauliOp operator*(const PauliOp& rhs) const;
  PauliOp inverse() const;
  bool operator==(const PauliOp& rhs) const = default;

  /// Symplectic commutation test: true iff sum_i (x_i z'_i + z_i x'_i) is even.
  bool commutes_with(const PauliOp& rhs) const;

  CMat to_matrix() const;

 private:
  std::vector<PauliLetter> letters_;
  int phase_exp_ = 0;
};

/// One bit per generator: 0 = commutes, 1 = anticommutes.
std::vector<int> signature(const PauliOp& e, const std::vector<PauliOp>& generators);

}  // namespace qstc
