#include "qstc/pauli.hpp"

#include <array>
#include <stdexcept>

namespace qstc {

namespace {

struct LetterProduct {
  PauliLetter letter;
  int phase_exp;  // power of j contributed by the single-qubit product
};

// Row = left operand, column = right operand, indexed I,X,Y,Z.
// XY = jZ, YZ = jX, ZX = jY and the reversed orders pick up -j.
constexpr LetterProduct kLetterMul[4][4] = {
    {{PauliLetter::I, 0}, {PauliLetter::X, 0}, {PauliLetter::Y, 0}, {PauliLetter::Z, 0}},
    {{PauliLetter::X, 0}, {PauliLetter::I, 0}, {PauliLetter::Z, 1}, {PauliLetter::Y, 3}},
    {{PauliLetter::Y, 0}, {PauliLetter::Z, 3}, {PauliLetter::I, 0}, {PauliLetter::X, 1}},
    {{PauliLetter::Z, 0}, {PauliLetter::Y, 1}, {PauliLetter::X, 3}, {PauliLetter::I, 0}},
};

constexpr bool kXBit[4] = {false, true, true, false};
constexpr bool kZBit[4] = {false, false, true, true};

const CMat& letter_matrix(PauliLetter l) {
  static const CMat kI = CMat::identity(2);
  static const CMat kX(2, 2, {0, 1, 1, 0});
  static const CMat kY(2, 2, {0, cxd{0, -1}, cxd{0, 1}, 0});
  static const CMat kZ(2, 2, {1, 0, 0, -1});
  switch (l) {
    case PauliLetter::I: return kI;
    case PauliLetter::X: return kX;
    case PauliLetter::Y: return kY;
    default: return kZ;
  }
}

}  // namespace

char letter_char(PauliLetter l) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(l)];
}

PauliOp::PauliOp(std::vector<PauliLetter> letters, int phase_exp)
    : letters_(std::move(letters)), phase_exp_(((phase_exp % 4) + 4) % 4) {
  if (letters_.empty())
    throw std::invalid_argument("pauli: operator needs at least one qubit");
}

PauliOp PauliOp::identity(int n) {
  if (n <= 0) throw std::invalid_argument("pauli: qubit count must be positive");
  return PauliOp(std::vector<PauliLetter>(n, PauliLetter::I), 0);
}

PauliOp PauliOp::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'j') {
    phase = 1;
    ++pos;
  }
  if (negative) phase = (phase + 2) % 4;

  std::vector<PauliLetter> letters;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': letters.push_back(PauliLetter::I); break;
      case 'X': letters.push_back(PauliLetter::X); break;
      case 'Y': letters.push_back(PauliLetter::Y); break;
      case 'Z': letters.push_back(PauliLetter::Z); break;
      default:
        throw std::invalid_argument("pauli: unexpected character '" +
                                    std::string(1, text[pos]) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  if (letters.empty())
    throw std::invalid_argument("pauli: no letters in \"" + std::string(text) + "\"");
  return PauliOp(std::move(letters), phase);
}

std::string PauliOp::str() const {
  static constexpr const char* kPrefix[] = {"", "j", "-", "-j"};
  std::string out = kPrefix[phase_exp_];
  for (PauliLetter l : letters_) out += letter_char(l);
  return out;
}

cxd PauliOp::phase() const {
  static constexpr cxd kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[phase_exp_];
}

bool PauliOp::x_bit(int i) const { return kXBit[static_cast<int>(letters_[i])]; }
bool PauliOp::z_bit(int i) const { return kZBit[static_cast<int>(letters_[i])]; }

PauliOp PauliOp::operator*(const PauliOp& rhs) const {
  if (num_qubits() != rhs.num_qubits())
    throw std::invalid_argument("pauli: product of operators on different qubit counts");
  std::vector<PauliLetter> letters(letters_.size());
  int phase = phase_exp_ + rhs.phase_exp_;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const LetterProduct p =
        kLetterMul[static_cast<int>(letters_[i])][static_cast<int>(rhs.letters_[i])];
    letters[i] = p.letter;
    phase += p.phase_exp;
  }
  return PauliOp(std::move(letters), phase);
}

PauliOp PauliOp::inverse() const {
  // Letters are involutions, so only the phase flips.
  return PauliOp(letters_, -phase_exp_);
}

bool PauliOp::commutes_with(const PauliOp& rhs) const {
  if (num_qubits() != rhs.num_qubits())
    throw std::invalid_argument("pauli: commutation of operators on different qubit counts");
  int acc = 0;
  for (int i = 0; i < num_qubits(); ++i) {
    acc += (x_bit(i) && rhs.z_bit(i)) ? 1 : 0;
    acc += (z_bit(i) && rhs.x_bit(i)) ? 1 : 0;
  }
  return acc % 2 == 0;
}

CMat PauliOp::to_matrix() const {
  CMat out = letter_matrix(letters_[0]);
  for (std::size_t i = 1; i < letters_.size(); ++i)
    out = kron(out, letter_matrix(letters_[i]));
  out *= phase();
  return out;
}

std::vector<int> signature(const PauliOp& e, const std::vector<PauliOp>& generators) {
  std::vector<int> bits;
  bits.reserve(generators.size());
  for (const PauliOp& g : generators) bits.push_back(e.commutes_with(g) ? 0 : 1);
  return bits;
}

}  // namespace qstc
