// Copyright 2026 The qcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCAP_PAULI_HPP
#define QCAP_PAULI_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qcap/common.hpp"

namespace qcap {

enum class PauliLetter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_to_char(PauliLetter l);
PauliLetter letter_from_char(char c);

// Hermitian n-qubit Pauli operator stored as symplectic bitmasks plus a real
// sign. Per qubit the letter is (x,z): (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
// Internally products use the Y = iXZ convention; every public value is a
// Hermitian Pauli whose sign is exactly +1 or -1.
class SignedPauli {
 public:
  SignedPauli() : n_(0), sign_(1) {}
  explicit SignedPauli(uint32_t n)
      : n_(n), sign_(1), x_(words_for(n), 0), z_(words_for(n), 0) {}

  // Parses "+XIZY" / "-ZZ" / "XX" (sign optional, defaults to +).
  // Letter i of the string is qubit i.
  static SignedPauli from_string(const std::string &text);

  // Single non-identity letter at `qubit`, identity elsewhere, sign +1.
  static SignedPauli single(uint32_t n, uint32_t qubit, PauliLetter l);

  uint32_t num_qubits() const { return n_; }
  int sign() const { return sign_; }
  void set_sign(int s);

  PauliLetter letter(uint32_t q) const {
    bool xb = x_bit(q), zb = z_bit(q);
    if (xb) return zb ? PauliLetter::Y : PauliLetter::X;
    return zb ? PauliLetter::Z : PauliLetter::I;
  }

  void set_letter(uint32_t q, PauliLetter l);

  bool x_bit(uint32_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(uint32_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }

  const std::vector<uint64_t> &x_words() const { return x_; }
  const std::vector<uint64_t> &z_words() const { return z_; }

  bool is_identity() const;

  // Number of qubits carrying a non-identity letter.
  uint32_t weight() const;

  // True iff some qubit carries X or Y.
  bool contains_xy() const;

  // True iff this commutes with other (signs are irrelevant).
  bool commutes_with(const SignedPauli &other) const;

  SignedPauli negated() const {
    SignedPauli p = *this;
    p.sign_ = -p.sign_;
    return p;
  }

  // Qubits with a non-identity letter, ascending.
  std::vector<uint32_t> support() const;

  // "+XIZY" with letter i = qubit i.
  std::string to_string() const;

  // Equality includes the sign.
  bool operator==(const SignedPauli &other) const {
    return n_ == other.n_ && sign_ == other.sign_ && x_ == other.x_ &&
           z_ == other.z_;
  }
  bool operator!=(const SignedPauli &other) const { return !(*this == other); }

  // Sign-insensitive comparisons for canonical ordering and map keys.
  bool same_word(const SignedPauli &other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }
  uint64_t word_hash() const;
  // Lexicographic (x, z) word comparison; ignores sign.
  int word_compare(const SignedPauli &other) const;

  static uint32_t words_for(uint32_t n) { return (n + 63) >> 6; }

 private:
  friend class PauliProduct;
  uint32_t n_;
  int8_t sign_;
  std::vector<uint64_t> x_, z_;
};

// Accumulator for products of signed Paulis. Represents i^phase * X(x) * Z(z)
// with the X block ordered before the Z block; phase is tracked mod 4 so that
// intermediate non-Hermitian products are handled exactly.
class PauliProduct {
 public:
  explicit PauliProduct(uint32_t n);

  // Seeds the accumulator with a Hermitian Pauli.
  void load(const SignedPauli &p);

  // Adds `exponent` (mod 4) to the tracked power of i.
  void seed_phase(int exponent) { phase_ = ((phase_ + exponent) % 4 + 4) % 4; }

  // Right-multiplies by a Hermitian Pauli.
  void multiply_right(const SignedPauli &p);

  // Collapses to a Hermitian Pauli. Throws if the accumulated phase is +/-i,
  // which cannot happen for conjugation by a valid Clifford.
  SignedPauli to_hermitian() const;

 private:
  uint32_t n_;
  int phase_;  // exponent of i, mod 4
  std::vector<uint64_t> x_, z_;
};

}  // namespace qcap

#endif  // QCAP_PAULI_HPP
