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

#include "qcap/pauli.hpp"

namespace qcap {

char letter_to_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I:
      return 'I';
    case PauliLetter::X:
      return 'X';
    case PauliLetter::Y:
      return 'Y';
    case PauliLetter::Z:
      return 'Z';
  }
  throw ValidationError("invalid Pauli letter");
}

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I':
      return PauliLetter::I;
    case 'X':
      return PauliLetter::X;
    case 'Y':
      return PauliLetter::Y;
    case 'Z':
      return PauliLetter::Z;
    default:
      throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
  }
}

SignedPauli SignedPauli::from_string(const std::string &text) {
  if (text.empty()) throw ValidationError("empty Pauli string");
  size_t start = 0;
  int sign = 1;
  if (text[0] == '+' || text[0] == '-') {
    sign = text[0] == '-' ? -1 : 1;
    start = 1;
  }
  if (text.size() == start) throw ValidationError("Pauli string has no letters");
  SignedPauli p(static_cast<uint32_t>(text.size() - start));
  p.sign_ = static_cast<int8_t>(sign);
  for (size_t i = start; i < text.size(); ++i) {
    p.set_letter(static_cast<uint32_t>(i - start), letter_from_char(text[i]));
  }
  return p;
}

SignedPauli SignedPauli::single(uint32_t n, uint32_t qubit, PauliLetter l) {
  if (qubit >= n) throw ValidationError("qubit index out of range");
  SignedPauli p(n);
  p.set_letter(qubit, l);
  return p;
}

void SignedPauli::set_sign(int s) {
  if (s != 1 && s != -1) throw ValidationError("Pauli sign must be +1 or -1");
  sign_ = static_cast<int8_t>(s);
}

void SignedPauli::set_letter(uint32_t q, PauliLetter l) {
  if (q >= n_) throw ValidationError("qubit index out of range");
  uint64_t mask = 1ULL << (q & 63);
  bool xb = l == PauliLetter::X || l == PauliLetter::Y;
  bool zb = l == PauliLetter::Z || l == PauliLetter::Y;
  if (xb)
    x_[q >> 6] |= mask;
  else
    x_[q >> 6] &= ~mask;
  if (zb)
    z_[q >> 6] |= mask;
  else
    z_[q >> 6] &= ~mask;
}

bool SignedPauli::is_identity() const {
  for (uint64_t w : x_)
    if (w) return false;
  for (uint64_t w : z_)
    if (w) return false;
  return true;
}

uint32_t SignedPauli::weight() const {
  uint32_t w = 0;
  for (size_t i = 0; i < x_.size(); ++i) {
    w += static_cast<uint32_t>(std::popcount(x_[i] | z_[i]));
  }
  return w;
}

bool SignedPauli::contains_xy() const {
  for (uint64_t w : x_)
    if (w) return true;
  return false;
}

bool SignedPauli::commutes_with(const SignedPauli &other) const {
  if (n_ != other.n_) throw ValidationError("Pauli dimension mismatch");
  // Symplectic form: parity of |x1&z2| + |z1&x2|.
  uint32_t parity = 0;
  for (size_t i = 0; i < x_.size(); ++i) {
    parity ^= std::popcount(x_[i] & other.z_[i]) & 1;
    parity ^= std::popcount(z_[i] & other.x_[i]) & 1;
  }
  return parity == 0;
}

std::vector<uint32_t> SignedPauli::support() const {
  std::vector<uint32_t> s;
  for (uint32_t q = 0; q < n_; ++q) {
    if (x_bit(q) || z_bit(q)) s.push_back(q);
  }
  return s;
}

std::string SignedPauli::to_string() const {
  std::string s;
  s.reserve(n_ + 1);
  s.push_back(sign_ < 0 ? '-' : '+');
  for (uint32_t q = 0; q < n_; ++q) s.push_back(letter_to_char(letter(q)));
  return s;
}

uint64_t SignedPauli::word_hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto absorb = [&h](uint64_t w) {
    h ^= w;
    h *= 0x100000001b3ULL;
  };
  for (uint64_t w : x_) absorb(w);
  for (uint64_t w : z_) absorb(w);
  absorb(n_);
  return h;
}

int SignedPauli::word_compare(const SignedPauli &other) const {
  if (n_ != other.n_) return n_ < other.n_ ? -1 : 1;
  if (x_ != other.x_) return x_ < other.x_ ? -1 : 1;
  if (z_ != other.z_) return z_ < other.z_ ? -1 : 1;
  return 0;
}

PauliProduct::PauliProduct(uint32_t n)
    : n_(n), phase_(0), x_(SignedPauli::words_for(n), 0),
      z_(SignedPauli::words_for(n), 0) {}

namespace {
int popcount_and(const std::vector<uint64_t> &a,
                 const std::vector<uint64_t> &b) {
  int c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}
}  // namespace

void PauliProduct::load(const SignedPauli &p) {
  if (p.num_qubits() != n_) throw ValidationError("Pauli dimension mismatch");
  x_ = p.x_;
  z_ = p.z_;
  // W(x,z) = i^{|x&z|} X(x) Z(z), plus 2 for a negative sign.
  phase_ = popcount_and(x_, z_) & 3;
  if (p.sign() < 0) phase_ = (phase_ + 2) & 3;
}

void PauliProduct::multiply_right(const SignedPauli &p) {
  if (p.num_qubits() != n_) throw ValidationError("Pauli dimension mismatch");
  // (i^g X(x1)Z(z1)) * (s i^{|x2&z2|} X(x2)Z(z2))
  //   = s i^{g + |x2&z2| + 2|z1&x2|} X(x1^x2) Z(z1^z2).
  int ph = popcount_and(p.x_, p.z_) + 2 * popcount_and(z_, p.x_);
  if (p.sign() < 0) ph += 2;
  phase_ = (phase_ + ph) & 3;
  for (size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= p.x_[i];
    z_[i] ^= p.z_[i];
  }
}

SignedPauli PauliProduct::to_hermitian() const {
  SignedPauli out(n_);
  out.x_ = x_;
  out.z_ = z_;
  // i^phase X(x)Z(z) = i^{phase - |x&z|} W(x,z).
  int ph = (phase_ - popcount_and(x_, z_)) & 3;
  if (ph == 0) {
    out.sign_ = 1;
  } else if (ph == 2) {
    out.sign_ = -1;
  } else {
    throw ValidationError("Pauli product collapsed to a non-Hermitian phase");
  }
  return out;
}

}  // namespace qcap
