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

#include "qcap/tableau.hpp"

namespace qcap {

CliffordTableau::CliffordTableau(uint32_t n) : n_(n) {
  x_images_.reserve(n);
  z_images_.reserve(n);
  for (uint32_t q = 0; q < n; ++q) {
    x_images_.push_back(SignedPauli::single(n, q, PauliLetter::X));
    z_images_.push_back(SignedPauli::single(n, q, PauliLetter::Z));
  }
}

CliffordTableau CliffordTableau::identity(uint32_t n) {
  return CliffordTableau(n);
}

SignedPauli CliffordTableau::conjugate(const SignedPauli &p) const {
  if (p.num_qubits() != n_) {
    throw ValidationError("tableau/Pauli dimension mismatch");
  }
  // Decompose W(x,z) = i^{|x&z|} X(x) Z(z); conjugation is a homomorphism, so
  // U p U^dag = sign * i^{|x&z|} prod_q (U X_q U^dag)^{x_q}
  //                                 prod_q (U Z_q U^dag)^{z_q}.
  PauliProduct acc(n_);
  int canonical = 0;
  for (uint32_t q = 0; q < n_; ++q) {
    if (p.x_bit(q) && p.z_bit(q)) ++canonical;
  }
  acc.seed_phase(canonical + (p.sign() < 0 ? 2 : 0));
  for (uint32_t q = 0; q < n_; ++q) {
    if (p.x_bit(q)) acc.multiply_right(x_images_[q]);
  }
  for (uint32_t q = 0; q < n_; ++q) {
    if (p.z_bit(q)) acc.multiply_right(z_images_[q]);
  }
  return acc.to_hermitian();
}

CliffordTableau CliffordTableau::compose(const CliffordTableau &a,
                                         const CliffordTableau &b) {
  if (a.n_ != b.n_) throw ValidationError("tableau dimension mismatch");
  CliffordTableau out(a.n_);
  for (uint32_t q = 0; q < a.n_; ++q) {
    out.x_images_[q] = a.conjugate(b.x_images_[q]);
    out.z_images_[q] = a.conjugate(b.z_images_[q]);
  }
  return out;
}

bool CliffordTableau::is_identity() const {
  for (uint32_t q = 0; q < n_; ++q) {
    if (x_images_[q] != SignedPauli::single(n_, q, PauliLetter::X)) {
      return false;
    }
    if (z_images_[q] != SignedPauli::single(n_, q, PauliLetter::Z)) {
      return false;
    }
  }
  return true;
}

CliffordTableau CliffordTableau::of_layer(const Layer &layer, uint32_t n) {
  validate_layer(layer, n);
  CliffordTableau t(n);
  for (const Gate &g : layer.gates) {
    if (is_two_qubit(g.kind)) {
      uint32_t c = g.q0, tq = g.q1;
      // CNOT: X_c -> X_c X_t, Z_t -> Z_c Z_t; X_t and Z_c unchanged.
      SignedPauli xc(n);
      xc.set_letter(c, PauliLetter::X);
      xc.set_letter(tq, PauliLetter::X);
      t.x_images_[c] = xc;
      SignedPauli zt(n);
      zt.set_letter(c, PauliLetter::Z);
      zt.set_letter(tq, PauliLetter::Z);
      t.z_images_[tq] = zt;
    } else {
      const SingleQubitAction &act = single_qubit_action(g.kind);
      SignedPauli xi = SignedPauli::single(n, g.q0, act.x_image);
      xi.set_sign(act.x_sign);
      SignedPauli zi = SignedPauli::single(n, g.q0, act.z_image);
      zi.set_sign(act.z_sign);
      t.x_images_[g.q0] = xi;
      t.z_images_[g.q0] = zi;
    }
  }
  return t;
}

CliffordTableau CliffordTableau::of_layers(const std::vector<Layer> &layers,
                                           uint32_t n) {
  CliffordTableau t = identity(n);
  for (const Layer &layer : layers) {
    t = compose(of_layer(layer, n), t);
  }
  return t;
}

}  // namespace qcap
