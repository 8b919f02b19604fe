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

#ifndef QCAP_TABLEAU_HPP
#define QCAP_TABLEAU_HPP

#include <vector>

#include "qcap/gates.hpp"
#include "qcap/pauli.hpp"

namespace qcap {

// Symplectic representation of a Clifford unitary U as the conjugation images
// U X_i U^dag and U Z_i U^dag. Immutable after construction.
class CliffordTableau {
 public:
  static CliffordTableau identity(uint32_t n);

  uint32_t num_qubits() const { return n_; }
  const SignedPauli &x_image(uint32_t q) const { return x_images_[q]; }
  const SignedPauli &z_image(uint32_t q) const { return z_images_[q]; }

  // Returns U p U^dag with the sign tracked exactly.
  SignedPauli conjugate(const SignedPauli &p) const;

  // Tableau of "apply b, then a" (the unitary product U_a U_b).
  static CliffordTableau compose(const CliffordTableau &a,
                                 const CliffordTableau &b);

  bool is_identity() const;

  bool operator==(const CliffordTableau &o) const {
    return n_ == o.n_ && x_images_ == o.x_images_ && z_images_ == o.z_images_;
  }

  // Tableau of one circuit layer; untouched qubits act as identity.
  // Throws on overlapping gate supports or out-of-range qubits.
  static CliffordTableau of_layer(const Layer &layer, uint32_t n);

  // Tableau of a whole layer sequence, first layer applied first.
  static CliffordTableau of_layers(const std::vector<Layer> &layers,
                                   uint32_t n);

 private:
  explicit CliffordTableau(uint32_t n);

  uint32_t n_;
  std::vector<SignedPauli> x_images_;
  std::vector<SignedPauli> z_images_;
};

inline CliffordTableau tableau_of_layer(const Layer &layer, uint32_t n) {
  return CliffordTableau::of_layer(layer, n);
}

}  // namespace qcap

#endif  // QCAP_TABLEAU_HPP
