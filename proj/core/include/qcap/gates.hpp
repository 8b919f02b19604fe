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

#ifndef QCAP_GATES_HPP
#define QCAP_GATES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qcap/common.hpp"
#include "qcap/pauli.hpp"

namespace qcap {

// The supported Clifford gate set: pi/2, pi and 3pi/2 rotations about X and Y,
// a pi rotation about Z, and CNOT. P(theta) = exp(-i theta P / 2).
enum class GateKind : uint8_t {
  Xpi2 = 0,
  Ypi2 = 1,
  X3pi2 = 2,
  Y3pi2 = 3,
  Xpi = 4,
  Ypi = 5,
  Zpi = 6,
  Cnot = 7,
};

inline constexpr int kNumSingleQubitGates = 7;
inline constexpr int kNumGateKinds = 8;

const std::string &gate_label(GateKind kind);
GateKind gate_from_label(const std::string &label);
bool is_two_qubit(GateKind kind);
GateKind gate_inverse(GateKind kind);

// One gate application. q1 is used only by CNOT (q0 = control, q1 = target).
struct Gate {
  GateKind kind;
  uint32_t q0;
  uint32_t q1 = UINT32_MAX;

  std::vector<uint32_t> qubits() const {
    if (is_two_qubit(kind)) return {q0, q1};
    return {q0};
  }
  bool operator==(const Gate &o) const {
    return kind == o.kind && q0 == o.q0 && q1 == o.q1;
  }
};

// A circuit layer: parallel gates on pairwise disjoint qubits.
struct Layer {
  std::vector<Gate> gates;
  bool operator==(const Layer &o) const { return gates == o.gates; }
};

// Throws ValidationError if two gates share a qubit or an index is >= n.
void validate_layer(const Layer &layer, uint32_t n);

// Gate-by-gate inverse (the gate set is closed under inversion).
Layer invert_layer(const Layer &layer);

// Conjugation action of a single-qubit gate, as the images of X and Z.
struct SingleQubitAction {
  PauliLetter x_image;
  int x_sign;
  PauliLetter z_image;
  int z_sign;
};

// Action table for the 7 single-qubit gates, indexed by GateKind.
const SingleQubitAction &single_qubit_action(GateKind kind);

}  // namespace qcap

#endif  // QCAP_GATES_HPP
