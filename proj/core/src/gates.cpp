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

#include "qcap/gates.hpp"

#include <unordered_map>
#include <unordered_set>

namespace qcap {

namespace {
const std::array<std::string, kNumGateKinds> kLabels = {
    "Xpi2", "Ypi2", "X3pi2", "Y3pi2", "Xpi", "Ypi", "Zpi", "CNOT"};

// Heisenberg-picture action of P(theta) on X and Z:
//   X(t): Y -> cos t Y + sin t Z,  Z -> cos t Z - sin t Y
//   Y(t): X -> cos t X - sin t Z,  Z -> cos t Z + sin t X
// evaluated at t in {pi/2, pi, 3pi/2}.
const std::array<SingleQubitAction, kNumSingleQubitGates> kActions = {{
    // Xpi2:  X -> X,  Z -> -Y
    {PauliLetter::X, 1, PauliLetter::Y, -1},
    // Ypi2:  X -> -Z, Z -> X
    {PauliLetter::Z, -1, PauliLetter::X, 1},
    // X3pi2: X -> X,  Z -> Y
    {PauliLetter::X, 1, PauliLetter::Y, 1},
    // Y3pi2: X -> Z,  Z -> -X
    {PauliLetter::Z, 1, PauliLetter::X, -1},
    // Xpi:   X -> X,  Z -> -Z
    {PauliLetter::X, 1, PauliLetter::Z, -1},
    // Ypi:   X -> -X, Z -> -Z
    {PauliLetter::X, -1, PauliLetter::Z, -1},
    // Zpi:   X -> -X, Z -> Z
    {PauliLetter::X, -1, PauliLetter::Z, 1},
}};
}  // namespace

const std::string &gate_label(GateKind kind) {
  return kLabels[static_cast<size_t>(kind)];
}

GateKind gate_from_label(const std::string &label) {
  static const std::unordered_map<std::string, GateKind> lookup = [] {
    std::unordered_map<std::string, GateKind> m;
    for (int i = 0; i < kNumGateKinds; ++i) {
      m.emplace(kLabels[i], static_cast<GateKind>(i));
    }
    return m;
  }();
  auto it = lookup.find(label);
  if (it == lookup.end()) {
    throw ValidationError("unknown gate label '" + label + "'");
  }
  return it->second;
}

bool is_two_qubit(GateKind kind) { return kind == GateKind::Cnot; }

GateKind gate_inverse(GateKind kind) {
  switch (kind) {
    case GateKind::Xpi2:
      return GateKind::X3pi2;
    case GateKind::X3pi2:
      return GateKind::Xpi2;
    case GateKind::Ypi2:
      return GateKind::Y3pi2;
    case GateKind::Y3pi2:
      return GateKind::Ypi2;
    default:
      return kind;  // Xpi, Ypi, Zpi, CNOT are self-inverse.
  }
}

void validate_layer(const Layer &layer, uint32_t n) {
  std::unordered_set<uint32_t> used;
  for (const Gate &g : layer.gates) {
    for (uint32_t q : g.qubits()) {
      if (q >= n) {
        throw ValidationError("gate qubit " + std::to_string(q) +
                              " out of range for n=" + std::to_string(n));
      }
      if (!used.insert(q).second) {
        throw ValidationError("overlapping gate supports at qubit " +
                              std::to_string(q));
      }
    }
    if (is_two_qubit(g.kind) && g.q0 == g.q1) {
      throw ValidationError("CNOT control equals target");
    }
  }
}

Layer invert_layer(const Layer &layer) {
  Layer inv;
  inv.gates.reserve(layer.gates.size());
  for (const Gate &g : layer.gates) {
    inv.gates.push_back({gate_inverse(g.kind), g.q0, g.q1});
  }
  return inv;
}

const SingleQubitAction &single_qubit_action(GateKind kind) {
  if (is_two_qubit(kind)) {
    throw ValidationError("single_qubit_action called with CNOT");
  }
  return kActions[static_cast<size_t>(kind)];
}

}  // namespace qcap
