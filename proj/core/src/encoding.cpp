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

#include "qcap/encoding.hpp"

#include <algorithm>

namespace qcap {

const std::string &metric_label(Metric m) {
  static const std::string fidelity = "fidelity";
  static const std::string pst = "pst";
  return m == Metric::Pst ? pst : fidelity;
}

Metric metric_from_label(const std::string &label) {
  if (label == "fidelity") return Metric::Fidelity;
  if (label == "pst") return Metric::Pst;
  throw ValidationError("unknown metric '" + label + "'");
}

ChannelSpec ChannelSpec::for_graph(const ConnectivityGraph &g) {
  ChannelSpec spec;
  spec.max_degree = g.max_degree();
  spec.n_ch = kNumSingleQubitGates + 2 * spec.max_degree;
  return spec;
}

uint32_t ChannelSpec::single_qubit_channel(GateKind kind) const {
  if (is_two_qubit(kind)) {
    throw ValidationError("CNOT has no single-qubit channel");
  }
  return static_cast<uint32_t>(kind);
}

uint32_t ChannelSpec::cnot_channel(uint32_t slot, uint32_t role) const {
  if (slot >= max_degree || role > 1) {
    throw ValidationError("CNOT channel slot/role out of range");
  }
  return kNumSingleQubitGates + 2 * slot + role;
}

namespace {
uint32_t neighbor_slot(const ConnectivityGraph &g, uint32_t q,
                       uint32_t partner) {
  const auto &nb = g.neighbors(q);
  auto it = std::lower_bound(nb.begin(), nb.end(), partner);
  if (it == nb.end() || *it != partner) {
    throw ValidationError("CNOT between non-adjacent qubits " +
                          std::to_string(q) + "," + std::to_string(partner));
  }
  return static_cast<uint32_t>(it - nb.begin());
}
}  // namespace

CircuitTensor encode_circuit(const Circuit &c, const ConnectivityGraph &g,
                             const ChannelSpec &spec, uint32_t d_max) {
  if (c.depth() > d_max) {
    throw ValidationError("circuit depth " + std::to_string(c.depth()) +
                          " exceeds d_max " + std::to_string(d_max));
  }
  CircuitTensor tensor;
  tensor.n = c.n;
  tensor.d_max = d_max;
  tensor.n_ch = spec.n_ch;
  tensor.true_depth = c.depth();
  size_t total_bits = static_cast<size_t>(c.n) * d_max * spec.n_ch;
  tensor.bits.assign((total_bits + 7) / 8, 0);
  tensor.measured.assign(c.n, 0);
  tensor.target_bits.assign(c.n, 0);
  for (uint32_t t = 0; t < c.depth(); ++t) {
    for (const Gate &gate : c.layers[t].gates) {
      if (is_two_qubit(gate.kind)) {
        uint32_t ctrl = gate.q0, tgt = gate.q1;
        tensor.set(ctrl, t, spec.cnot_channel(neighbor_slot(g, ctrl, tgt), 0));
        tensor.set(tgt, t, spec.cnot_channel(neighbor_slot(g, tgt, ctrl), 1));
      } else {
        tensor.set(gate.q0, t, spec.single_qubit_channel(gate.kind));
      }
    }
  }
  return tensor;
}

void encode_measurement(const Circuit &c, Metric metric,
                        CircuitTensor *tensor) {
  std::fill(tensor->measured.begin(), tensor->measured.end(), 0);
  std::fill(tensor->target_bits.begin(), tensor->target_bits.end(), 0);
  for (uint32_t q : c.active_qubits) tensor->measured[q] = 1;
  if (metric == Metric::Pst) {
    std::vector<uint8_t> bits = target_bitstring(c);  // throws if not definite
    for (size_t i = 0; i < c.active_qubits.size(); ++i) {
      tensor->target_bits[c.active_qubits[i]] = bits[i];
    }
  }
}

Circuit decode_circuit(const CircuitTensor &tensor, const ConnectivityGraph &g,
                       const ChannelSpec &spec) {
  if (tensor.n != g.num_qubits() || tensor.n_ch != spec.n_ch) {
    throw ValidationError("tensor does not match graph/channel spec");
  }
  Circuit c;
  c.n = tensor.n;
  for (uint32_t q = 0; q < tensor.n; ++q) {
    if (tensor.measured[q]) c.active_qubits.push_back(q);
  }
  for (uint32_t t = 0; t < tensor.true_depth; ++t) {
    Layer layer;
    for (uint32_t q = 0; q < tensor.n; ++q) {
      int channel = -1;
      for (uint32_t ch = 0; ch < tensor.n_ch; ++ch) {
        if (tensor.get(q, t, ch)) {
          if (channel >= 0) {
            throw ValidationError("tensor fiber is not one-hot");
          }
          channel = static_cast<int>(ch);
        }
      }
      if (channel < 0) continue;
      if (channel < kNumSingleQubitGates) {
        layer.gates.push_back({static_cast<GateKind>(channel), q, UINT32_MAX});
      } else {
        uint32_t rel = static_cast<uint32_t>(channel) - kNumSingleQubitGates;
        uint32_t slot = rel / 2, role = rel % 2;
        const auto &nb = g.neighbors(q);
        if (slot >= nb.size()) {
          throw ValidationError("CNOT channel refers to a missing neighbor");
        }
        uint32_t partner = nb[slot];
        if (role == 0) {
          layer.gates.push_back({GateKind::Cnot, q, partner});
        }
        // role == 1 (target) is reconstructed from the control's fiber; it is
        // validated below by re-encoding.
      }
    }
    std::sort(layer.gates.begin(), layer.gates.end(),
              [](const Gate &a, const Gate &b) {
                return std::min(a.q0, a.q1) < std::min(b.q0, b.q1);
              });
    c.layers.push_back(std::move(layer));
  }
  // Round-trip validation catches inconsistent control/target fibers.
  CircuitTensor check = encode_circuit(c, g, spec, tensor.d_max);
  check.measured = tensor.measured;
  check.target_bits = tensor.target_bits;
  if (!(check == tensor)) {
    throw ValidationError("tensor decode/encode round trip mismatch");
  }
  return c;
}

}  // namespace qcap
