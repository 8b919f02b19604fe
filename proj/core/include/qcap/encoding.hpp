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

#ifndef QCAP_ENCODING_HPP
#define QCAP_ENCODING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qcap/circuit.hpp"
#include "qcap/graph.hpp"

namespace qcap {

enum class Metric : uint8_t { Fidelity = 0, Pst = 1 };

const std::string &metric_label(Metric m);
Metric metric_from_label(const std::string &label);

// Channel layout for the one-hot gate tensor: 7 single-qubit channels in gate
// order, then 2 channels per neighbor slot (control/target x partner index in
// the qubit's ascending neighbor list). n_ch = 7 + 2 * max_degree.
struct ChannelSpec {
  uint32_t max_degree = 0;
  uint32_t n_ch = 0;

  static ChannelSpec for_graph(const ConnectivityGraph &g);

  uint32_t single_qubit_channel(GateKind kind) const;
  // role: 0 = control, 1 = target; slot = partner's index among the qubit's
  // sorted neighbors.
  uint32_t cnot_channel(uint32_t slot, uint32_t role) const;
};

// One-hot circuit tensor I (n x d_max x n_ch bits) plus the measurement
// matrix M (2 x n bits: measured mask, target bitstring). Fibers at layers
// >= true_depth are zero padding; an idle qubit has an all-zero fiber.
struct CircuitTensor {
  uint32_t n = 0;
  uint32_t d_max = 0;
  uint32_t n_ch = 0;
  uint32_t true_depth = 0;
  std::vector<uint8_t> bits;        // packed, index (q * d_max + t) * n_ch + ch
  std::vector<uint8_t> measured;    // n entries, 0/1
  std::vector<uint8_t> target_bits; // n entries, 0/1

  bool get(uint32_t q, uint32_t t, uint32_t ch) const {
    size_t idx = (static_cast<size_t>(q) * d_max + t) * n_ch + ch;
    return (bits[idx >> 3] >> (idx & 7)) & 1;
  }
  void set(uint32_t q, uint32_t t, uint32_t ch) {
    size_t idx = (static_cast<size_t>(q) * d_max + t) * n_ch + ch;
    bits[idx >> 3] |= static_cast<uint8_t>(1u << (idx & 7));
  }

  bool operator==(const CircuitTensor &o) const = default;
};

// Encodes the gate content of c. Throws if depth exceeds d_max or a CNOT sits
// on a non-edge.
CircuitTensor encode_circuit(const Circuit &c, const ConnectivityGraph &g,
                             const ChannelSpec &spec, uint32_t d_max);

// Fills the measurement rows: row 1 marks active qubits; row 2 carries the
// target bitstring for PST datasets and is all-zero for fidelity datasets.
void encode_measurement(const Circuit &c, Metric metric, CircuitTensor *tensor);

// Reference decoder: reconstructs active qubits and layers from a tensor.
// Also used by the "recompute tables on load" dataset mode.
Circuit decode_circuit(const CircuitTensor &tensor, const ConnectivityGraph &g,
                       const ChannelSpec &spec);

}  // namespace qcap

#endif  // QCAP_ENCODING_HPP
