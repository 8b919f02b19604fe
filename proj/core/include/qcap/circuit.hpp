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

#ifndef QCAP_CIRCUIT_HPP
#define QCAP_CIRCUIT_HPP

#include <string>
#include <vector>

#include "qcap/gates.hpp"
#include "qcap/graph.hpp"
#include "qcap/tableau.hpp"

namespace qcap {

enum class CircuitKind : uint8_t { Iid = 0, Mirror = 1 };

const std::string &circuit_kind_label(CircuitKind kind);
CircuitKind circuit_kind_from_label(const std::string &label);

// A Clifford circuit designed for an ordered, connected subset of a device.
struct Circuit {
  std::string id;
  uint32_t n = 0;                       // device qubit count
  std::vector<uint32_t> active_qubits;  // ascending
  std::vector<Layer> layers;
  CircuitKind kind = CircuitKind::Iid;

  uint32_t width() const { return static_cast<uint32_t>(active_qubits.size()); }
  uint32_t depth() const { return static_cast<uint32_t>(layers.size()); }

  bool same_content(const Circuit &o) const {
    return n == o.n && active_qubits == o.active_qubits && layers == o.layers;
  }
};

// Checks all Circuit invariants: depth >= 1, gates within active_qubits,
// disjoint supports, CNOTs on graph edges, active subset connected.
void validate_circuit(const Circuit &c, const ConnectivityGraph &g);

// Target bitstring b(c) over active qubits (in active_qubits order) for a
// definite-outcome circuit. Throws NotDefiniteOutcome otherwise.
std::vector<uint8_t> target_bitstring(const Circuit &c);

// True iff every active qubit has a deterministic measurement outcome.
bool is_definite_outcome(const Circuit &c);

// JSON-lines circuit file IO; the schema is
// {"id","n","graph","active_qubits",[...],"kind","layers":[[["CNOT",[0,1]],...]]}.
void write_circuits_jsonl(const std::string &path,
                          const std::vector<Circuit> &circuits,
                          const std::string &graph_name);
std::vector<Circuit> read_circuits_jsonl(const std::string &path,
                                         const ConnectivityGraph &g);

}  // namespace qcap

#endif  // QCAP_CIRCUIT_HPP
