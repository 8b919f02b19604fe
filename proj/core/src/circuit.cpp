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

#include "qcap/circuit.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace qcap {

const std::string &circuit_kind_label(CircuitKind kind) {
  static const std::string iid = "iid";
  static const std::string mirror = "mirror";
  return kind == CircuitKind::Mirror ? mirror : iid;
}

CircuitKind circuit_kind_from_label(const std::string &label) {
  if (label == "iid") return CircuitKind::Iid;
  if (label == "mirror") return CircuitKind::Mirror;
  throw ValidationError("unknown circuit kind '" + label + "'");
}

void validate_circuit(const Circuit &c, const ConnectivityGraph &g) {
  if (c.n != g.num_qubits()) {
    throw ValidationError("circuit/device qubit count mismatch");
  }
  if (c.layers.empty()) throw ValidationError("circuit depth must be >= 1");
  if (c.active_qubits.empty()) {
    throw ValidationError("circuit has no active qubits");
  }
  if (!std::is_sorted(c.active_qubits.begin(), c.active_qubits.end())) {
    throw ValidationError("active_qubits must be ascending");
  }
  std::unordered_set<uint32_t> active(c.active_qubits.begin(),
                                      c.active_qubits.end());
  if (active.size() != c.active_qubits.size()) {
    throw ValidationError("duplicate active qubit");
  }
  for (uint32_t q : c.active_qubits) {
    if (q >= c.n) throw ValidationError("active qubit out of range");
  }
  // Active subset must induce a connected subgraph.
  if (c.active_qubits.size() > 1) {
    std::unordered_set<uint32_t> seen;
    std::deque<uint32_t> queue{c.active_qubits[0]};
    seen.insert(c.active_qubits[0]);
    while (!queue.empty()) {
      uint32_t q = queue.front();
      queue.pop_front();
      for (uint32_t r : g.neighbors(q)) {
        if (active.count(r) && !seen.count(r)) {
          seen.insert(r);
          queue.push_back(r);
        }
      }
    }
    if (seen.size() != active.size()) {
      throw ValidationError("active qubits do not induce a connected subgraph");
    }
  }
  for (size_t i = 0; i < c.layers.size(); ++i) {
    validate_layer(c.layers[i], c.n);
    for (const Gate &gate : c.layers[i].gates) {
      for (uint32_t q : gate.qubits()) {
        if (!active.count(q)) {
          throw ValidationError("layer " + std::to_string(i) +
                                " acts outside active qubits");
        }
      }
      if (is_two_qubit(gate.kind) && !g.has_edge(gate.q0, gate.q1)) {
        throw ValidationError("layer " + std::to_string(i) +
                              " has a CNOT on a non-edge");
      }
    }
  }
}

namespace {
// Tableau of the inverse circuit, built by inverting layers in reverse order.
CliffordTableau inverse_tableau(const Circuit &c) {
  CliffordTableau t = CliffordTableau::identity(c.n);
  for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
    t = CliffordTableau::compose(t, CliffordTableau::of_layer(
                                        invert_layer(*it), c.n));
  }
  return t;
}
}  // namespace

std::vector<uint8_t> target_bitstring(const Circuit &c) {
  // Bit i is deterministic iff U^dag Z_i U is Z-type; its value is 0 when the
  // sign is +1 (Z-type words stabilize |0...0>).
  CliffordTableau inv = inverse_tableau(c);
  std::vector<uint8_t> bits;
  bits.reserve(c.active_qubits.size());
  for (uint32_t q : c.active_qubits) {
    SignedPauli back =
        inv.conjugate(SignedPauli::single(c.n, q, PauliLetter::Z));
    if (back.contains_xy()) {
      throw NotDefiniteOutcome("circuit '" + c.id +
                               "' is not definite-outcome at qubit " +
                               std::to_string(q));
    }
    bits.push_back(back.sign() < 0 ? 1 : 0);
  }
  return bits;
}

bool is_definite_outcome(const Circuit &c) {
  CliffordTableau inv = inverse_tableau(c);
  for (uint32_t q : c.active_qubits) {
    SignedPauli back =
        inv.conjugate(SignedPauli::single(c.n, q, PauliLetter::Z));
    if (back.contains_xy()) return false;
  }
  return true;
}

namespace {
nlohmann::json layer_to_json(const Layer &layer) {
  nlohmann::json jl = nlohmann::json::array();
  for (const Gate &g : layer.gates) {
    nlohmann::json qubits = nlohmann::json::array();
    for (uint32_t q : g.qubits()) qubits.push_back(q);
    jl.push_back({gate_label(g.kind), qubits});
  }
  return jl;
}

Layer layer_from_json(const nlohmann::json &jl, size_t line, size_t index) {
  Layer layer;
  for (const auto &jg : jl) {
    if (!jg.is_array() || jg.size() != 2) {
      throw ValidationError("line " + std::to_string(line) + " layer " +
                            std::to_string(index) +
                            ": gate entries must be [label, [qubits]]");
    }
    GateKind kind = gate_from_label(jg[0].get<std::string>());
    const auto &qs = jg[1];
    Gate g{kind, 0, UINT32_MAX};
    if (is_two_qubit(kind)) {
      if (qs.size() != 2) {
        throw ValidationError("line " + std::to_string(line) +
                              ": CNOT needs two qubits");
      }
      g.q0 = qs[0].get<uint32_t>();
      g.q1 = qs[1].get<uint32_t>();
    } else {
      if (qs.size() != 1) {
        throw ValidationError("line " + std::to_string(line) +
                              ": single-qubit gate needs one qubit");
      }
      g.q0 = qs[0].get<uint32_t>();
    }
    layer.gates.push_back(g);
  }
  return layer;
}
}  // namespace

void write_circuits_jsonl(const std::string &path,
                          const std::vector<Circuit> &circuits,
                          const std::string &graph_name) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  for (const Circuit &c : circuits) {
    nlohmann::json j;
    j["id"] = c.id;
    j["n"] = c.n;
    j["graph"] = graph_name;
    j["active_qubits"] = c.active_qubits;
    j["kind"] = circuit_kind_label(c.kind);
    nlohmann::json layers = nlohmann::json::array();
    for (const Layer &layer : c.layers) layers.push_back(layer_to_json(layer));
    j["layers"] = std::move(layers);
    out << j.dump() << "\n";
  }
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::vector<Circuit> read_circuits_jsonl(const std::string &path,
                                         const ConnectivityGraph &g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::vector<Circuit> circuits;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception &e) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": bad JSON: " + e.what());
    }
    Circuit c;
    try {
      c.id = j.at("id").get<std::string>();
      c.n = j.at("n").get<uint32_t>();
      c.active_qubits = j.at("active_qubits").get<std::vector<uint32_t>>();
      c.kind = circuit_kind_from_label(j.at("kind").get<std::string>());
      size_t li = 0;
      for (const auto &jl : j.at("layers")) {
        c.layers.push_back(layer_from_json(jl, line_no, li++));
      }
    } catch (const nlohmann::json::exception &e) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": schema violation: " + e.what());
    }
    try {
      validate_circuit(c, g);
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            e.what());
    }
    circuits.push_back(std::move(c));
  }
  return circuits;
}

}  // namespace qcap
