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

#ifndef QCAP_SAMPLERS_HPP
#define QCAP_SAMPLERS_HPP

#include <vector>

#include "qcap/circuit.hpp"
#include "qcap/common.hpp"
#include "qcap/graph.hpp"

namespace qcap {

struct SamplerConfig {
  uint32_t width_min = 1;
  uint32_t width_max = 4;
  // depth_caps[w - width_min] is the max depth d_w for width w.
  std::vector<uint32_t> depth_caps = {180, 90, 60, 45};
  // Two-qubit gate density range, a subinterval of [0, 2/3].
  double density_min = 0.0;
  double density_max = 2.0 / 3.0;
  uint64_t seed = 0;

  void validate(const ConnectivityGraph &g) const;
  uint32_t depth_cap(uint32_t width) const;
};

// Grows a connected subset from a uniformly random start qubit by repeatedly
// adding a uniformly random neighbor of the current subset. Result ascending.
std::vector<uint32_t> sample_connected_subset(const ConnectivityGraph &g,
                                              uint32_t width, Rng &rng);

// One i.i.d. layer on the active qubits at the given two-qubit density.
// CNOT placement: a random maximal matching over the available edges is
// thinned by keeping each edge with probability density*w / (2*|matching|),
// which makes the expected fraction of active qubits covered by CNOTs equal
// to the density. Uncovered active qubits get a uniform single-qubit gate.
Layer sample_iid_layer(const ConnectivityGraph &g,
                       const std::vector<uint32_t> &active, double density,
                       Rng &rng);

Circuit sample_iid_circuit(const ConnectivityGraph &g,
                           const SamplerConfig &cfg, Rng &rng,
                           std::string id = "");

// Random mirror circuit: m i.i.d. prefix layers with depth cap d_w/6, one
// central layer of uniform Pauli gates (Xpi/Ypi/Zpi) on every active qubit,
// then the prefix inverted gate-by-gate in reverse order. Depth is 2m+1 and
// the result is definite-outcome by construction.
Circuit sample_mirror_circuit(const ConnectivityGraph &g,
                              const SamplerConfig &cfg, Rng &rng,
                              std::string id = "");

// Batch generation with counter-based per-index substreams: circuit i depends
// only on (cfg.seed, i), so identical configs give byte-identical streams and
// generation may be parallelized.
std::vector<Circuit> sample_circuits(const ConnectivityGraph &g,
                                     const SamplerConfig &cfg,
                                     CircuitKind kind, size_t count,
                                     const std::string &id_prefix);

}  // namespace qcap

#endif  // QCAP_SAMPLERS_HPP
