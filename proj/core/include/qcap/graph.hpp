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

#ifndef QCAP_GRAPH_HPP
#define QCAP_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcap/common.hpp"

namespace qcap {

// Undirected device connectivity graph. Always connected, no self-loops.
class ConnectivityGraph {
 public:
  ConnectivityGraph(uint32_t n,
                    std::vector<std::pair<uint32_t, uint32_t>> edges,
                    std::string name);

  // Builds from a spec string: "ring:<n>", "line:<n>", "tbar:5", "bowtie:5",
  // or a path to a JSON file {"n": ..., "edges": [[a,b], ...], "name": ...}.
  static ConnectivityGraph from_spec(const std::string &spec);

  uint32_t num_qubits() const { return n_; }
  const std::string &name() const { return name_; }

  // Edges with a < b, sorted.
  const std::vector<std::pair<uint32_t, uint32_t>> &edges() const {
    return edges_;
  }

  // Neighbors of q, ascending.
  const std::vector<uint32_t> &neighbors(uint32_t q) const {
    return adjacency_[q];
  }

  uint32_t max_degree() const;

  bool has_edge(uint32_t a, uint32_t b) const;

  // Shortest-path edge count between a and b; 0 iff a == b.
  uint32_t hop_distance(uint32_t a, uint32_t b) const;

  // Unordered pairs {a, b} with hop_distance <= h, sorted (a < b).
  std::vector<std::pair<uint32_t, uint32_t>> pairs_within(uint32_t h) const;

 private:
  uint32_t n_;
  std::string name_;
  std::vector<std::pair<uint32_t, uint32_t>> edges_;
  std::vector<std::vector<uint32_t>> adjacency_;
};

}  // namespace qcap

#endif  // QCAP_GRAPH_HPP
