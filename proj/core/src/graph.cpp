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

#include "qcap/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

#include <json.hpp>

namespace qcap {

ConnectivityGraph::ConnectivityGraph(
    uint32_t n, std::vector<std::pair<uint32_t, uint32_t>> edges,
    std::string name)
    : n_(n), name_(std::move(name)) {
  if (n == 0) throw ValidationError("graph must have at least one qubit");
  for (auto &[a, b] : edges) {
    if (a == b) throw ValidationError("graph has a self-loop");
    if (a >= n || b >= n) throw ValidationError("edge qubit out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adjacency_.assign(n, {});
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto &adj : adjacency_) std::sort(adj.begin(), adj.end());
  // Connectivity check via BFS from 0.
  if (n > 1) {
    std::vector<bool> seen(n, false);
    std::deque<uint32_t> queue{0};
    seen[0] = true;
    uint32_t count = 1;
    while (!queue.empty()) {
      uint32_t q = queue.front();
      queue.pop_front();
      for (uint32_t r : adjacency_[q]) {
        if (!seen[r]) {
          seen[r] = true;
          ++count;
          queue.push_back(r);
        }
      }
    }
    if (count != n) throw ValidationError("graph is not connected");
  }
}

ConnectivityGraph ConnectivityGraph::from_spec(const std::string &spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string tail = spec.substr(colon + 1);
    if (head == "ring" || head == "line") {
      uint32_t n = 0;
      try {
        n = static_cast<uint32_t>(std::stoul(tail));
      } catch (const std::exception &) {
        throw ValidationError("bad qubit count in graph spec '" + spec + "'");
      }
      if (n < 2) throw ValidationError("ring/line graphs need n >= 2");
      std::vector<std::pair<uint32_t, uint32_t>> edges;
      for (uint32_t q = 0; q + 1 < n; ++q) edges.push_back({q, q + 1});
      if (head == "ring" && n > 2) edges.push_back({0, n - 1});
      return ConnectivityGraph(n, std::move(edges), spec);
    }
    if (head == "tbar") {
      if (tail != "5") throw ValidationError("tbar graph is 5 qubits");
      return ConnectivityGraph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}, spec);
    }
    if (head == "bowtie") {
      if (tail != "5") throw ValidationError("bowtie graph is 5 qubits");
      return ConnectivityGraph(
          5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}, spec);
    }
  }
  // Otherwise treat the spec as a JSON edge-list file path.
  std::ifstream in(spec);
  if (!in) {
    throw ValidationError("unknown graph spec or unreadable file '" + spec +
                          "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw ValidationError("bad graph JSON in '" + spec + "': " + e.what());
  }
  if (!j.contains("n") || !j.contains("edges")) {
    throw ValidationError("graph JSON needs fields 'n' and 'edges'");
  }
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (const auto &e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw ValidationError("graph edge entries must be [a, b]");
    }
    edges.push_back({e[0].get<uint32_t>(), e[1].get<uint32_t>()});
  }
  std::string name = j.value("name", spec);
  return ConnectivityGraph(j["n"].get<uint32_t>(), std::move(edges), name);
}

uint32_t ConnectivityGraph::max_degree() const {
  size_t d = 0;
  for (const auto &adj : adjacency_) d = std::max(d, adj.size());
  return static_cast<uint32_t>(d);
}

bool ConnectivityGraph::has_edge(uint32_t a, uint32_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(),
                            std::make_pair(a, b));
}

uint32_t ConnectivityGraph::hop_distance(uint32_t a, uint32_t b) const {
  if (a >= n_ || b >= n_) throw ValidationError("qubit index out of range");
  if (a == b) return 0;
  std::vector<uint32_t> dist(n_, UINT32_MAX);
  std::deque<uint32_t> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    uint32_t q = queue.front();
    queue.pop_front();
    for (uint32_t r : adjacency_[q]) {
      if (dist[r] == UINT32_MAX) {
        dist[r] = dist[q] + 1;
        if (r == b) return dist[r];
        queue.push_back(r);
      }
    }
  }
  throw ValidationError("graph is not connected");  // unreachable by invariant
}

std::vector<std::pair<uint32_t, uint32_t>> ConnectivityGraph::pairs_within(
    uint32_t h) const {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (uint32_t a = 0; a < n_; ++a) {
    for (uint32_t b = a + 1; b < n_; ++b) {
      if (hop_distance(a, b) <= h) pairs.push_back({a, b});
    }
  }
  return pairs;
}

}  // namespace qcap
