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

#include "qcap/samplers.hpp"

#include <algorithm>
#include <unordered_set>

namespace qcap {

void SamplerConfig::validate(const ConnectivityGraph &g) const {
  if (width_min < 1 || width_min > width_max ||
      width_max > g.num_qubits()) {
    throw ValidationError("sampler width range invalid for this device");
  }
  if (depth_caps.size() != width_max - width_min + 1) {
    throw ValidationError("need one depth cap per width in the range");
  }
  for (uint32_t cap : depth_caps) {
    if (cap < 1) throw ValidationError("depth caps must be >= 1");
  }
  if (density_min < 0.0 || density_max > 2.0 / 3.0 + 1e-12 ||
      density_min > density_max) {
    throw ValidationError("two-qubit density range must lie within [0, 2/3]");
  }
}

uint32_t SamplerConfig::depth_cap(uint32_t width) const {
  if (width < width_min || width > width_max) {
    throw ValidationError("width outside configured range");
  }
  return depth_caps[width - width_min];
}

std::vector<uint32_t> sample_connected_subset(const ConnectivityGraph &g,
                                              uint32_t width, Rng &rng) {
  if (width < 1 || width > g.num_qubits()) {
    throw ValidationError("subset width out of range");
  }
  std::vector<uint32_t> subset;
  std::unordered_set<uint32_t> in_subset;
  uint32_t start = static_cast<uint32_t>(rng.uniform_u64(g.num_qubits()));
  subset.push_back(start);
  in_subset.insert(start);
  while (subset.size() < width) {
    // Frontier: neighbors of the subset, deduplicated, ascending.
    std::vector<uint32_t> frontier;
    for (uint32_t q : subset) {
      for (uint32_t r : g.neighbors(q)) {
        if (!in_subset.count(r)) frontier.push_back(r);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()),
                   frontier.end());
    uint32_t pick = frontier[rng.uniform_u64(frontier.size())];
    subset.push_back(pick);
    in_subset.insert(pick);
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

Layer sample_iid_layer(const ConnectivityGraph &g,
                       const std::vector<uint32_t> &active, double density,
                       Rng &rng) {
  std::unordered_set<uint32_t> active_set(active.begin(), active.end());
  std::vector<std::pair<uint32_t, uint32_t>> candidates;
  for (auto [a, b] : g.edges()) {
    if (active_set.count(a) && active_set.count(b)) candidates.push_back({a, b});
  }
  Layer layer;
  std::unordered_set<uint32_t> covered;
  if (!candidates.empty() && density > 0.0) {
    rng.shuffle(candidates);
    // Random maximal matching.
    std::vector<std::pair<uint32_t, uint32_t>> matching;
    std::unordered_set<uint32_t> matched;
    for (auto [a, b] : candidates) {
      if (!matched.count(a) && !matched.count(b)) {
        matching.push_back({a, b});
        matched.insert(a);
        matched.insert(b);
      }
    }
    const double keep = std::min(
        1.0, density * static_cast<double>(active.size()) /
                 (2.0 * static_cast<double>(matching.size())));
    for (auto [a, b] : matching) {
      if (rng.uniform_real() < keep) {
        bool a_is_control = rng.uniform_u64(2) == 0;
        Gate cnot{GateKind::Cnot, a_is_control ? a : b, a_is_control ? b : a};
        layer.gates.push_back(cnot);
        covered.insert(a);
        covered.insert(b);
      }
    }
  }
  for (uint32_t q : active) {
    if (!covered.count(q)) {
      auto kind = static_cast<GateKind>(rng.uniform_u64(kNumSingleQubitGates));
      layer.gates.push_back({kind, q, UINT32_MAX});
    }
  }
  // Canonical order: gates sorted by their smallest qubit (supports are
  // disjoint, so this is a strict order).
  std::sort(layer.gates.begin(), layer.gates.end(),
            [](const Gate &a, const Gate &b) {
              return std::min(a.q0, a.q1) < std::min(b.q0, b.q1);
            });
  return layer;
}

namespace {
struct CircuitShape {
  std::vector<uint32_t> active;
  uint32_t depth;
  double density;
};

CircuitShape sample_shape(const ConnectivityGraph &g, const SamplerConfig &cfg,
                          uint32_t depth_cap_override, Rng &rng) {
  CircuitShape shape;
  uint32_t width = cfg.width_min + static_cast<uint32_t>(rng.uniform_u64(
                                       cfg.width_max - cfg.width_min + 1));
  shape.active = sample_connected_subset(g, width, rng);
  uint32_t cap = depth_cap_override ? depth_cap_override : cfg.depth_cap(width);
  shape.depth = 1 + static_cast<uint32_t>(rng.uniform_u64(cap));
  shape.density = rng.uniform_real(cfg.density_min, cfg.density_max);
  return shape;
}
}  // namespace

Circuit sample_iid_circuit(const ConnectivityGraph &g,
                           const SamplerConfig &cfg, Rng &rng,
                           std::string id) {
  cfg.validate(g);
  CircuitShape shape = sample_shape(g, cfg, 0, rng);
  Circuit c;
  c.id = std::move(id);
  c.n = g.num_qubits();
  c.active_qubits = shape.active;
  c.kind = CircuitKind::Iid;
  c.layers.reserve(shape.depth);
  for (uint32_t i = 0; i < shape.depth; ++i) {
    c.layers.push_back(sample_iid_layer(g, shape.active, shape.density, rng));
  }
  return c;
}

Circuit sample_mirror_circuit(const ConnectivityGraph &g,
                              const SamplerConfig &cfg, Rng &rng,
                              std::string id) {
  cfg.validate(g);
  // Mirror prefixes cap at d_w/6 so mirrored circuits have comparable total
  // length to the deepest i.i.d. circuits.
  Circuit c;
  c.id = std::move(id);
  c.n = g.num_qubits();
  c.kind = CircuitKind::Mirror;
  uint32_t width = cfg.width_min + static_cast<uint32_t>(rng.uniform_u64(
                                       cfg.width_max - cfg.width_min + 1));
  c.active_qubits = sample_connected_subset(g, width, rng);
  uint32_t cap = std::max(1u, cfg.depth_cap(width) / 6);
  uint32_t m = 1 + static_cast<uint32_t>(rng.uniform_u64(cap));
  double density = rng.uniform_real(cfg.density_min, cfg.density_max);
  std::vector<Layer> prefix;
  prefix.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    prefix.push_back(sample_iid_layer(g, c.active_qubits, density, rng));
  }
  Layer central;
  static const GateKind kPaulis[3] = {GateKind::Xpi, GateKind::Ypi,
                                      GateKind::Zpi};
  for (uint32_t q : c.active_qubits) {
    central.gates.push_back({kPaulis[rng.uniform_u64(3)], q, UINT32_MAX});
  }
  c.layers = prefix;
  c.layers.push_back(std::move(central));
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    c.layers.push_back(invert_layer(*it));
  }
  return c;
}

std::vector<Circuit> sample_circuits(const ConnectivityGraph &g,
                                     const SamplerConfig &cfg,
                                     CircuitKind kind, size_t count,
                                     const std::string &id_prefix) {
  cfg.validate(g);
  std::vector<Circuit> out(count);
  parallel_for(count, [&](size_t i) {
    // Substream 1+i: circuit i is a pure function of (seed, i).
    Rng rng(cfg.seed, 1 + i);
    std::string id = id_prefix + "-" + std::to_string(i);
    out[i] = kind == CircuitKind::Mirror
                 ? sample_mirror_circuit(g, cfg, rng, id)
                 : sample_iid_circuit(g, cfg, rng, id);
    validate_circuit(out[i], g);
  });
  return out;
}

}  // namespace qcap
