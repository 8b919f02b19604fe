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

#ifndef QCAP_ERROR_MODEL_HPP
#define QCAP_ERROR_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "qcap/error_gen.hpp"
#include "qcap/gates.hpp"
#include "qcap/graph.hpp"

namespace qcap {

// Rates attached to one gate entry. H rates may be negative; S rates are
// validated nonnegative on load.
struct GateErrors {
  std::vector<std::pair<ErrorGenerator, double>> rates;
};

// Error model keyed by "<label>@<q0[,q1]>" for qubit-specific entries or
// "<label>@*" for qubit-independent entries. Lookup prefers the exact key.
class ErrorModel {
 public:
  uint32_t num_qubits() const { return n_; }
  void set_num_qubits(uint32_t n) { n_ = n; }

  static std::string key_for(GateKind kind,
                             const std::vector<uint32_t> &qubits);
  static std::string wildcard_key(GateKind kind);

  void set(const std::string &key, GateErrors errors);

  // Rates for a concrete gate instance; empty if the model has no entry.
  const GateErrors *lookup(const Gate &g) const;

  const std::map<std::string, GateErrors> &entries() const { return gates_; }

  // Uniform scaling of every rate (used by order-of-accuracy checks).
  ErrorModel scaled(double factor) const;

  void save_json(const std::string &path) const;
  static ErrorModel load_json(const std::string &path, uint32_t n);

 private:
  uint32_t n_ = 0;
  std::map<std::string, GateErrors> gates_;
};

// Local coherent model: for every (gate label, qubit tuple) on the device,
// an overall strength eps_g = U[0,1] * max_strength is split across the
// 4^m - 1 H generators on the gate's qubits and rescaled so that the squared
// rates sum to eps_g (each gate then contributes ~eps_g to infidelity at
// first order).
ErrorModel sample_coherent_model(const ConnectivityGraph &g,
                                 double max_strength, Rng &rng);

// Weight-1 model: per gate label (qubit-independent), every weight-1 S rate
// uniform in [0, max_s] and every weight-1 H rate uniform in [0, max_h],
// a 6n-entry vector per label.
ErrorModel sample_weight1_model(const ConnectivityGraph &g, double max_s,
                                double max_h, Rng &rng);

// Appendix defaults for the two samplers.
inline constexpr double kDefaultCoherentMaxStrength = 2.5e-4;
inline constexpr double kDefaultWeight1MaxStochastic = 1e-7;
inline constexpr double kDefaultWeight1MaxCoherent = 5e-5;

}  // namespace qcap

#endif  // QCAP_ERROR_MODEL_HPP
