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

#include "qcap/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace qcap {

std::string ErrorModel::key_for(GateKind kind,
                                const std::vector<uint32_t> &qubits) {
  std::string key = gate_label(kind) + "@";
  for (size_t i = 0; i < qubits.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(qubits[i]);
  }
  return key;
}

std::string ErrorModel::wildcard_key(GateKind kind) {
  return gate_label(kind) + "@*";
}

void ErrorModel::set(const std::string &key, GateErrors errors) {
  for (const auto &[gen, rate] : errors.rates) {
    if (gen.kind == ErrorKind::S && rate < 0.0) {
      throw ValidationError("stochastic rates must be nonnegative (" + key +
                            ")");
    }
  }
  gates_[key] = std::move(errors);
}

const GateErrors *ErrorModel::lookup(const Gate &g) const {
  auto it = gates_.find(key_for(g.kind, g.qubits()));
  if (it != gates_.end()) return &it->second;
  it = gates_.find(wildcard_key(g.kind));
  if (it != gates_.end()) return &it->second;
  return nullptr;
}

ErrorModel ErrorModel::scaled(double factor) const {
  ErrorModel out;
  out.n_ = n_;
  for (const auto &[key, errors] : gates_) {
    GateErrors scaled_errors;
    scaled_errors.rates.reserve(errors.rates.size());
    for (const auto &[gen, rate] : errors.rates) {
      scaled_errors.rates.emplace_back(gen, rate * factor);
    }
    out.gates_[key] = std::move(scaled_errors);
  }
  return out;
}

void ErrorModel::save_json(const std::string &path) const {
  nlohmann::ordered_json j;
  j["schema"] = "qcap-error-model-v1";
  j["n"] = n_;
  nlohmann::ordered_json gates = nlohmann::ordered_json::object();
  for (const auto &[key, errors] : gates_) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto &[gen, rate] : errors.rates) {
      nlohmann::ordered_json e;
      e["kind"] = std::string(1, error_kind_char(gen.kind));
      std::string letters;
      std::vector<uint32_t> support = gen.pauli.support();
      for (uint32_t q : support) letters += letter_to_char(gen.pauli.letter(q));
      e["pauli"] = letters;
      e["qubits"] = support;
      e["rate"] = rate;
      list.push_back(std::move(e));
    }
    gates[key] = std::move(list);
  }
  j["gates"] = std::move(gates);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

ErrorModel ErrorModel::load_json(const std::string &path, uint32_t n) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw ValidationError("bad model JSON: " + std::string(e.what()));
  }
  if (j.value("schema", "") != "qcap-error-model-v1") {
    throw ValidationError("unexpected model schema version");
  }
  ErrorModel model;
  model.n_ = j.value("n", n);
  if (model.n_ != n) {
    throw ValidationError("model qubit count does not match device");
  }
  for (const auto &[key, list] : j.at("gates").items()) {
    GateErrors errors;
    for (const auto &e : list) {
      std::string letters = e.at("pauli").get<std::string>();
      std::vector<uint32_t> qubits = e.at("qubits").get<std::vector<uint32_t>>();
      if (letters.size() != qubits.size()) {
        throw ValidationError("model entry letters/qubits mismatch in " + key);
      }
      SignedPauli p(n);
      for (size_t i = 0; i < qubits.size(); ++i) {
        p.set_letter(qubits[i], letter_from_char(letters[i]));
      }
      ErrorGenerator gen(error_kind_from_char(e.at("kind").get<std::string>()[0]),
                         std::move(p));
      errors.rates.emplace_back(std::move(gen), e.at("rate").get<double>());
    }
    model.set(key, std::move(errors));
  }
  return model;
}

namespace {
const PauliLetter kLetters[3] = {PauliLetter::X, PauliLetter::Y,
                                 PauliLetter::Z};

// All non-identity Paulis supported on the given qubits, letter-lex order.
std::vector<SignedPauli> local_paulis(uint32_t n,
                                      const std::vector<uint32_t> &qubits) {
  std::vector<SignedPauli> out;
  const size_t m = qubits.size();
  const size_t total = m == 1 ? 4 : 16;
  for (size_t code = 1; code < total; ++code) {
    SignedPauli p(n);
    size_t rem = code;
    for (size_t i = m; i-- > 0;) {
      size_t letter = rem % 4;
      rem /= 4;
      if (letter) {
        p.set_letter(qubits[i], static_cast<PauliLetter>(letter));
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}
}  // namespace

ErrorModel sample_coherent_model(const ConnectivityGraph &g,
                                 double max_strength, Rng &rng) {
  if (max_strength <= 0.0) {
    throw ValidationError("max_strength must be positive");
  }
  const uint32_t n = g.num_qubits();
  ErrorModel model;
  model.set_num_qubits(n);
  // Deterministic enumeration order: single-qubit labels in gate order over
  // ascending qubits, then CNOT over both directions of each sorted edge.
  std::vector<std::pair<GateKind, std::vector<uint32_t>>> instances;
  for (int k = 0; k < kNumSingleQubitGates; ++k) {
    for (uint32_t q = 0; q < n; ++q) {
      instances.push_back({static_cast<GateKind>(k), {q}});
    }
  }
  for (auto [a, b] : g.edges()) {
    instances.push_back({GateKind::Cnot, {a, b}});
    instances.push_back({GateKind::Cnot, {b, a}});
  }
  for (const auto &[kind, qubits] : instances) {
    const double eps_g = rng.uniform_real() * max_strength;
    std::vector<uint32_t> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    std::vector<SignedPauli> paulis = local_paulis(n, sorted);
    std::vector<double> rel(paulis.size());
    double norm_sq = 0.0;
    for (double &r : rel) {
      r = rng.uniform_real();
      norm_sq += r * r;
    }
    const double scale =
        norm_sq > 0.0 ? std::sqrt(eps_g) / std::sqrt(norm_sq) : 0.0;
    GateErrors errors;
    errors.rates.reserve(paulis.size());
    for (size_t i = 0; i < paulis.size(); ++i) {
      errors.rates.emplace_back(ErrorGenerator(ErrorKind::H, paulis[i]),
                                rel[i] * scale);
    }
    model.set(ErrorModel::key_for(kind, qubits), std::move(errors));
  }
  return model;
}

ErrorModel sample_weight1_model(const ConnectivityGraph &g, double max_s,
                                double max_h, Rng &rng) {
  if (max_s < 0.0 || max_h < 0.0) {
    throw ValidationError("weight-1 model strengths must be nonnegative");
  }
  const uint32_t n = g.num_qubits();
  ErrorModel model;
  model.set_num_qubits(n);
  for (int k = 0; k < kNumGateKinds; ++k) {
    GateErrors errors;
    errors.rates.reserve(6 * n);
    // S block then H block, each qubit-ascending, letters X<Y<Z.
    for (uint32_t q = 0; q < n; ++q) {
      for (PauliLetter l : kLetters) {
        errors.rates.emplace_back(
            ErrorGenerator(ErrorKind::S, SignedPauli::single(n, q, l)),
            rng.uniform_real() * max_s);
      }
    }
    for (uint32_t q = 0; q < n; ++q) {
      for (PauliLetter l : kLetters) {
        errors.rates.emplace_back(
            ErrorGenerator(ErrorKind::H, SignedPauli::single(n, q, l)),
            rng.uniform_real() * max_h);
      }
    }
    model.set(ErrorModel::wildcard_key(static_cast<GateKind>(k)),
              std::move(errors));
  }
  return model;
}

}  // namespace qcap
