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

#ifndef QCAP_TESTS_TEST_UTIL_HPP
#define QCAP_TESTS_TEST_UTIL_HPP

#include <filesystem>
#include <string>

#include "qcap/circuit.hpp"
#include "qcap/common.hpp"
#include "qcap/tableau.hpp"

namespace qcap::test {

inline SignedPauli random_pauli(uint32_t n, Rng &rng) {
  SignedPauli p(n);
  for (uint32_t q = 0; q < n; ++q) {
    p.set_letter(q, static_cast<PauliLetter>(rng.uniform_u64(4)));
  }
  p.set_sign(rng.uniform_u64(2) ? 1 : -1);
  return p;
}

// Random layer over all qubits with CNOTs allowed between any disjoint pair
// (tableaus do not care about device connectivity).
inline Layer random_layer(uint32_t n, Rng &rng) {
  Layer layer;
  std::vector<uint32_t> qubits(n);
  for (uint32_t q = 0; q < n; ++q) qubits[q] = q;
  rng.shuffle(qubits);
  size_t i = 0;
  while (i < qubits.size()) {
    const bool pair = i + 1 < qubits.size() && rng.uniform_u64(3) == 0;
    if (pair) {
      layer.gates.push_back({GateKind::Cnot, qubits[i], qubits[i + 1]});
      i += 2;
    } else {
      if (rng.uniform_u64(4) != 0) {  // leave some qubits idle
        auto kind = static_cast<GateKind>(rng.uniform_u64(kNumSingleQubitGates));
        layer.gates.push_back({kind, qubits[i], UINT32_MAX});
      }
      ++i;
    }
  }
  return layer;
}

inline CliffordTableau random_tableau(uint32_t n, uint32_t depth, Rng &rng) {
  CliffordTableau t = CliffordTableau::identity(n);
  for (uint32_t i = 0; i < depth; ++i) {
    t = CliffordTableau::compose(CliffordTableau::of_layer(random_layer(n, rng), n), t);
  }
  return t;
}

// Unique scratch directory under the build tree, cleaned on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("qcap_test_" + tag + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string str() const { return path_.string(); }
  std::filesystem::path path() const { return path_; }

 private:
  static int &counter() {
    static int c = 0;
    return c;
  }
  std::filesystem::path path_;
};

}  // namespace qcap::test

#endif  // QCAP_TESTS_TEST_UTIL_HPP
