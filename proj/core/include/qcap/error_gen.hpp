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

#ifndef QCAP_ERROR_GEN_HPP
#define QCAP_ERROR_GEN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcap/circuit.hpp"
#include "qcap/graph.hpp"
#include "qcap/pauli.hpp"

namespace qcap {

// H: coherent (Hamiltonian) generator rho -> -i[P, rho], signed rate.
// S: Pauli-stochastic generator rho -> P rho P - rho, nonnegative rate.
enum class ErrorKind : uint8_t { H = 0, S = 1 };

char error_kind_char(ErrorKind k);
ErrorKind error_kind_from_char(char c);

struct ErrorGenerator {
  ErrorKind kind;
  SignedPauli pauli;  // non-identity, sign always +1

  ErrorGenerator(ErrorKind k, SignedPauli p);

  // "H:XY@[0,3]" - kind, support letters, support qubits.
  std::string to_string() const;
  static ErrorGenerator from_string(const std::string &text, uint32_t n);

  bool operator==(const ErrorGenerator &o) const {
    return kind == o.kind && pauli.same_word(o.pauli);
  }
};

// The ordered set of k tracked error generators: all weight-1 H and S errors,
// plus (for max_weight 2) all weight-2 errors on qubit pairs within h hops.
// Order: weight, then support tuple, then letters, then H before S.
class TrackedErrorSet {
 public:
  TrackedErrorSet() = default;

  static TrackedErrorSet build(const ConnectivityGraph &g, uint32_t hops,
                               uint32_t max_weight);

  size_t size() const { return generators_.size(); }
  const ErrorGenerator &at(size_t j) const { return generators_[j]; }
  const std::vector<ErrorGenerator> &generators() const { return generators_; }
  uint32_t num_qubits() const { return n_; }
  uint32_t hops() const { return hops_; }
  uint32_t max_weight() const { return max_weight_; }

  // Index of a generator, or nullopt if it is not tracked.
  std::optional<size_t> index_of(const ErrorGenerator &gen) const;

 private:
  uint32_t n_ = 0;
  uint32_t hops_ = 0;
  uint32_t max_weight_ = 2;
  std::vector<ErrorGenerator> generators_;
  // Key: (kind, word hash) -> candidate indices (collisions resolved by
  // comparing words).
  std::map<std::pair<uint8_t, uint64_t>, std::vector<size_t>> index_;
};

// Per-circuit propagation tables: for layer row i and tracked error j, the
// unsigned Pauli the error becomes when pulled through layers i+1..d, and the
// +/-1 sign picked up (always +1 for S-kind columns, which are insensitive to
// the sign of the conjugated Pauli).
struct PropagationTables {
  uint32_t depth = 0;
  uint32_t num_tracked = 0;
  // Row-major depth x k. Paulis are stored with sign +1.
  std::vector<SignedPauli> pauli;
  std::vector<int8_t> sign;

  const SignedPauli &pauli_at(uint32_t i, uint32_t j) const {
    return pauli[static_cast<size_t>(i) * num_tracked + j];
  }
  int sign_at(uint32_t i, uint32_t j) const {
    return sign[static_cast<size_t>(i) * num_tracked + j];
  }
};

PropagationTables compute_propagation(const Circuit &c,
                                      const TrackedErrorSet &ts);

// Sparse end-of-circuit error vector: accumulated rate per (kind, Pauli).
// Iteration order is the deterministic key order.
class EndErrorVector {
 public:
  void add(ErrorKind kind, const SignedPauli &pauli, double rate);
  double get(ErrorKind kind, const SignedPauli &pauli) const;
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  template <typename Fn>  // Fn(ErrorKind, const SignedPauli&, double)
  void for_each(Fn &&fn) const {
    for (const auto &[key, value] : entries_) {
      fn(key.first, key.second, value);
    }
  }

 private:
  struct KeyLess {
    bool operator()(const std::pair<ErrorKind, SignedPauli> &a,
                    const std::pair<ErrorKind, SignedPauli> &b) const {
      if (a.first != b.first) return a.first < b.first;
      return a.second.word_compare(b.second) < 0;
    }
  };
  std::map<std::pair<ErrorKind, SignedPauli>, double, KeyLess> entries_;
};

// First-order accumulation: v[(kind_j, pauli[i][j])] += sign[i][j] * E[i][j],
// then measurement rates added verbatim (measurement errors see no further
// propagation). E is row-major depth x k.
EndErrorVector accumulate(
    std::span<const double> rates, const PropagationTables &tables,
    const TrackedErrorSet &ts,
    std::span<const std::pair<ErrorGenerator, double>> measurement_rates = {});

// F(c) ~ 1 - sum over all Paulis of (s_P + theta_P^2).
double fidelity_from(const EndErrorVector &v);

// PST(c) ~ 1 - the same sum restricted to Paulis containing X or Y.
double pst_from(const EndErrorVector &v);

}  // namespace qcap

#endif  // QCAP_ERROR_GEN_HPP
