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

#ifndef QCAP_PTM_HPP
#define QCAP_PTM_HPP

#include <Eigen/Dense>
#include <map>
#include <mutex>
#include <optional>

#include "qcap/circuit.hpp"
#include "qcap/error_gen.hpp"
#include "qcap/error_model.hpp"

namespace qcap {

// Exact superoperator simulation is dense in the Pauli basis and capped at a
// small qubit count (4^cap x 4^cap real matrices).
inline constexpr uint32_t kDefaultSmallNCap = 4;

// Real matrix of a superoperator in the normalized Pauli basis. Basis index
// encodes one letter per qubit, base 4 (I,X,Y,Z), qubit 0 most significant.
struct Ptm {
  uint32_t n = 0;
  Eigen::MatrixXd matrix;
};

// A state expanded in the normalized Pauli basis.
struct PauliStateVector {
  uint32_t n = 0;
  Eigen::VectorXd coefficients;

  // rho = |0...0><0...0|.
  static PauliStateVector zero_state(uint32_t n);
};

// Dense complex matrices used to define the exact simulator; exposed for the
// test oracles.
Eigen::MatrixXcd gate_unitary(GateKind kind);
Eigen::MatrixXcd pauli_matrix(const SignedPauli &p);

// Superoperator generator of an H or S error in the Pauli basis, computed
// from the dense matrix definitions (H_P: rho -> -i[P,rho]; S_P: rho ->
// P rho P - rho). Throws if n exceeds the cap.
Eigen::MatrixXd generator_ptm(const ErrorGenerator &gen, uint32_t n,
                              uint32_t cap = kDefaultSmallNCap);

// PTM of the layer's ideal unitary on n qubits.
Ptm ideal_layer_ptm(const Layer &layer, uint32_t n,
                    uint32_t cap = kDefaultSmallNCap);

// exp(sum of rate-weighted generators of every gate in the layer) times the
// ideal layer PTM.
Ptm noisy_layer_ptm(const Layer &layer, const ErrorModel &model, uint32_t n,
                    uint32_t cap = kDefaultSmallNCap);

// Exact simulator over the circuit's active qubits. Error channels factor
// into commuting blocks over disjoint qubit clusters; the per-cluster matrix
// exponentials are cached content-addressed and shared across circuits.
class ExactSimulator {
 public:
  ExactSimulator(const ErrorModel &model, uint32_t cap = kDefaultSmallNCap);

  // Process fidelity Tr[U_noisy U_ideal^T] / 4^w over the active qubits.
  double fidelity(const Circuit &c) const;

  // Probability of measuring b(c); measurement is noiseless unless a terminal
  // error vector is supplied (applied as one extra exponential map).
  double pst(const Circuit &c, const GateErrors *terminal = nullptr) const;

 private:
  const ErrorModel &model_;
  uint32_t cap_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, Eigen::MatrixXd> channel_cache_;

  struct LocalIndex;
  void apply_layer(const Circuit &c, const Layer &layer,
                   const LocalIndex &index, Eigen::MatrixXd *noisy,
                   Eigen::MatrixXd *ideal, Eigen::VectorXd *state) const;
  void apply_errors(const std::vector<std::pair<ErrorGenerator, double>> &rates,
                    const LocalIndex &index, Eigen::MatrixXd *noisy,
                    Eigen::VectorXd *state) const;
};

double exact_fidelity(const Circuit &c, const ErrorModel &model,
                      uint32_t cap = kDefaultSmallNCap);
double exact_pst(const Circuit &c, const ErrorModel &model,
                 const GateErrors *terminal = nullptr,
                 uint32_t cap = kDefaultSmallNCap);

// First-order fidelity: per-layer error vectors summed over gate occurrences,
// propagated with the tables and collapsed through the closed-form head.
// Scales to n >= 100. Throws if the model uses a generator outside ts.
double first_order_fidelity(const Circuit &c, const ErrorModel &model,
                            const TrackedErrorSet &ts);

}  // namespace qcap

#endif  // QCAP_PTM_HPP
