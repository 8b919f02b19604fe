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
//
// Brute-force dense-matrix oracles. Everything here works on explicit 2^n
// complex matrices and stays independent of the symplectic implementation it
// cross-checks.

#ifndef QCAP_TESTS_DENSE_ORACLE_HPP
#define QCAP_TESTS_DENSE_ORACLE_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qcap/circuit.hpp"
#include "qcap/pauli.hpp"

namespace qcap::oracle {

// 2^n x 2^n matrix of a gate embedded at its qubits (qubit 0 is the most
// significant tensor factor).
Eigen::MatrixXcd embedded_gate_unitary(const Gate &gate, uint32_t n);

Eigen::MatrixXcd layer_unitary(const Layer &layer, uint32_t n);

// U(c) = U(L_d) ... U(L_1).
Eigen::MatrixXcd circuit_unitary(const Circuit &c);

// Matches M against sign * (Pauli word); nullopt if M is not a signed Pauli.
std::optional<SignedPauli> match_signed_pauli(const Eigen::MatrixXcd &m,
                                              uint32_t n, double tol = 1e-9);

// U p U^dag computed densely and matched back to a signed Pauli.
SignedPauli conjugate_dense(const Eigen::MatrixXcd &u, const SignedPauli &p);

// Ideal output distribution concentrated on one bitstring; nullopt when the
// statevector is not a computational basis state.
std::optional<std::vector<uint8_t>> statevector_target_bits(const Circuit &c);

}  // namespace qcap::oracle

#endif  // QCAP_TESTS_DENSE_ORACLE_HPP
