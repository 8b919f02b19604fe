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

#include "oracles/dense_oracle.hpp"

#include <cmath>
#include <complex>

#include "qcap/ptm.hpp"

namespace qcap::oracle {

using Complex = std::complex<double>;

Eigen::MatrixXcd embedded_gate_unitary(const Gate &gate, uint32_t n) {
  const Eigen::MatrixXcd u = gate_unitary(gate.kind);
  const size_t dim = 1ULL << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const std::vector<uint32_t> qubits = gate.qubits();
  const size_t m = qubits.size();
  auto sub_index = [&](size_t full) {
    size_t sub = 0;
    for (size_t i = 0; i < m; ++i) {
      sub = (sub << 1) | ((full >> (n - 1 - qubits[i])) & 1);
    }
    return sub;
  };
  for (size_t row = 0; row < dim; ++row) {
    for (size_t col = 0; col < dim; ++col) {
      // Bits outside the gate's qubits must match.
      size_t mask = 0;
      for (uint32_t q : qubits) mask |= 1ULL << (n - 1 - q);
      if ((row & ~mask) != (col & ~mask)) continue;
      out(row, col) = u(sub_index(row), sub_index(col));
    }
  }
  return out;
}

Eigen::MatrixXcd layer_unitary(const Layer &layer, uint32_t n) {
  const size_t dim = 1ULL << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Gate &gate : layer.gates) {
    u = embedded_gate_unitary(gate, n) * u;
  }
  return u;
}

Eigen::MatrixXcd circuit_unitary(const Circuit &c) {
  const size_t dim = 1ULL << c.n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Layer &layer : c.layers) {
    u = layer_unitary(layer, c.n) * u;
  }
  return u;
}

std::optional<SignedPauli> match_signed_pauli(const Eigen::MatrixXcd &m,
                                              uint32_t n, double tol) {
  const size_t count = 1ULL << (2 * n);
  const double dim = static_cast<double>(1ULL << n);
  for (size_t code = 0; code < count; ++code) {
    SignedPauli p(n);
    for (uint32_t q = 0; q < n; ++q) {
      p.set_letter(q,
                   static_cast<PauliLetter>((code >> (2 * (n - 1 - q))) & 3));
    }
    const Eigen::MatrixXcd w = pauli_matrix(p);
    const Complex coeff = (w.adjoint() * m).trace() / dim;
    if (std::abs(coeff - Complex(1, 0)) < tol) {
      // Confirm the rest of the matrix matches.
      if ((m - w).cwiseAbs().maxCoeff() < tol) return p;
    } else if (std::abs(coeff - Complex(-1, 0)) < tol) {
      if ((m + w).cwiseAbs().maxCoeff() < tol) return p.negated();
    }
  }
  return std::nullopt;
}

SignedPauli conjugate_dense(const Eigen::MatrixXcd &u, const SignedPauli &p) {
  const uint32_t n = p.num_qubits();
  Eigen::MatrixXcd conj = u * pauli_matrix(p) * u.adjoint();
  auto matched = match_signed_pauli(conj, n);
  if (!matched) {
    throw std::runtime_error("dense conjugation did not yield a signed Pauli");
  }
  return *matched;
}

std::optional<std::vector<uint8_t>> statevector_target_bits(const Circuit &c) {
  // Restrict to the active qubits: build the circuit on the compressed space.
  Circuit local = c;
  local.n = c.width();
  std::vector<int> to_local(c.n, -1);
  for (uint32_t i = 0; i < c.width(); ++i) {
    to_local[c.active_qubits[i]] = static_cast<int>(i);
  }
  local.active_qubits.clear();
  for (uint32_t i = 0; i < c.width(); ++i) local.active_qubits.push_back(i);
  for (Layer &layer : local.layers) {
    for (Gate &g : layer.gates) {
      g.q0 = static_cast<uint32_t>(to_local[g.q0]);
      if (is_two_qubit(g.kind)) {
        g.q1 = static_cast<uint32_t>(to_local[g.q1]);
      }
    }
  }
  const size_t dim = 1ULL << local.n;
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
  state(0) = 1.0;
  for (const Layer &layer : local.layers) {
    state = layer_unitary(layer, local.n) * state;
  }
  for (size_t x = 0; x < dim; ++x) {
    if (std::norm(state(x)) > 1.0 - 1e-9) {
      std::vector<uint8_t> bits(local.n);
      for (uint32_t q = 0; q < local.n; ++q) {
        bits[q] = (x >> (local.n - 1 - q)) & 1;
      }
      return bits;
    }
  }
  return std::nullopt;
}

}  // namespace qcap::oracle
