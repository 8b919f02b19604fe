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

#include "qcap/ptm.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <numeric>
#include <unordered_map>

namespace qcap {

using Complex = std::complex<double>;

namespace {

Eigen::Matrix2cd sigma(PauliLetter l) {
  Eigen::Matrix2cd m;
  switch (l) {
    case PauliLetter::I:
      m << 1, 0, 0, 1;
      break;
    case PauliLetter::X:
      m << 0, 1, 1, 0;
      break;
    case PauliLetter::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case PauliLetter::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Eigen::Matrix2cd rotation(PauliLetter axis, double theta) {
  return std::cos(theta / 2) * Eigen::Matrix2cd::Identity() -
         Complex(0, 1) * std::sin(theta / 2) * sigma(axis);
}

constexpr double kPi = 3.14159265358979323846;

void check_cap(uint32_t n, uint32_t cap, const char *what) {
  if (n > cap) {
    throw ValidationError(std::string(what) + ": " + std::to_string(n) +
                          " qubits exceeds the dense-simulation cap of " +
                          std::to_string(cap));
  }
}

// All 4^n normalized Pauli basis matrices (qubit 0 most significant digit).
std::vector<Eigen::MatrixXcd> pauli_basis(uint32_t n) {
  const size_t dim = 1ULL << n;
  const size_t count = 1ULL << (2 * n);
  const double norm = 1.0 / std::pow(2.0, n / 2.0);
  std::vector<Eigen::MatrixXcd> basis;
  basis.reserve(count);
  for (size_t p = 0; p < count; ++p) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (uint32_t q = 0; q < n; ++q) {
      size_t letter = (p >> (2 * (n - 1 - q))) & 3;
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      const Eigen::Matrix2cd s = sigma(static_cast<PauliLetter>(letter));
      next.topLeftCorner(m.rows(), m.cols()) = s(0, 0) * m;
      next.topRightCorner(m.rows(), m.cols()) = s(0, 1) * m;
      next.bottomLeftCorner(m.rows(), m.cols()) = s(1, 0) * m;
      next.bottomRightCorner(m.rows(), m.cols()) = s(1, 1) * m;
      m = std::move(next);
    }
    (void)dim;
    basis.push_back(norm * m);
  }
  return basis;
}

}  // namespace

Eigen::MatrixXcd gate_unitary(GateKind kind) {
  switch (kind) {
    case GateKind::Xpi2:
      return rotation(PauliLetter::X, kPi / 2);
    case GateKind::Ypi2:
      return rotation(PauliLetter::Y, kPi / 2);
    case GateKind::X3pi2:
      return rotation(PauliLetter::X, 3 * kPi / 2);
    case GateKind::Y3pi2:
      return rotation(PauliLetter::Y, 3 * kPi / 2);
    case GateKind::Xpi:
      return rotation(PauliLetter::X, kPi);
    case GateKind::Ypi:
      return rotation(PauliLetter::Y, kPi);
    case GateKind::Zpi:
      return rotation(PauliLetter::Z, kPi);
    case GateKind::Cnot: {
      Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
      // Control is the most significant (first) factor.
      cnot(0, 0) = 1;
      cnot(1, 1) = 1;
      cnot(2, 3) = 1;
      cnot(3, 2) = 1;
      return cnot;
    }
  }
  throw ValidationError("invalid gate kind");
}

Eigen::MatrixXcd pauli_matrix(const SignedPauli &p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (uint32_t q = 0; q < p.num_qubits(); ++q) {
    const Eigen::Matrix2cd s = sigma(p.letter(q));
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    next.topLeftCorner(m.rows(), m.cols()) = s(0, 0) * m;
    next.topRightCorner(m.rows(), m.cols()) = s(0, 1) * m;
    next.bottomLeftCorner(m.rows(), m.cols()) = s(1, 0) * m;
    next.bottomRightCorner(m.rows(), m.cols()) = s(1, 1) * m;
    m = std::move(next);
  }
  return static_cast<double>(p.sign()) * m;
}

namespace {
Eigen::MatrixXd generator_ptm_with_basis(
    const ErrorGenerator &gen, const std::vector<Eigen::MatrixXcd> &basis,
    const Eigen::MatrixXcd &pmat) {
  const size_t count = basis.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(count, count);
  for (size_t b = 0; b < count; ++b) {
    Eigen::MatrixXcd image;
    if (gen.kind == ErrorKind::H) {
      image = Complex(0, -1) * (pmat * basis[b] - basis[b] * pmat);
    } else {
      image = pmat * basis[b] * pmat - basis[b];
    }
    for (size_t a = 0; a < count; ++a) {
      // Tr[B_a^dag image]; basis matrices are Hermitian.
      out(a, b) = basis[a].cwiseProduct(image).sum().real();
    }
  }
  return out;
}
}  // namespace

Eigen::MatrixXd generator_ptm(const ErrorGenerator &gen, uint32_t n,
                              uint32_t cap) {
  check_cap(n, cap, "generator_ptm");
  if (gen.pauli.num_qubits() != n) {
    throw ValidationError("generator/qubit-count mismatch");
  }
  return generator_ptm_with_basis(gen, pauli_basis(n), pauli_matrix(gen.pauli));
}

namespace {

// PTM of a small unitary (4x4 for one qubit, 16x16 for two).
Eigen::MatrixXd unitary_ptm(const Eigen::MatrixXcd &u, uint32_t m) {
  std::vector<Eigen::MatrixXcd> basis = pauli_basis(m);
  const size_t count = basis.size();
  Eigen::MatrixXd out(count, count);
  for (size_t b = 0; b < count; ++b) {
    Eigen::MatrixXcd image = u * basis[b] * u.adjoint();
    for (size_t a = 0; a < count; ++a) {
      out(a, b) = basis[a].cwiseProduct(image).sum().real();
    }
  }
  return out;
}

const Eigen::MatrixXd &cached_gate_ptm(GateKind kind) {
  static const std::array<Eigen::MatrixXd, kNumGateKinds> cache = [] {
    std::array<Eigen::MatrixXd, kNumGateKinds> c;
    for (int k = 0; k < kNumGateKinds; ++k) {
      auto kind = static_cast<GateKind>(k);
      c[k] = unitary_ptm(gate_unitary(kind), is_two_qubit(kind) ? 2 : 1);
    }
    return c;
  }();
  return cache[static_cast<size_t>(kind)];
}

// Applies a 4^m x 4^m superoperator block acting on tensor axes `axes` to
// every column of M (or to a single vector), in place.
void apply_block(const Eigen::MatrixXd &op, const std::vector<int> &axes,
                 uint32_t w, Eigen::MatrixXd *mat, Eigen::VectorXd *vec) {
  const size_t n_axes = axes.size();
  const size_t block = 1ULL << (2 * n_axes);
  const size_t size = 1ULL << (2 * w);
  // Per-axis strides; axes[0] is the op's most significant digit.
  std::vector<size_t> strides(n_axes);
  size_t zero_mask = 0;
  for (size_t i = 0; i < n_axes; ++i) {
    strides[i] = 1ULL << (2 * (w - 1 - static_cast<size_t>(axes[i])));
    zero_mask |= 3ULL * strides[i];
  }
  std::vector<size_t> offsets(block, 0);
  for (size_t t = 0; t < block; ++t) {
    size_t off = 0;
    for (size_t i = 0; i < n_axes; ++i) {
      off += ((t >> (2 * (n_axes - 1 - i))) & 3) * strides[i];
    }
    offsets[t] = off;
  }
  std::vector<double> gathered(block), produced(block);
  auto apply_column = [&](double *v) {
    for (size_t base = 0; base < size; ++base) {
      if (base & zero_mask) continue;
      for (size_t t = 0; t < block; ++t) gathered[t] = v[base + offsets[t]];
      for (size_t a = 0; a < block; ++a) {
        double acc = 0.0;
        const double *row = op.data() + a;  // column-major: op(a, t)
        for (size_t t = 0; t < block; ++t) acc += row[t * block] * gathered[t];
        produced[a] = acc;
      }
      for (size_t t = 0; t < block; ++t) v[base + offsets[t]] = produced[t];
    }
  };
  if (mat) {
    for (size_t col = 0; col < size; ++col) apply_column(mat->col(col).data());
  }
  if (vec) apply_column(vec->data());
}

}  // namespace

Ptm ideal_layer_ptm(const Layer &layer, uint32_t n, uint32_t cap) {
  check_cap(n, cap, "ideal_layer_ptm");
  validate_layer(layer, n);
  const size_t size = 1ULL << (2 * n);
  Ptm ptm;
  ptm.n = n;
  ptm.matrix = Eigen::MatrixXd::Identity(size, size);
  for (const Gate &g : layer.gates) {
    std::vector<int> axes;
    for (uint32_t q : g.qubits()) axes.push_back(static_cast<int>(q));
    apply_block(cached_gate_ptm(g.kind), axes, n, &ptm.matrix, nullptr);
  }
  return ptm;
}

Ptm noisy_layer_ptm(const Layer &layer, const ErrorModel &model, uint32_t n,
                    uint32_t cap) {
  check_cap(n, cap, "noisy_layer_ptm");
  Ptm ideal = ideal_layer_ptm(layer, n, cap);
  const size_t size = 1ULL << (2 * n);
  // Sum every gate's rate-weighted generators, then exponentiate once.
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(size, size);
  bool any = false;
  std::vector<Eigen::MatrixXcd> basis = pauli_basis(n);
  for (const Gate &g : layer.gates) {
    const GateErrors *errors = model.lookup(g);
    if (!errors) continue;
    for (const auto &[gen, rate] : errors->rates) {
      if (rate == 0.0) continue;
      total += rate * generator_ptm_with_basis(gen, basis,
                                               pauli_matrix(gen.pauli));
      any = true;
    }
  }
  Ptm out;
  out.n = n;
  if (any) {
    out.matrix = total.exp() * ideal.matrix;
  } else {
    out.matrix = std::move(ideal.matrix);
  }
  return out;
}

PauliStateVector PauliStateVector::zero_state(uint32_t n) {
  PauliStateVector psv;
  psv.n = n;
  const size_t count = 1ULL << (2 * n);
  psv.coefficients = Eigen::VectorXd::Zero(count);
  const double c = 1.0 / std::pow(2.0, n / 2.0);
  for (size_t p = 0; p < count; ++p) {
    bool z_type = true;
    for (uint32_t q = 0; q < n && z_type; ++q) {
      size_t letter = (p >> (2 * (n - 1 - q))) & 3;
      if (letter == 1 || letter == 2) z_type = false;  // X or Y
    }
    if (z_type) psv.coefficients[p] = c;
  }
  return psv;
}

struct ExactSimulator::LocalIndex {
  uint32_t width = 0;
  std::unordered_map<uint32_t, int> device_to_local;

  explicit LocalIndex(const Circuit &c) {
    width = c.width();
    for (uint32_t i = 0; i < width; ++i) {
      device_to_local[c.active_qubits[i]] = static_cast<int>(i);
    }
  }

  int local(uint32_t device_qubit) const {
    auto it = device_to_local.find(device_qubit);
    if (it == device_to_local.end()) {
      throw ValidationError(
          "error generator support extends outside the active qubits");
    }
    return it->second;
  }
};

ExactSimulator::ExactSimulator(const ErrorModel &model, uint32_t cap)
    : model_(model), cap_(cap) {}

void ExactSimulator::apply_errors(
    const std::vector<std::pair<ErrorGenerator, double>> &rates,
    const LocalIndex &index, Eigen::MatrixXd *noisy,
    Eigen::VectorXd *state) const {
  if (rates.empty()) return;
  // Group generators into clusters of connected qubit support; blocks on
  // disjoint clusters commute, so exp of the sum factorizes exactly.
  struct Term {
    std::vector<int> local_qubits;  // ascending
    ErrorKind kind;
    std::string letters;  // aligned with local_qubits
    double rate;
  };
  std::vector<Term> terms;
  terms.reserve(rates.size());
  const uint32_t w = index.width;
  std::vector<int> parent(w);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto &[gen, rate] : rates) {
    if (rate == 0.0) continue;
    Term t;
    t.kind = gen.kind;
    t.rate = rate;
    std::vector<std::pair<int, char>> letters;
    for (uint32_t q : gen.pauli.support()) {
      letters.push_back({index.local(q), letter_to_char(gen.pauli.letter(q))});
    }
    std::sort(letters.begin(), letters.end());
    for (auto [lq, ch] : letters) {
      t.local_qubits.push_back(lq);
      t.letters.push_back(ch);
    }
    for (size_t i = 1; i < t.local_qubits.size(); ++i) {
      parent[find(t.local_qubits[0])] = find(t.local_qubits[i]);
    }
    terms.push_back(std::move(t));
  }
  (void)w;
  std::map<int, std::vector<const Term *>> cluster_terms;
  for (const Term &t : terms) {
    cluster_terms[find(t.local_qubits[0])].push_back(&t);
  }
  for (const auto &[root, term_list] : cluster_terms) {
    // Restrict the cluster to qubits actually touched by its terms.
    std::vector<int> touched;
    for (const Term *t : term_list) {
      touched.insert(touched.end(), t->local_qubits.begin(),
                     t->local_qubits.end());
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    const uint32_t m = static_cast<uint32_t>(touched.size());
    check_cap(m, cap_, "error-channel cluster");
    // Content-addressed cache key: local letters + kind + rate bits.
    std::string key;
    key.reserve(term_list.size() * 24);
    key += std::to_string(m);
    for (const Term *t : term_list) {
      key += '|';
      key += error_kind_char(t->kind);
      for (size_t i = 0; i < t->local_qubits.size(); ++i) {
        int pos = static_cast<int>(
            std::lower_bound(touched.begin(), touched.end(),
                             t->local_qubits[i]) -
            touched.begin());
        key += static_cast<char>('0' + pos);
        key += t->letters[i];
      }
      key += ':';
      uint64_t bits;
      static_assert(sizeof(bits) == sizeof(t->rate));
      std::memcpy(&bits, &t->rate, sizeof(bits));
      key += std::to_string(bits);
    }
    Eigen::MatrixXd channel;
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = channel_cache_.find(key);
      if (it != channel_cache_.end()) channel = it->second;
    }
    if (channel.size() == 0) {
      std::vector<Eigen::MatrixXcd> basis = pauli_basis(m);
      const size_t dim = 1ULL << (2 * m);
      Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dim, dim);
      for (const Term *t : term_list) {
        SignedPauli local(m);
        for (size_t i = 0; i < t->local_qubits.size(); ++i) {
          int pos = static_cast<int>(
              std::lower_bound(touched.begin(), touched.end(),
                               t->local_qubits[i]) -
              touched.begin());
          local.set_letter(static_cast<uint32_t>(pos),
                           letter_from_char(t->letters[i]));
        }
        ErrorGenerator local_gen(t->kind, local);
        total += t->rate * generator_ptm_with_basis(local_gen, basis,
                                                    pauli_matrix(local));
      }
      channel = total.exp();
      std::lock_guard<std::mutex> lock(cache_mutex_);
      channel_cache_.emplace(key, channel);
    }
    apply_block(channel, touched, index.width, noisy, state);
  }
}

void ExactSimulator::apply_layer(const Circuit &c, const Layer &layer,
                                 const LocalIndex &index,
                                 Eigen::MatrixXd *noisy,
                                 Eigen::MatrixXd *ideal,
                                 Eigen::VectorXd *state) const {
  (void)c;
  std::vector<std::pair<ErrorGenerator, double>> layer_rates;
  for (const Gate &g : layer.gates) {
    std::vector<int> axes;
    for (uint32_t q : g.qubits()) axes.push_back(index.local(q));
    const Eigen::MatrixXd &gate_ptm = cached_gate_ptm(g.kind);
    if (noisy) apply_block(gate_ptm, axes, index.width, noisy, nullptr);
    if (ideal) apply_block(gate_ptm, axes, index.width, ideal, nullptr);
    if (state) apply_block(gate_ptm, axes, index.width, nullptr, state);
    const GateErrors *errors = model_.lookup(g);
    if (errors) {
      layer_rates.insert(layer_rates.end(), errors->rates.begin(),
                         errors->rates.end());
    }
  }
  apply_errors(layer_rates, index, noisy, state);
}

double ExactSimulator::fidelity(const Circuit &c) const {
  check_cap(c.width(), cap_, "exact fidelity");
  LocalIndex index(c);
  const size_t size = 1ULL << (2 * index.width);
  Eigen::MatrixXd noisy = Eigen::MatrixXd::Identity(size, size);
  Eigen::MatrixXd ideal = Eigen::MatrixXd::Identity(size, size);
  for (const Layer &layer : c.layers) {
    apply_layer(c, layer, index, &noisy, &ideal, nullptr);
  }
  return noisy.cwiseProduct(ideal).sum() / static_cast<double>(size);
}

double ExactSimulator::pst(const Circuit &c, const GateErrors *terminal) const {
  check_cap(c.width(), cap_, "exact PST");
  std::vector<uint8_t> target = target_bitstring(c);  // throws if not definite
  LocalIndex index(c);
  PauliStateVector psv = PauliStateVector::zero_state(index.width);
  for (const Layer &layer : c.layers) {
    apply_layer(c, layer, index, nullptr, nullptr, &psv.coefficients);
  }
  if (terminal) {
    apply_errors(terminal->rates, index, nullptr, &psv.coefficients);
  }
  // <b|rho|b> = 2^{-w/2} * sum over Z-type basis words of c_p * (-1)^{b.z}.
  const uint32_t w = index.width;
  const size_t count = 1ULL << (2 * w);
  double total = 0.0;
  for (size_t p = 0; p < count; ++p) {
    int parity = 0;
    bool z_type = true;
    for (uint32_t q = 0; q < w && z_type; ++q) {
      size_t letter = (p >> (2 * (w - 1 - q))) & 3;
      if (letter == 1 || letter == 2) {
        z_type = false;
      } else if (letter == 3 && target[q]) {
        parity ^= 1;
      }
    }
    if (z_type) {
      total += (parity ? -1.0 : 1.0) * psv.coefficients[p];
    }
  }
  return total / std::pow(2.0, w / 2.0);
}

double exact_fidelity(const Circuit &c, const ErrorModel &model,
                      uint32_t cap) {
  return ExactSimulator(model, cap).fidelity(c);
}

double exact_pst(const Circuit &c, const ErrorModel &model,
                 const GateErrors *terminal, uint32_t cap) {
  return ExactSimulator(model, cap).pst(c, terminal);
}

double first_order_fidelity(const Circuit &c, const ErrorModel &model,
                            const TrackedErrorSet &ts) {
  const uint32_t d = c.depth();
  const size_t k = ts.size();
  std::vector<double> rates(static_cast<size_t>(d) * k, 0.0);
  for (uint32_t i = 0; i < d; ++i) {
    for (const Gate &g : c.layers[i].gates) {
      const GateErrors *errors = model.lookup(g);
      if (!errors) continue;
      for (const auto &[gen, rate] : errors->rates) {
        auto idx = ts.index_of(gen);
        if (!idx) {
          throw ValidationError("model generator " + gen.to_string() +
                                " is not in the tracked set");
        }
        rates[static_cast<size_t>(i) * k + *idx] += rate;
      }
    }
  }
  PropagationTables tables = compute_propagation(c, ts);
  return fidelity_from(accumulate(rates, tables, ts));
}

}  // namespace qcap
