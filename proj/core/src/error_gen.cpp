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

#include "qcap/error_gen.hpp"

#include <algorithm>

namespace qcap {

char error_kind_char(ErrorKind k) { return k == ErrorKind::H ? 'H' : 'S'; }

ErrorKind error_kind_from_char(char c) {
  if (c == 'H') return ErrorKind::H;
  if (c == 'S') return ErrorKind::S;
  throw ValidationError(std::string("unknown error kind '") + c + "'");
}

ErrorGenerator::ErrorGenerator(ErrorKind k, SignedPauli p)
    : kind(k), pauli(std::move(p)) {
  if (pauli.is_identity()) {
    throw ValidationError("error generator Pauli must be non-identity");
  }
  pauli.set_sign(1);
}

std::string ErrorGenerator::to_string() const {
  std::string s(1, error_kind_char(kind));
  s += ':';
  std::string qubits = "[";
  bool first = true;
  for (uint32_t q : pauli.support()) {
    s += letter_to_char(pauli.letter(q));
    if (!first) qubits += ',';
    qubits += std::to_string(q);
    first = false;
  }
  s += '@';
  s += qubits;
  s += ']';
  return s;
}

ErrorGenerator ErrorGenerator::from_string(const std::string &text,
                                           uint32_t n) {
  auto colon = text.find(':');
  auto at = text.find('@');
  if (colon != 1 || at == std::string::npos || text.size() < at + 3 ||
      text[at + 1] != '[' || text.back() != ']') {
    throw ValidationError("bad error generator string '" + text + "'");
  }
  ErrorKind kind = error_kind_from_char(text[0]);
  std::string letters = text.substr(2, at - 2);
  std::string qubit_list = text.substr(at + 2, text.size() - at - 3);
  std::vector<uint32_t> qubits;
  size_t pos = 0;
  while (pos < qubit_list.size()) {
    size_t comma = qubit_list.find(',', pos);
    if (comma == std::string::npos) comma = qubit_list.size();
    qubits.push_back(
        static_cast<uint32_t>(std::stoul(qubit_list.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  if (qubits.size() != letters.size()) {
    throw ValidationError("error generator letters/qubits length mismatch");
  }
  SignedPauli p(n);
  for (size_t i = 0; i < qubits.size(); ++i) {
    p.set_letter(qubits[i], letter_from_char(letters[i]));
  }
  return ErrorGenerator(kind, std::move(p));
}

namespace {
const PauliLetter kLetters[3] = {PauliLetter::X, PauliLetter::Y,
                                 PauliLetter::Z};
}

TrackedErrorSet TrackedErrorSet::build(const ConnectivityGraph &g,
                                       uint32_t hops, uint32_t max_weight) {
  if (max_weight < 1 || max_weight > 2) {
    throw ValidationError("tracked-set max_weight must be 1 or 2");
  }
  TrackedErrorSet ts;
  ts.n_ = g.num_qubits();
  ts.hops_ = hops;
  ts.max_weight_ = max_weight;
  // Weight-1 block: qubit asc, letter X<Y<Z, kind H<S.
  for (uint32_t q = 0; q < ts.n_; ++q) {
    for (PauliLetter l : kLetters) {
      for (ErrorKind kind : {ErrorKind::H, ErrorKind::S}) {
        ts.generators_.emplace_back(kind, SignedPauli::single(ts.n_, q, l));
      }
    }
  }
  if (max_weight == 2) {
    // Weight-2 block: pair asc, letter pair lex, kind H<S.
    for (auto [a, b] : g.pairs_within(hops)) {
      for (PauliLetter la : kLetters) {
        for (PauliLetter lb : kLetters) {
          SignedPauli p(ts.n_);
          p.set_letter(a, la);
          p.set_letter(b, lb);
          for (ErrorKind kind : {ErrorKind::H, ErrorKind::S}) {
            ts.generators_.emplace_back(kind, p);
          }
        }
      }
    }
  }
  for (size_t j = 0; j < ts.generators_.size(); ++j) {
    const ErrorGenerator &gen = ts.generators_[j];
    ts.index_[{static_cast<uint8_t>(gen.kind), gen.pauli.word_hash()}]
        .push_back(j);
  }
  return ts;
}

std::optional<size_t> TrackedErrorSet::index_of(
    const ErrorGenerator &gen) const {
  auto it =
      index_.find({static_cast<uint8_t>(gen.kind), gen.pauli.word_hash()});
  if (it == index_.end()) return std::nullopt;
  for (size_t j : it->second) {
    if (generators_[j].pauli.same_word(gen.pauli)) return j;
  }
  return std::nullopt;
}

PropagationTables compute_propagation(const Circuit &c,
                                      const TrackedErrorSet &ts) {
  if (ts.num_qubits() != c.n) {
    throw ValidationError("tracked set and circuit device size mismatch");
  }
  const uint32_t d = c.depth();
  const uint32_t k = static_cast<uint32_t>(ts.size());
  PropagationTables tables;
  tables.depth = d;
  tables.num_tracked = k;
  tables.pauli.resize(static_cast<size_t>(d) * k);
  tables.sign.resize(static_cast<size_t>(d) * k);
  // Row i needs conjugation by layers i+1..d; walk back-to-front extending
  // the suffix tableau one layer at a time.
  CliffordTableau suffix = CliffordTableau::identity(c.n);
  for (uint32_t i = d; i-- > 0;) {
    for (uint32_t j = 0; j < k; ++j) {
      SignedPauli moved = suffix.conjugate(ts.at(j).pauli);
      size_t idx = static_cast<size_t>(i) * k + j;
      tables.sign[idx] = static_cast<int8_t>(
          ts.at(j).kind == ErrorKind::S ? 1 : moved.sign());
      moved.set_sign(1);
      tables.pauli[idx] = std::move(moved);
    }
    if (i > 0) {
      suffix = CliffordTableau::compose(
          suffix, CliffordTableau::of_layer(c.layers[i], c.n));
    }
  }
  return tables;
}

void EndErrorVector::add(ErrorKind kind, const SignedPauli &pauli,
                         double rate) {
  if (pauli.is_identity()) {
    throw ValidationError("end-error keys must be non-identity Paulis");
  }
  SignedPauli key = pauli;
  key.set_sign(1);
  entries_[{kind, std::move(key)}] += rate;
}

double EndErrorVector::get(ErrorKind kind, const SignedPauli &pauli) const {
  SignedPauli key = pauli;
  key.set_sign(1);
  auto it = entries_.find({kind, std::move(key)});
  return it == entries_.end() ? 0.0 : it->second;
}

EndErrorVector accumulate(
    std::span<const double> rates, const PropagationTables &tables,
    const TrackedErrorSet &ts,
    std::span<const std::pair<ErrorGenerator, double>> measurement_rates) {
  const size_t d = tables.depth, k = tables.num_tracked;
  if (k != ts.size()) {
    throw ValidationError("tables/tracked-set column mismatch");
  }
  if (rates.size() != d * k) {
    throw ValidationError("rate matrix dimensions do not match tables");
  }
  EndErrorVector v;
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < k; ++j) {
      double r = rates[i * k + j];
      if (r == 0.0) continue;
      v.add(ts.at(j).kind, tables.pauli[i * k + j],
            tables.sign[i * k + j] * r);
    }
  }
  for (const auto &[gen, rate] : measurement_rates) {
    if (rate != 0.0) v.add(gen.kind, gen.pauli, rate);
  }
  return v;
}

double fidelity_from(const EndErrorVector &v) {
  double total = 0.0;
  v.for_each([&total](ErrorKind kind, const SignedPauli &, double value) {
    total += kind == ErrorKind::S ? value : value * value;
  });
  return 1.0 - total;
}

double pst_from(const EndErrorVector &v) {
  double total = 0.0;
  v.for_each([&total](ErrorKind kind, const SignedPauli &p, double value) {
    if (!p.contains_xy()) return;
    total += kind == ErrorKind::S ? value : value * value;
  });
  return 1.0 - total;
}

}  // namespace qcap
