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

#include "qcap/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace qcap {

namespace {
nlohmann::json shots_json(
    const std::optional<std::pair<uint64_t, uint64_t>> &shots) {
  if (!shots) return nullptr;
  return nlohmann::json::array({shots->first, shots->second});
}

std::optional<std::pair<uint64_t, uint64_t>> shots_from_json(
    const nlohmann::json &j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError("shots must be [N_shots, successes] or null");
  }
  return std::make_pair(j[0].get<uint64_t>(), j[1].get<uint64_t>());
}
}  // namespace

void write_values_jsonl(const std::string &path,
                        const std::vector<SimValue> &values) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  for (const SimValue &v : values) {
    // Manual assembly keeps the value as a 17-significant-digit decimal.
    nlohmann::json id = v.id;
    out << "{\"id\":" << id.dump() << ",\"metric\":\""
        << metric_label(v.metric) << "\",\"value\":" << format_double17(v.value)
        << ",\"method\":\"" << v.method
        << "\",\"shots\":" << shots_json(v.shots).dump() << "}\n";
  }
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::vector<SimValue> read_values_jsonl(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::vector<SimValue> values;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      SimValue v;
      v.id = j.at("id").get<std::string>();
      v.metric = metric_from_label(j.at("metric").get<std::string>());
      v.value = j.at("value").get<double>();
      v.method = j.value("method", "");
      v.shots = shots_from_json(j.value("shots", nlohmann::json()));
      values.push_back(std::move(v));
    } catch (const std::exception &e) {
      throw ValidationError("values line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return values;
}

void ensure_tables(DatasetRecord *record, const ConnectivityGraph &g,
                   const ChannelSpec &spec, const TrackedErrorSet &ts) {
  if (record->tables) return;
  Circuit c = decode_circuit(record->tensor, g, spec);
  record->tables = compute_propagation(c, ts);
}

std::string circuit_content_key(const Circuit &c) {
  std::ostringstream key;
  for (uint32_t q : c.active_qubits) key << q << ',';
  key << '|';
  for (const Layer &layer : c.layers) {
    for (const Gate &g : layer.gates) {
      key << static_cast<int>(g.kind) << ':' << g.q0 << ':' << g.q1 << ',';
    }
    key << ';';
  }
  return key.str();
}

DatasetSplit assemble(const std::vector<Circuit> &circuits,
                      const std::map<std::string, SimValue> &values,
                      const ConnectivityGraph &g,
                      const AssembleOptions &opts) {
  const double fsum =
      opts.fractions[0] + opts.fractions[1] + opts.fractions[2];
  if (std::abs(fsum - 1.0) > 1e-9) {
    throw ValidationError("split fractions must sum to 1");
  }
  DatasetSplit split;
  // Filter by threshold.
  std::vector<const Circuit *> kept;
  for (const Circuit &c : circuits) {
    auto it = values.find(c.id);
    if (it == values.end()) {
      throw ValidationError("no value for circuit id '" + c.id + "'");
    }
    if (it->second.value < opts.threshold) {
      ++split.dropped_below_threshold;
      continue;
    }
    kept.push_back(&c);
  }
  // Remove duplicate circuits (identical layers and active qubits).
  std::unordered_set<std::string> seen;
  std::vector<const Circuit *> unique;
  for (const Circuit *c : kept) {
    if (seen.insert(circuit_content_key(*c)).second) {
      unique.push_back(c);
    } else {
      ++split.dropped_duplicates;
    }
  }
  if (unique.empty()) {
    split.warning = "no circuits survived the threshold filter";
    std::cerr << "warning: " << split.warning << "\n";
    return split;
  }
  Rng rng(opts.seed, 0);
  rng.shuffle(unique);
  uint32_t d_max = opts.d_max;
  if (d_max == 0) {
    for (const Circuit *c : unique) d_max = std::max(d_max, c->depth());
  }
  split.d_max = d_max;
  const size_t total = unique.size();
  size_t n_train = static_cast<size_t>(std::llround(
      static_cast<double>(total) * opts.fractions[0]));
  size_t n_valid = static_cast<size_t>(std::llround(
      static_cast<double>(total) * opts.fractions[1]));
  n_train = std::min(n_train, total);
  n_valid = std::min(n_valid, total - n_train);
  const ChannelSpec spec = ChannelSpec::for_graph(g);
  auto make_record = [&](const Circuit &c) {
    DatasetRecord record;
    record.id = c.id;
    record.metric = opts.metric;
    const SimValue &v = values.at(c.id);
    record.target = v.value;
    record.shots = v.shots;
    record.tensor = encode_circuit(c, g, spec, d_max);
    encode_measurement(c, opts.metric, &record.tensor);
    return record;
  };
  for (size_t i = 0; i < total; ++i) {
    DatasetRecord record = make_record(*unique[i]);
    if (i < n_train) {
      split.train.push_back(std::move(record));
    } else if (i < n_train + n_valid) {
      split.validation.push_back(std::move(record));
    } else {
      split.test.push_back(std::move(record));
    }
  }
  return split;
}

namespace {
constexpr const char *kDatasetSchema = "qcap-dataset-v1";

std::string record_line(const DatasetRecord &record,
                        const PropagationTables *tables,
                        const TrackedErrorSet *ts) {
  const CircuitTensor &t = record.tensor;
  std::ostringstream out;
  out << "{\"id\":" << nlohmann::json(record.id).dump()
      << ",\"target\":" << format_double17(record.target) << ",\"metric\":\""
      << metric_label(record.metric)
      << "\",\"shots\":" << shots_json(record.shots).dump() << ",\"tensor\":{";
  out << "\"I\":\"" << base64_encode(t.bits) << "\",\"n\":" << t.n
      << ",\"d_max\":" << t.d_max << ",\"n_ch\":" << t.n_ch
      << ",\"true_depth\":" << t.true_depth << ",\"M\":[[";
  for (uint32_t q = 0; q < t.n; ++q) {
    if (q) out << ',';
    out << static_cast<int>(t.measured[q]);
  }
  out << "],[";
  for (uint32_t q = 0; q < t.n; ++q) {
    if (q) out << ',';
    out << static_cast<int>(t.target_bits[q]);
  }
  out << "]]}";
  if (tables) {
    out << ",\"perm\":[";
    const size_t cells = static_cast<size_t>(tables->depth) *
                         tables->num_tracked;
    for (size_t idx = 0; idx < cells; ++idx) {
      if (idx) out << ',';
      size_t j = idx % tables->num_tracked;
      const SignedPauli &p = tables->pauli[idx];
      out << '"' << error_kind_char(ts->at(j).kind) << ':';
      for (uint32_t q = 0; q < p.num_qubits(); ++q) {
        out << letter_to_char(p.letter(q));
      }
      out << '"';
    }
    out << "],\"sign\":[";
    for (size_t idx = 0; idx < cells; ++idx) {
      if (idx) out << ',';
      out << static_cast<int>(tables->sign[idx]);
    }
    out << ']';
  } else {
    out << ",\"perm\":null,\"sign\":null";
  }
  out << '}';
  return out.str();
}
}  // namespace

void write_dataset_file(const std::string &path,
                        const std::vector<DatasetRecord> &records,
                        const DatasetMeta &meta, const ConnectivityGraph &g,
                        const ChannelSpec &spec, const TrackedErrorSet &ts) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  nlohmann::ordered_json header;
  header["schema"] = kDatasetSchema;
  header["graph"] = meta.graph_spec;
  header["n"] = meta.n;
  header["hops"] = meta.hops;
  header["max_weight"] = meta.max_weight;
  header["k"] = meta.k;
  header["d_max"] = meta.d_max;
  header["n_ch"] = meta.n_ch;
  header["metric"] = metric_label(meta.metric);
  header["tables"] = meta.tables_mode;
  header["count"] = records.size();
  out << header.dump() << "\n";
  const bool inline_tables = meta.tables_mode == "inline";
  for (const DatasetRecord &record : records) {
    if (inline_tables) {
      if (record.tables) {
        out << record_line(record, &*record.tables, &ts) << "\n";
      } else {
        // Compute transiently so memory stays bounded for large datasets.
        Circuit c = decode_circuit(record.tensor, g, spec);
        PropagationTables tables = compute_propagation(c, ts);
        out << record_line(record, &tables, &ts) << "\n";
      }
    } else {
      out << record_line(record, nullptr, nullptr) << "\n";
    }
  }
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::vector<DatasetRecord> read_dataset_file(const std::string &path,
                                             DatasetMeta *meta_out) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("dataset file '" + path + "' is empty");
  }
  DatasetMeta meta;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const std::exception &e) {
    throw ValidationError("line 1: bad header JSON: " + std::string(e.what()));
  }
  if (header.value("schema", "") != kDatasetSchema) {
    throw ValidationError("line 1: expected schema '" +
                          std::string(kDatasetSchema) + "', got '" +
                          header.value("schema", "<missing>") + "'");
  }
  meta.graph_spec = header.at("graph").get<std::string>();
  meta.n = header.at("n").get<uint32_t>();
  meta.hops = header.at("hops").get<uint32_t>();
  meta.max_weight = header.at("max_weight").get<uint32_t>();
  meta.k = header.at("k").get<uint32_t>();
  meta.d_max = header.at("d_max").get<uint32_t>();
  meta.n_ch = header.at("n_ch").get<uint32_t>();
  meta.metric = metric_from_label(header.at("metric").get<std::string>());
  meta.tables_mode = header.at("tables").get<std::string>();
  const size_t expected = header.at("count").get<size_t>();
  std::vector<DatasetRecord> records;
  records.reserve(expected);
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception &e) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": bad JSON: " + e.what());
    }
    try {
      DatasetRecord record;
      record.id = j.at("id").get<std::string>();
      record.target = j.at("target").get<double>();
      record.metric = metric_from_label(j.at("metric").get<std::string>());
      record.shots = shots_from_json(j.value("shots", nlohmann::json()));
      const auto &jt = j.at("tensor");
      CircuitTensor &t = record.tensor;
      t.n = jt.at("n").get<uint32_t>();
      t.d_max = jt.at("d_max").get<uint32_t>();
      t.n_ch = jt.at("n_ch").get<uint32_t>();
      t.true_depth = jt.at("true_depth").get<uint32_t>();
      if (t.n != meta.n || t.d_max != meta.d_max || t.n_ch != meta.n_ch) {
        throw ValidationError("tensor dimensions disagree with the header");
      }
      if (t.true_depth > t.d_max) {
        throw ValidationError("true_depth exceeds d_max");
      }
      t.bits = base64_decode(jt.at("I").get<std::string>());
      const size_t expected_bytes =
          (static_cast<size_t>(t.n) * t.d_max * t.n_ch + 7) / 8;
      if (t.bits.size() != expected_bytes) {
        throw ValidationError("tensor payload has the wrong size");
      }
      const auto &m = jt.at("M");
      if (!m.is_array() || m.size() != 2 || m[0].size() != t.n ||
          m[1].size() != t.n) {
        throw ValidationError("M must be a 2 x n bit matrix");
      }
      t.measured.resize(t.n);
      t.target_bits.resize(t.n);
      for (uint32_t q = 0; q < t.n; ++q) {
        t.measured[q] = m[0][q].get<int>() ? 1 : 0;
        t.target_bits[q] = m[1][q].get<int>() ? 1 : 0;
        if (t.target_bits[q] && !t.measured[q]) {
          throw ValidationError("target bit set outside the measured mask");
        }
      }
      const auto &perm = j.at("perm");
      const auto &sign = j.at("sign");
      if (meta.tables_mode == "inline") {
        if (perm.is_null() || sign.is_null()) {
          throw ValidationError("inline dataset is missing tables");
        }
        PropagationTables tables;
        tables.depth = t.true_depth;
        tables.num_tracked = meta.k;
        const size_t cells = static_cast<size_t>(tables.depth) * meta.k;
        if (perm.size() != cells || sign.size() != cells) {
          throw ValidationError("tables have the wrong dimensions");
        }
        tables.pauli.reserve(cells);
        tables.sign.reserve(cells);
        for (size_t idx = 0; idx < cells; ++idx) {
          const std::string entry = perm[idx].get<std::string>();
          if (entry.size() != meta.n + 2 || entry[1] != ':') {
            throw ValidationError("bad perm entry '" + entry + "'");
          }
          SignedPauli p(meta.n);
          for (uint32_t q = 0; q < meta.n; ++q) {
            p.set_letter(q, letter_from_char(entry[2 + q]));
          }
          tables.pauli.push_back(std::move(p));
          int s = sign[idx].get<int>();
          if (s != 1 && s != -1) {
            throw ValidationError("sign entries must be +1 or -1");
          }
          tables.sign.push_back(static_cast<int8_t>(s));
        }
        record.tables = std::move(tables);
      }
      records.push_back(std::move(record));
    } catch (const nlohmann::json::exception &e) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": schema violation: " + e.what());
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  if (records.size() != expected) {
    throw ValidationError("dataset header count " + std::to_string(expected) +
                          " does not match record count " +
                          std::to_string(records.size()));
  }
  if (meta_out) *meta_out = meta;
  return records;
}

void write_dataset_dir(const std::string &dir, const DatasetSplit &split,
                       const DatasetMeta &meta, const ConnectivityGraph &g,
                       const ChannelSpec &spec, const TrackedErrorSet &ts) {
  std::filesystem::create_directories(dir);
  write_dataset_file(dir + "/train.jsonl", split.train, meta, g, spec, ts);
  write_dataset_file(dir + "/valid.jsonl", split.validation, meta, g, spec,
                     ts);
  write_dataset_file(dir + "/test.jsonl", split.test, meta, g, spec, ts);
  nlohmann::ordered_json manifest;
  manifest["schema"] = kDatasetSchema;
  manifest["graph"] = meta.graph_spec;
  manifest["metric"] = metric_label(meta.metric);
  manifest["d_max"] = meta.d_max;
  manifest["counts"] = {{"train", split.train.size()},
                        {"validation", split.validation.size()},
                        {"test", split.test.size()}};
  manifest["dropped_below_threshold"] = split.dropped_below_threshold;
  manifest["dropped_duplicates"] = split.dropped_duplicates;
  std::ofstream out(dir + "/manifest.json");
  out << manifest.dump(2) << "\n";
}

}  // namespace qcap
