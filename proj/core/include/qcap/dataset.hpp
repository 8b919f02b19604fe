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

#ifndef QCAP_DATASET_HPP
#define QCAP_DATASET_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcap/encoding.hpp"
#include "qcap/error_gen.hpp"

namespace qcap {

// One simulated (or measured) ground-truth value.
struct SimValue {
  std::string id;
  Metric metric = Metric::Fidelity;
  double value = 0.0;
  std::string method;  // "exact" | "first_order"
  std::optional<std::pair<uint64_t, uint64_t>> shots;  // (N_shots, successes)
};

void write_values_jsonl(const std::string &path,
                        const std::vector<SimValue> &values);
std::vector<SimValue> read_values_jsonl(const std::string &path);

struct DatasetRecord {
  std::string id;
  CircuitTensor tensor;
  double target = 0.0;
  Metric metric = Metric::Fidelity;
  std::optional<std::pair<uint64_t, uint64_t>> shots;
  // Propagation tables; absent when the file uses recompute-on-load mode.
  std::optional<PropagationTables> tables;
};

// Recomputes record.tables from the tensor if absent.
void ensure_tables(DatasetRecord *record, const ConnectivityGraph &g,
                   const ChannelSpec &spec, const TrackedErrorSet &ts);

struct DatasetMeta {
  std::string graph_spec;
  uint32_t n = 0;
  uint32_t hops = 0;
  uint32_t max_weight = 2;
  uint32_t k = 0;
  uint32_t d_max = 0;
  uint32_t n_ch = 0;
  Metric metric = Metric::Fidelity;
  std::string tables_mode = "inline";  // "inline" | "recompute"
};

struct AssembleOptions {
  double threshold = 0.85;
  std::array<double, 3> fractions{0.5625, 0.1875, 0.25};
  uint64_t seed = 0;
  Metric metric = Metric::Fidelity;
  uint32_t d_max = 0;  // 0: use the max depth over retained circuits
};

struct DatasetSplit {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> validation;
  std::vector<DatasetRecord> test;
  uint32_t d_max = 0;
  size_t dropped_below_threshold = 0;
  size_t dropped_duplicates = 0;
  std::string warning;
};

// Canonical content key of a circuit (active qubits plus layer list); two
// circuits are duplicates iff their keys match.
std::string circuit_content_key(const Circuit &c);

// Filters circuits below the threshold, removes duplicate circuits (identical
// layers and active qubits), shuffles with the seed, splits by the fractions
// and encodes each record. Throws on a circuit id with no value.
DatasetSplit assemble(const std::vector<Circuit> &circuits,
                      const std::map<std::string, SimValue> &values,
                      const ConnectivityGraph &g, const AssembleOptions &opts);

// JSON-lines dataset file: one header line with the schema and geometry
// metadata, then one record per line. In "inline" mode each record carries
// its propagation tables; in "recompute" mode they are rebuilt on load from
// the decoded tensor.
void write_dataset_file(const std::string &path,
                        const std::vector<DatasetRecord> &records,
                        const DatasetMeta &meta, const ConnectivityGraph &g,
                        const ChannelSpec &spec, const TrackedErrorSet &ts);

std::vector<DatasetRecord> read_dataset_file(const std::string &path,
                                             DatasetMeta *meta_out);

// Writes train/valid/test.jsonl plus a small manifest.json under dir.
void write_dataset_dir(const std::string &dir, const DatasetSplit &split,
                       const DatasetMeta &meta, const ConnectivityGraph &g,
                       const ChannelSpec &spec, const TrackedErrorSet &ts);

}  // namespace qcap

#endif  // QCAP_DATASET_HPP
