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

#ifndef QCAP_QPA_MODEL_HPP
#define QCAP_QPA_MODEL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcap/dataset.hpp"
#include "qcap/mlp.hpp"

namespace qcap {

struct FilterSpec {
  uint32_t l = 1;       // gate-filter hop radius
  uint32_t l_meas = 1;  // measurement-filter hop radius
};

struct EpochStats {
  uint32_t epoch = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
};

// The capability model: one windowed MLP per tracked error predicting its
// per-layer rate, optional measurement nets (PST metric only), and the fixed
// head that propagates the rates and applies the closed-form success formula.
struct QpaModel {
  std::string graph_spec;
  ConnectivityGraph graph = ConnectivityGraph(1, {}, "trivial");
  uint32_t hops = 2;
  uint32_t max_weight = 2;
  FilterSpec filter;
  Metric metric = Metric::Fidelity;
  double scale = 10000.0;
  std::vector<int> dense_units = {30, 20, 10, 5, 5, 1};

  TrackedErrorSet tracked;
  ChannelSpec channels;

  std::vector<std::vector<uint32_t>> windows;  // per gate net, ascending
  std::vector<MlpParams> gate_nets;            // k nets

  // Measurement nets exist only for the PST metric: one per tracked error
  // whose Pauli contains X or Y.
  std::vector<size_t> meas_error_index;
  std::vector<std::vector<uint32_t>> meas_windows;
  std::vector<MlpParams> meas_nets;

  std::vector<EpochStats> train_history;

  size_t num_tracked() const { return tracked.size(); }
  size_t param_count() const;
};

QpaModel build_model(const ConnectivityGraph &g, const std::string &graph_spec,
                     uint32_t hops, uint32_t max_weight,
                     const FilterSpec &filter, Metric metric, double scale,
                     const std::vector<int> &dense_units, uint64_t seed);

// A dataset record preprocessed for fast repeated forward/backward passes:
// per-layer channel lookup plus the propagation tables flattened into slot
// indices of a dense end-of-circuit error vector.
struct CompiledRecord {
  std::string id;
  double target = 0.0;
  std::optional<std::pair<uint64_t, uint64_t>> shots;
  uint32_t depth = 0;
  uint32_t n = 0;
  std::vector<int16_t> layer_channel;  // depth x n, -1 for idle
  std::vector<uint8_t> measured;
  std::vector<uint8_t> target_bits;
  std::vector<int32_t> slot;  // depth x k
  std::vector<int8_t> sign;   // depth x k
  uint32_t num_slots = 0;
  std::vector<uint8_t> slot_is_stochastic;
  std::vector<uint8_t> slot_counts_for_metric;  // metric-filtered mask
  std::vector<int32_t> meas_slot;               // per measurement net

  int16_t channel_at(uint32_t t, uint32_t q) const {
    return layer_channel[static_cast<size_t>(t) * n + q];
  }
};

CompiledRecord compile_record(const QpaModel &model,
                              const DatasetRecord &record);
std::vector<CompiledRecord> compile_records(
    const QpaModel &model, const std::vector<DatasetRecord> &records,
    unsigned threads = 0);

// Scratch buffers reused across forward/backward calls.
struct QpaWorkspace {
  std::vector<std::vector<int>> row_indices;
  std::vector<MlpActivations> gate_acts;
  std::vector<MlpActivations> meas_acts;
  Eigen::MatrixXd rates;                   // depth x k
  Eigen::VectorXd measurement_rates;       // per measurement net
  std::vector<double> v;                   // slot values
  std::vector<std::vector<int>> meas_input;
};

// Runs the network and head; returns the prediction. The workspace holds the
// rate matrix, measurement rates and activations for a following backward.
double qpa_forward(const QpaModel &model, const CompiledRecord &record,
                   QpaWorkspace *ws);

struct QpaGradients {
  std::vector<MlpParams> gate;
  std::vector<MlpParams> meas;

  static QpaGradients zeros_like(const QpaModel &model);
  void set_zero();
  void add(const QpaGradients &other);
};

// Accumulates d(loss)/d(parameters) for d(loss)/d(prediction) = dpred, using
// the activations of the matching qpa_forward call.
void qpa_backward(const QpaModel &model, const CompiledRecord &record,
                  QpaWorkspace *ws, double dpred, QpaGradients *grads);

// Convenience API mirroring the one-off operations: full forward returning
// the rate matrix and measurement-rate vector alongside the prediction.
struct ForwardOutput {
  double prediction = 0.0;
  Eigen::MatrixXd rates;
  Eigen::VectorXd measurement_rates;
};
ForwardOutput qpa_forward_full(const QpaModel &model,
                               const DatasetRecord &record);

// Elementwise forward over records; output order matches input order.
std::vector<double> predict_batch(const QpaModel &model,
                                  const std::vector<DatasetRecord> &records,
                                  unsigned threads = 0);
std::vector<double> predict_compiled(const QpaModel &model,
                                     const std::vector<CompiledRecord> &records,
                                     unsigned threads = 0);

// Mean of (scale*prediction - scale*target)^2 over the batch, plus analytic
// parameter gradients.
std::pair<double, QpaGradients> loss_and_gradients(
    const QpaModel &model, const std::vector<CompiledRecord> &batch);

void save_checkpoint(const QpaModel &model, const std::string &path);
QpaModel load_checkpoint(const std::string &path);

}  // namespace qcap

#endif  // QCAP_QPA_MODEL_HPP
