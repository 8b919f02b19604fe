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

#include "qcap/qpa_model.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>

#include <json.hpp>

namespace qcap {

namespace {
// Qubits within `radius` hops of the support set, ascending.
std::vector<uint32_t> window_of(const ConnectivityGraph &g,
                                const std::vector<uint32_t> &support,
                                uint32_t radius) {
  std::vector<uint32_t> dist(g.num_qubits(), UINT32_MAX);
  std::deque<uint32_t> queue;
  for (uint32_t q : support) {
    dist[q] = 0;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    uint32_t q = queue.front();
    queue.pop_front();
    if (dist[q] == radius) continue;
    for (uint32_t r : g.neighbors(q)) {
      if (dist[r] == UINT32_MAX) {
        dist[r] = dist[q] + 1;
        queue.push_back(r);
      }
    }
  }
  std::vector<uint32_t> window;
  for (uint32_t q = 0; q < g.num_qubits(); ++q) {
    if (dist[q] != UINT32_MAX) window.push_back(q);
  }
  return window;
}
}  // namespace

size_t QpaModel::param_count() const {
  size_t count = 0;
  for (const MlpParams &p : gate_nets) count += p.param_count();
  for (const MlpParams &p : meas_nets) count += p.param_count();
  return count;
}

QpaModel build_model(const ConnectivityGraph &g, const std::string &graph_spec,
                     uint32_t hops, uint32_t max_weight,
                     const FilterSpec &filter, Metric metric, double scale,
                     const std::vector<int> &dense_units, uint64_t seed) {
  QpaModel model;
  model.graph_spec = graph_spec;
  model.graph = g;
  model.hops = hops;
  model.max_weight = max_weight;
  model.filter = filter;
  model.metric = metric;
  model.scale = scale;
  model.dense_units = dense_units;
  model.tracked = TrackedErrorSet::build(g, hops, max_weight);
  model.channels = ChannelSpec::for_graph(g);
  Rng rng(seed, 0);
  const size_t k = model.tracked.size();
  model.windows.reserve(k);
  model.gate_nets.reserve(k);
  for (size_t j = 0; j < k; ++j) {
    std::vector<uint32_t> window =
        window_of(g, model.tracked.at(j).pauli.support(), filter.l);
    std::vector<int> widths;
    widths.push_back(static_cast<int>(window.size() * model.channels.n_ch));
    widths.insert(widths.end(), dense_units.begin(), dense_units.end());
    model.windows.push_back(std::move(window));
    model.gate_nets.push_back(MlpParams::init(widths, rng));
  }
  if (metric == Metric::Pst) {
    for (size_t j = 0; j < k; ++j) {
      if (!model.tracked.at(j).pauli.contains_xy()) continue;
      std::vector<uint32_t> window =
          window_of(g, model.tracked.at(j).pauli.support(), filter.l_meas);
      std::vector<int> widths;
      widths.push_back(static_cast<int>(2 * window.size()));
      widths.insert(widths.end(), dense_units.begin(), dense_units.end());
      model.meas_error_index.push_back(j);
      model.meas_windows.push_back(std::move(window));
      model.meas_nets.push_back(MlpParams::init(widths, rng));
    }
  }
  return model;
}

namespace {
struct SlotKeyLess {
  bool operator()(const std::pair<ErrorKind, SignedPauli> &a,
                  const std::pair<ErrorKind, SignedPauli> &b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second.word_compare(b.second) < 0;
  }
};
}  // namespace

CompiledRecord compile_record(const QpaModel &model,
                              const DatasetRecord &record) {
  const CircuitTensor &t = record.tensor;
  if (t.n != model.graph.num_qubits() || t.n_ch != model.channels.n_ch) {
    throw ValidationError("record tensor does not match the model's device");
  }
  CompiledRecord out;
  out.id = record.id;
  out.target = record.target;
  out.shots = record.shots;
  out.depth = t.true_depth;
  out.n = t.n;
  out.measured = t.measured;
  out.target_bits = t.target_bits;
  out.layer_channel.assign(static_cast<size_t>(out.depth) * out.n, -1);
  for (uint32_t i = 0; i < out.depth; ++i) {
    for (uint32_t q = 0; q < out.n; ++q) {
      for (uint32_t ch = 0; ch < t.n_ch; ++ch) {
        if (t.get(q, i, ch)) {
          out.layer_channel[static_cast<size_t>(i) * out.n + q] =
              static_cast<int16_t>(ch);
          break;
        }
      }
    }
  }
  const PropagationTables *tables = nullptr;
  PropagationTables local;
  if (record.tables) {
    tables = &*record.tables;
  } else {
    Circuit c = decode_circuit(t, model.graph, model.channels);
    local = compute_propagation(c, model.tracked);
    tables = &local;
  }
  const size_t k = model.tracked.size();
  if (tables->num_tracked != k || tables->depth != out.depth) {
    throw ValidationError("record tables do not match the tracked set");
  }
  out.slot.resize(static_cast<size_t>(out.depth) * k);
  out.sign.assign(tables->sign.begin(), tables->sign.end());
  std::map<std::pair<ErrorKind, SignedPauli>, int32_t, SlotKeyLess> slot_ids;
  auto slot_for = [&](ErrorKind kind, const SignedPauli &p) {
    auto [it, inserted] =
        slot_ids.try_emplace({kind, p}, static_cast<int32_t>(out.num_slots));
    if (inserted) {
      ++out.num_slots;
      out.slot_is_stochastic.push_back(kind == ErrorKind::S ? 1 : 0);
      bool counts = model.metric == Metric::Fidelity || p.contains_xy();
      out.slot_counts_for_metric.push_back(counts ? 1 : 0);
    }
    return it->second;
  };
  for (size_t idx = 0; idx < out.slot.size(); ++idx) {
    size_t j = idx % k;
    out.slot[idx] = slot_for(model.tracked.at(j).kind, tables->pauli[idx]);
  }
  out.meas_slot.reserve(model.meas_error_index.size());
  for (size_t j : model.meas_error_index) {
    const ErrorGenerator &gen = model.tracked.at(j);
    out.meas_slot.push_back(slot_for(gen.kind, gen.pauli));
  }
  return out;
}

std::vector<CompiledRecord> compile_records(
    const QpaModel &model, const std::vector<DatasetRecord> &records,
    unsigned threads) {
  std::vector<CompiledRecord> out(records.size());
  parallel_for(
      records.size(),
      [&](size_t i) { out[i] = compile_record(model, records[i]); }, threads);
  return out;
}

namespace {
void gather_gate_rows(const QpaModel &model, const CompiledRecord &record,
                      size_t net, std::vector<std::vector<int>> *rows) {
  const std::vector<uint32_t> &window = model.windows[net];
  const uint32_t n_ch = model.channels.n_ch;
  rows->resize(record.depth);
  for (uint32_t r = 0; r < record.depth; ++r) {
    auto &indices = (*rows)[r];
    indices.clear();
    for (size_t w_pos = 0; w_pos < window.size(); ++w_pos) {
      int16_t ch = record.channel_at(r, window[w_pos]);
      if (ch >= 0) {
        indices.push_back(static_cast<int>(w_pos * n_ch) + ch);
      }
    }
  }
}

void gather_meas_row(const QpaModel &model, const CompiledRecord &record,
                     size_t net, std::vector<std::vector<int>> *rows) {
  const std::vector<uint32_t> &window = model.meas_windows[net];
  rows->resize(1);
  auto &indices = (*rows)[0];
  indices.clear();
  for (size_t w_pos = 0; w_pos < window.size(); ++w_pos) {
    uint32_t q = window[w_pos];
    if (record.measured[q]) indices.push_back(static_cast<int>(2 * w_pos));
    if (record.target_bits[q]) {
      indices.push_back(static_cast<int>(2 * w_pos + 1));
    }
  }
}
}  // namespace

double qpa_forward(const QpaModel &model, const CompiledRecord &record,
                   QpaWorkspace *ws) {
  const size_t k = model.tracked.size();
  const uint32_t d = record.depth;
  ws->gate_acts.resize(k);
  ws->rates.resize(d, static_cast<Eigen::Index>(k));
  for (size_t j = 0; j < k; ++j) {
    gather_gate_rows(model, record, j, &ws->row_indices);
    mlp_forward(model.gate_nets[j], ws->row_indices, &ws->gate_acts[j]);
    ws->rates.col(static_cast<Eigen::Index>(j)) =
        ws->gate_acts[j].output().col(0);
  }
  ws->v.assign(record.num_slots, 0.0);
  const double *rates = ws->rates.data();  // column-major: rates[i + d*j]
  for (size_t j = 0; j < k; ++j) {
    for (uint32_t i = 0; i < d; ++i) {
      size_t idx = static_cast<size_t>(i) * k + j;
      ws->v[record.slot[idx]] +=
          record.sign[idx] * rates[i + static_cast<size_t>(d) * j];
    }
  }
  if (!model.meas_nets.empty()) {
    ws->meas_acts.resize(model.meas_nets.size());
    ws->measurement_rates.resize(
        static_cast<Eigen::Index>(model.meas_nets.size()));
    ws->meas_input.resize(1);
    for (size_t mj = 0; mj < model.meas_nets.size(); ++mj) {
      gather_meas_row(model, record, mj, &ws->meas_input);
      mlp_forward(model.meas_nets[mj], ws->meas_input, &ws->meas_acts[mj]);
      double rate = ws->meas_acts[mj].output()(0, 0);
      ws->measurement_rates[static_cast<Eigen::Index>(mj)] = rate;
      ws->v[record.meas_slot[mj]] += rate;
    }
  }
  double total = 0.0;
  for (uint32_t s = 0; s < record.num_slots; ++s) {
    if (!record.slot_counts_for_metric[s]) continue;
    total += record.slot_is_stochastic[s] ? ws->v[s] : ws->v[s] * ws->v[s];
  }
  return 1.0 - total;
}

QpaGradients QpaGradients::zeros_like(const QpaModel &model) {
  QpaGradients g;
  g.gate.reserve(model.gate_nets.size());
  for (const MlpParams &p : model.gate_nets) {
    g.gate.push_back(MlpParams::zeros_like(p));
  }
  g.meas.reserve(model.meas_nets.size());
  for (const MlpParams &p : model.meas_nets) {
    g.meas.push_back(MlpParams::zeros_like(p));
  }
  return g;
}

void QpaGradients::set_zero() {
  for (MlpParams &p : gate) p.set_zero();
  for (MlpParams &p : meas) p.set_zero();
}

void QpaGradients::add(const QpaGradients &other) {
  for (size_t j = 0; j < gate.size(); ++j) gate[j].add_scaled(other.gate[j], 1.0);
  for (size_t j = 0; j < meas.size(); ++j) meas[j].add_scaled(other.meas[j], 1.0);
}

void qpa_backward(const QpaModel &model, const CompiledRecord &record,
                  QpaWorkspace *ws, double dpred, QpaGradients *grads) {
  const size_t k = model.tracked.size();
  const uint32_t d = record.depth;
  // d(pred)/d(v_slot): -1 for S slots, -2 v for H slots, zero when the slot is
  // excluded by the metric.
  std::vector<double> dv(record.num_slots, 0.0);
  for (uint32_t s = 0; s < record.num_slots; ++s) {
    if (!record.slot_counts_for_metric[s]) continue;
    dv[s] = dpred * (record.slot_is_stochastic[s] ? -1.0 : -2.0 * ws->v[s]);
  }
  Eigen::VectorXd dout(d);
  for (size_t j = 0; j < k; ++j) {
    for (uint32_t i = 0; i < d; ++i) {
      size_t idx = static_cast<size_t>(i) * k + j;
      dout[i] = record.sign[idx] * dv[record.slot[idx]];
    }
    gather_gate_rows(model, record, j, &ws->row_indices);
    mlp_backward(model.gate_nets[j], ws->row_indices, ws->gate_acts[j], dout,
                 &grads->gate[j]);
  }
  if (!model.meas_nets.empty()) {
    Eigen::VectorXd mout(1);
    for (size_t mj = 0; mj < model.meas_nets.size(); ++mj) {
      mout[0] = dv[record.meas_slot[mj]];
      gather_meas_row(model, record, mj, &ws->meas_input);
      mlp_backward(model.meas_nets[mj], ws->meas_input, ws->meas_acts[mj],
                   mout, &grads->meas[mj]);
    }
  }
}

ForwardOutput qpa_forward_full(const QpaModel &model,
                               const DatasetRecord &record) {
  CompiledRecord compiled = compile_record(model, record);
  QpaWorkspace ws;
  ForwardOutput out;
  out.prediction = qpa_forward(model, compiled, &ws);
  out.rates = ws.rates;
  out.measurement_rates = ws.measurement_rates;
  return out;
}

std::vector<double> predict_compiled(const QpaModel &model,
                                     const std::vector<CompiledRecord> &records,
                                     unsigned threads) {
  std::vector<double> out(records.size());
  parallel_for(
      records.size(),
      [&](size_t i) {
        thread_local QpaWorkspace ws;
        out[i] = qpa_forward(model, records[i], &ws);
      },
      threads);
  return out;
}

std::vector<double> predict_batch(const QpaModel &model,
                                  const std::vector<DatasetRecord> &records,
                                  unsigned threads) {
  std::vector<CompiledRecord> compiled =
      compile_records(model, records, threads);
  return predict_compiled(model, compiled, threads);
}

std::pair<double, QpaGradients> loss_and_gradients(
    const QpaModel &model, const std::vector<CompiledRecord> &batch) {
  if (batch.empty()) throw ValidationError("empty batch");
  QpaGradients grads = QpaGradients::zeros_like(model);
  QpaWorkspace ws;
  double loss = 0.0;
  const double s2 = model.scale * model.scale;
  for (const CompiledRecord &record : batch) {
    double pred = qpa_forward(model, record, &ws);
    double err = pred - record.target;
    loss += s2 * err * err;
    double dpred = 2.0 * s2 * err / static_cast<double>(batch.size());
    qpa_backward(model, record, &ws, dpred, &grads);
  }
  loss /= static_cast<double>(batch.size());
  return {loss, std::move(grads)};
}

namespace {
nlohmann::json matrix_to_json(const Eigen::MatrixXd &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json &j) {
  const size_t rows = j.size();
  if (rows == 0) throw ValidationError("empty weight matrix in checkpoint");
  const size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) {
      throw ValidationError("ragged weight matrix in checkpoint");
    }
    for (size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

nlohmann::json net_to_json(const std::string &error_name,
                           const std::vector<uint32_t> &window,
                           const MlpParams &params) {
  nlohmann::json net;
  net["error"] = error_name;
  net["window"] = window;
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (size_t l = 0; l < params.weights.size(); ++l) {
    weights.push_back(matrix_to_json(params.weights[l]));
    nlohmann::json b = nlohmann::json::array();
    for (Eigen::Index i = 0; i < params.biases[l].size(); ++i) {
      b.push_back(params.biases[l][i]);
    }
    biases.push_back(std::move(b));
  }
  net["weights"] = std::move(weights);
  net["biases"] = std::move(biases);
  return net;
}

MlpParams net_from_json(const nlohmann::json &net,
                        std::vector<uint32_t> *window,
                        std::string *error_name) {
  *error_name = net.at("error").get<std::string>();
  *window = net.at("window").get<std::vector<uint32_t>>();
  MlpParams params;
  const auto &weights = net.at("weights");
  const auto &biases = net.at("biases");
  if (weights.size() != biases.size()) {
    throw ValidationError("checkpoint net weights/biases length mismatch");
  }
  for (size_t l = 0; l < weights.size(); ++l) {
    params.weights.push_back(matrix_from_json(weights[l]));
    Eigen::VectorXd b(biases[l].size());
    for (size_t i = 0; i < biases[l].size(); ++i) {
      b[static_cast<Eigen::Index>(i)] = biases[l][i].get<double>();
    }
    params.biases.push_back(std::move(b));
  }
  return params;
}

constexpr const char *kCheckpointSchema = "qcap-checkpoint-v1";
}  // namespace

void save_checkpoint(const QpaModel &model, const std::string &path) {
  nlohmann::ordered_json j;
  j["schema"] = kCheckpointSchema;
  j["metric"] = metric_label(model.metric);
  j["graph"] = model.graph_spec;
  j["hops"] = model.hops;
  j["max_weight"] = model.max_weight;
  j["filter_hops"] = model.filter.l;
  j["filter_hops_meas"] = model.filter.l_meas;
  j["dense_units"] = model.dense_units;
  j["scale"] = model.scale;
  j["param_count"] = model.param_count();
  j["measurement_net_policy"] = "one per X/Y-containing tracked error";
  nlohmann::json tracked = nlohmann::json::array();
  for (const ErrorGenerator &gen : model.tracked.generators()) {
    tracked.push_back(gen.to_string());
  }
  j["tracked_set"] = std::move(tracked);
  nlohmann::json nets = nlohmann::json::array();
  for (size_t idx = 0; idx < model.gate_nets.size(); ++idx) {
    nets.push_back(net_to_json(model.tracked.at(idx).to_string(),
                               model.windows[idx], model.gate_nets[idx]));
  }
  j["nets"] = std::move(nets);
  nlohmann::json meas = nlohmann::json::array();
  for (size_t mj = 0; mj < model.meas_nets.size(); ++mj) {
    meas.push_back(
        net_to_json(model.tracked.at(model.meas_error_index[mj]).to_string(),
                    model.meas_windows[mj], model.meas_nets[mj]));
  }
  j["measurement_nets"] = std::move(meas);
  nlohmann::json history = nlohmann::json::array();
  for (const EpochStats &stats : model.train_history) {
    history.push_back({{"epoch", stats.epoch},
                       {"train_loss", stats.train_loss},
                       {"validation_loss", stats.validation_loss}});
  }
  j["train_history"] = std::move(history);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << j.dump() << "\n";
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

QpaModel load_checkpoint(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw ValidationError("bad checkpoint JSON: " + std::string(e.what()));
  }
  if (j.value("schema", "") != kCheckpointSchema) {
    throw ValidationError("unexpected checkpoint schema version");
  }
  QpaModel model;
  model.graph_spec = j.at("graph").get<std::string>();
  model.graph = ConnectivityGraph::from_spec(model.graph_spec);
  model.hops = j.at("hops").get<uint32_t>();
  model.max_weight = j.at("max_weight").get<uint32_t>();
  model.filter.l = j.at("filter_hops").get<uint32_t>();
  model.filter.l_meas = j.at("filter_hops_meas").get<uint32_t>();
  model.dense_units = j.at("dense_units").get<std::vector<int>>();
  model.metric = metric_from_label(j.at("metric").get<std::string>());
  model.scale = j.at("scale").get<double>();
  model.tracked =
      TrackedErrorSet::build(model.graph, model.hops, model.max_weight);
  model.channels = ChannelSpec::for_graph(model.graph);
  const auto &tracked_list = j.at("tracked_set");
  if (tracked_list.size() != model.tracked.size()) {
    throw ValidationError("checkpoint tracked set size mismatch");
  }
  for (size_t idx = 0; idx < model.tracked.size(); ++idx) {
    if (tracked_list[idx].get<std::string>() !=
        model.tracked.at(idx).to_string()) {
      throw ValidationError("checkpoint tracked set disagrees with the graph");
    }
  }
  const auto &nets = j.at("nets");
  if (nets.size() != model.tracked.size()) {
    throw ValidationError("checkpoint net count mismatch");
  }
  for (size_t idx = 0; idx < nets.size(); ++idx) {
    std::vector<uint32_t> window;
    std::string error_name;
    model.gate_nets.push_back(net_from_json(nets[idx], &window, &error_name));
    if (error_name != model.tracked.at(idx).to_string()) {
      throw ValidationError("checkpoint net order disagrees with tracked set");
    }
    model.windows.push_back(std::move(window));
  }
  for (const auto &net : j.at("measurement_nets")) {
    std::vector<uint32_t> window;
    std::string error_name;
    MlpParams params = net_from_json(net, &window, &error_name);
    auto idx = model.tracked.index_of(
        ErrorGenerator::from_string(error_name, model.graph.num_qubits()));
    if (!idx) {
      throw ValidationError("checkpoint measurement net for unknown error");
    }
    model.meas_error_index.push_back(*idx);
    model.meas_windows.push_back(std::move(window));
    model.meas_nets.push_back(std::move(params));
  }
  for (const auto &stats : j.value("train_history", nlohmann::json::array())) {
    model.train_history.push_back({stats.at("epoch").get<uint32_t>(),
                                   stats.at("train_loss").get<double>(),
                                   stats.at("validation_loss").get<double>()});
  }
  return model;
}

}  // namespace qcap
