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

#include "qcap/train.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <thread>

namespace qcap {

void TrainConfig::validate() const {
  if (learning_rate <= 0 || beta1 <= 0 || beta1 >= 1 || beta2 <= 0 ||
      beta2 >= 1 || epsilon <= 0) {
    throw ValidationError("bad Adam hyperparameters");
  }
  if (batch_size < 1 || max_epochs < 1 || patience < 1) {
    throw ValidationError("batch size, epochs and patience must be positive");
  }
}

namespace {

struct AdamState {
  QpaGradients m;
  QpaGradients v;
  uint64_t step = 0;

  explicit AdamState(const QpaModel &model)
      : m(QpaGradients::zeros_like(model)),
        v(QpaGradients::zeros_like(model)) {}
};

void adam_update_net(MlpParams *params, MlpParams *m, MlpParams *v,
                     const MlpParams &g, const TrainConfig &cfg,
                     double bias1, double bias2) {
  auto step = [&](auto &p, auto &mw, auto &vw, const auto &gw) {
    mw = cfg.beta1 * mw + (1.0 - cfg.beta1) * gw;
    vw = cfg.beta2 * vw + (1.0 - cfg.beta2) * gw.cwiseProduct(gw);
    p.array() -= cfg.learning_rate * (mw.array() / bias1) /
                 ((vw.array() / bias2).sqrt() + cfg.epsilon);
  };
  for (size_t l = 0; l < params->weights.size(); ++l) {
    step(params->weights[l], m->weights[l], v->weights[l], g.weights[l]);
    step(params->biases[l], m->biases[l], v->biases[l], g.biases[l]);
  }
}

void adam_step(QpaModel *model, AdamState *state, const QpaGradients &grads,
               const TrainConfig &cfg) {
  ++state->step;
  const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state->step));
  const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state->step));
  for (size_t j = 0; j < model->gate_nets.size(); ++j) {
    adam_update_net(&model->gate_nets[j], &state->m.gate[j], &state->v.gate[j],
                    grads.gate[j], cfg, bias1, bias2);
  }
  for (size_t j = 0; j < model->meas_nets.size(); ++j) {
    adam_update_net(&model->meas_nets[j], &state->m.meas[j],
                    &state->v.meas[j], grads.meas[j], cfg, bias1, bias2);
  }
}

// Batch gradient with a static contiguous split across workers; thread t sums
// its range in index order and the partial sums are combined in thread order,
// so the result does not depend on scheduling.
double batch_gradients(const QpaModel &model,
                       const std::vector<CompiledRecord> &records,
                       const std::vector<size_t> &batch, unsigned threads,
                       std::vector<QpaGradients> *partials,
                       QpaGradients *total) {
  const size_t count = batch.size();
  threads = std::max(1u, std::min<unsigned>(threads, count));
  const double s2 = model.scale * model.scale;
  std::vector<double> losses(threads, 0.0);
  std::vector<std::thread> pool;
  auto worker = [&](unsigned t) {
    QpaGradients &grads = (*partials)[t];
    grads.set_zero();
    QpaWorkspace ws;
    size_t begin = count * t / threads;
    size_t end = count * (t + 1) / threads;
    double loss = 0.0;
    for (size_t i = begin; i < end; ++i) {
      const CompiledRecord &record = records[batch[i]];
      double pred = qpa_forward(model, record, &ws);
      double err = pred - record.target;
      loss += s2 * err * err;
      double dpred = 2.0 * s2 * err / static_cast<double>(count);
      qpa_backward(model, record, &ws, dpred, &grads);
    }
    losses[t] = loss;
  };
  if (threads == 1) {
    worker(0);
  } else {
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto &th : pool) th.join();
  }
  total->set_zero();
  double loss = 0.0;
  for (unsigned t = 0; t < threads; ++t) {
    total->add((*partials)[t]);
    loss += losses[t];
  }
  return loss / static_cast<double>(count);
}

double mean_loss(const QpaModel &model,
                 const std::vector<CompiledRecord> &records, unsigned threads) {
  if (records.empty()) return 0.0;
  std::vector<double> losses(records.size());
  const double s2 = model.scale * model.scale;
  parallel_for(
      records.size(),
      [&](size_t i) {
        thread_local QpaWorkspace ws;
        double err = qpa_forward(model, records[i], &ws) - records[i].target;
        losses[i] = s2 * err * err;
      },
      threads);
  double total = 0.0;
  for (double l : losses) total += l;
  return total / static_cast<double>(records.size());
}

std::vector<MlpParams> copy_nets(const std::vector<MlpParams> &nets) {
  return nets;
}

}  // namespace

TrainResult train_compiled(QpaModel *model,
                           const std::vector<CompiledRecord> &train_records,
                           const std::vector<CompiledRecord> &valid_records,
                           const TrainConfig &cfg) {
  cfg.validate();
  if (train_records.empty()) {
    throw ValidationError("training set is empty");
  }
  unsigned threads = cfg.threads ? cfg.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  AdamState adam(*model);
  std::vector<QpaGradients> partials;
  for (unsigned t = 0; t < threads; ++t) {
    partials.push_back(QpaGradients::zeros_like(*model));
  }
  QpaGradients total = QpaGradients::zeros_like(*model);
  TrainResult result;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<MlpParams> best_gate = copy_nets(model->gate_nets);
  std::vector<MlpParams> best_meas = copy_nets(model->meas_nets);
  uint32_t best_epoch = 0;
  uint32_t since_best = 0;
  std::vector<size_t> order(train_records.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (uint32_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    Rng shuffle_rng(cfg.seed, 1000000 + epoch);
    shuffle_rng.shuffle(order);
    double train_loss = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
      size_t end = std::min(order.size(), start + cfg.batch_size);
      std::vector<size_t> batch(order.begin() + start, order.begin() + end);
      train_loss +=
          batch_gradients(*model, train_records, batch, threads, &partials,
                          &total);
      adam_step(model, &adam, total, cfg);
      ++batches;
    }
    train_loss /= static_cast<double>(batches);
    double val_loss = valid_records.empty()
                          ? train_loss
                          : mean_loss(*model, valid_records, threads);
    result.history.push_back({epoch, train_loss, val_loss});
    if (cfg.verbose) {
      std::cerr << "epoch " << epoch << " train_loss " << train_loss
                << " val_loss " << val_loss << "\n";
    }
    if (val_loss < best_val) {
      best_val = val_loss;
      best_epoch = epoch;
      best_gate = copy_nets(model->gate_nets);
      best_meas = copy_nets(model->meas_nets);
      since_best = 0;
    } else {
      ++since_best;
      if (since_best >= cfg.patience) break;
    }
  }
  model->gate_nets = std::move(best_gate);
  model->meas_nets = std::move(best_meas);
  model->train_history = result.history;
  result.best_epoch = best_epoch;
  result.best_validation_loss = best_val;
  return result;
}

TrainResult train(QpaModel *model, const DatasetSplit &split,
                  const TrainConfig &cfg) {
  std::vector<CompiledRecord> train_records =
      compile_records(*model, split.train, cfg.threads);
  std::vector<CompiledRecord> valid_records =
      compile_records(*model, split.validation, cfg.threads);
  return train_compiled(model, train_records, valid_records, cfg);
}

}  // namespace qcap
