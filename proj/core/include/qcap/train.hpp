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

#ifndef QCAP_TRAIN_HPP
#define QCAP_TRAIN_HPP

#include "qcap/qpa_model.hpp"

namespace qcap {

struct TrainConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  uint32_t batch_size = 32;
  uint32_t max_epochs = 500;
  uint32_t patience = 20;
  uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  bool verbose = false;

  void validate() const;
};

struct TrainResult {
  std::vector<EpochStats> history;
  uint32_t best_epoch = 0;
  double best_validation_loss = 0.0;
};

// Mini-batch Adam over the training records with per-epoch validation and
// early stopping (stop after `patience` epochs without improvement, restore
// the best-validation weights). Deterministic given the seed: fixed shuffle
// streams and a fixed gradient accumulation order regardless of threading.
TrainResult train(QpaModel *model, const DatasetSplit &split,
                  const TrainConfig &cfg);

TrainResult train_compiled(QpaModel *model,
                           const std::vector<CompiledRecord> &train_records,
                           const std::vector<CompiledRecord> &valid_records,
                           const TrainConfig &cfg);

}  // namespace qcap

#endif  // QCAP_TRAIN_HPP
