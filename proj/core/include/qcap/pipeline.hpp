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

#ifndef QCAP_PIPELINE_HPP
#define QCAP_PIPELINE_HPP

#include <string>

#include "qcap/dataset.hpp"
#include "qcap/metrics.hpp"
#include "qcap/ptm.hpp"
#include "qcap/samplers.hpp"
#include "qcap/train.hpp"

namespace qcap {

// Derives an independent sub-seed for a pipeline phase so phases never share
// random streams.
uint64_t derive_seed(uint64_t seed, uint64_t phase);

// End-to-end run on a simulated 4-qubit ring with a local coherent error
// model: sample circuits, simulate exact fidelities, filter/split/encode,
// train, evaluate on the test split and on freshly sampled out-of-distribution
// mirror circuits. All artifacts land under out_dir.
struct Sim4Options {
  uint64_t seed = 0;
  std::string out_dir;
  size_t num_circuits = 5000;
  size_t num_mirror_circuits = 750;
  size_t min_mirror_kept = 500;
  double max_strength = kDefaultCoherentMaxStrength;
  double threshold = 0.85;
  uint32_t hops = 2;
  FilterSpec filter;
  TrainConfig train;
  bool skip_mirror = false;
};

struct PipelineResult {
  size_t raw_circuits = 0;
  size_t train_size = 0;
  size_t validation_size = 0;
  size_t test_size = 0;
  double test_mae = 0.0;
  double test_pearson_r = 0.0;
  size_t mirror_size = 0;
  double mirror_mae = 0.0;
  double mirror_pearson_r = 0.0;
  uint32_t epochs_run = 0;
  uint32_t best_epoch = 0;
  size_t param_count = 0;
  double runtime_seconds = 0.0;
  std::string checkpoint_path;
  std::string dataset_dir;
  std::string summary_path;
};

PipelineResult reproduce_sim4(const Sim4Options &opts);

// Scaled-device pipeline: ring:<n> with the weight-1 stochastic+coherent
// model, first-order ground-truth fidelities, full-width circuits of depth
// <= depth_cap.
struct Ring100Options {
  uint64_t seed = 0;
  std::string out_dir;
  uint32_t n = 24;
  size_t num_circuits = 5000;
  uint32_t depth_cap = 22;
  double threshold = 0.91;
  double max_stochastic = kDefaultWeight1MaxStochastic;
  double max_coherent = kDefaultWeight1MaxCoherent;
  FilterSpec filter;
  TrainConfig train;
};

PipelineResult reproduce_ring100(const Ring100Options &opts);

// Synthetic PST Bayes-factor check: PSTs of random mirror circuits are
// estimated from binomially sampled shots; the generating-probability
// predictor is compared against one perturbed by +delta absolute.
struct BayesCheckOptions {
  uint64_t seed = 0;
  size_t num_circuits = 100;
  uint64_t shots = 2048;
  double delta = 0.02;
};

struct BayesCheckResult {
  double log10_k = 0.0;
  size_t num_records = 0;
};

BayesCheckResult bayes_factor_synthetic(const BayesCheckOptions &opts);

}  // namespace qcap

#endif  // QCAP_PIPELINE_HPP
