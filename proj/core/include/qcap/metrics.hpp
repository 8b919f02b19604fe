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

#ifndef QCAP_METRICS_HPP
#define QCAP_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qcap/common.hpp"

namespace qcap {

struct PredictionRecord {
  std::string id;
  double target = 0.0;
  double prediction = 0.0;
  std::optional<std::pair<uint64_t, uint64_t>> shots;

  double abs_error() const { return std::abs(prediction - target); }
};

// Mean absolute error over (target, prediction) pairs.
double mae(const std::vector<PredictionRecord> &records);

// Pearson correlation coefficient. Throws NumericalError for fewer than two
// records or a constant series.
double pearson(const std::vector<PredictionRecord> &records);

inline constexpr double kBayesClipBound = 1e-6;

// log10 of the Bayes factor K comparing binomial likelihoods of predictions
// a and b on shot data: sum over records of [loglik(a) - loglik(b)], base 10.
// Predictions are clipped to [1e-6, 1 - 1e-6]. Throws ValidationError if any
// record lacks shot counts.
double bayes_factor_pst(const std::vector<PredictionRecord> &records_a,
                        const std::vector<PredictionRecord> &records_b);

struct EvalReport {
  std::string dataset_id;
  std::string model_id;
  std::vector<PredictionRecord> records;
  double mae_value = 0.0;
  std::optional<double> pearson_r;
  std::optional<double> log10_bayes_factor;
  double runtime_seconds = 0.0;
};

EvalReport make_report(std::string dataset_id, std::string model_id,
                       std::vector<PredictionRecord> records,
                       double runtime_seconds = 0.0);

// CSV columns: id,target,prediction,abs_error with 17-significant-digit
// decimals.
void write_predictions_csv(const std::string &path,
                           const std::vector<PredictionRecord> &records);
std::vector<PredictionRecord> read_predictions_csv(const std::string &path);

void write_report_json(const std::string &path, const EvalReport &report);

// Minimal static scatter plot (target vs prediction) as an SVG file.
void write_scatter_svg(const std::string &path,
                       const std::vector<PredictionRecord> &records);

// Binomial sampler used by the Bayes-factor pipeline: successes out of n
// trials at probability p, deterministic under the rng stream.
uint64_t sample_binomial(uint64_t n, double p, Rng &rng);

}  // namespace qcap

#endif  // QCAP_METRICS_HPP
