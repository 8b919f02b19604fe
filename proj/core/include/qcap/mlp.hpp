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

#ifndef QCAP_MLP_HPP
#define QCAP_MLP_HPP

#include <Eigen/Dense>
#include <vector>

#include "qcap/common.hpp"

namespace qcap {

// Dense multilayer perceptron with rectified hidden layers and a linear
// scalar output. Weights are stored input-major (W[l] is in x out) so a batch
// forward is rows * W.
struct MlpParams {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  // widths = [input, hidden..., 1]. Initialization is symmetric uniform with
  // fan-in scaling, U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
  static MlpParams init(const std::vector<int> &widths, Rng &rng);
  static MlpParams zeros_like(const MlpParams &other);

  int input_width() const { return static_cast<int>(weights.front().rows()); }
  size_t num_layers() const { return weights.size(); }
  size_t param_count() const;

  void set_zero();
  void add_scaled(const MlpParams &other, double factor);
};

// Post-activation values per layer for one batch of rows.
struct MlpActivations {
  std::vector<Eigen::MatrixXd> a;
  const Eigen::MatrixXd &output() const { return a.back(); }
};

// Forward pass over `rows` sparse binary input rows: row r has ones exactly
// at the listed input indices. Results land in acts (reused across calls).
void mlp_forward(const MlpParams &params,
                 const std::vector<std::vector<int>> &rows,
                 MlpActivations *acts);

// Backpropagation for the sparse-input forward pass above. output_grad has
// one entry per row (d loss / d output). Gradients are accumulated into
// *grads; the gradient with respect to the inputs is not needed and not
// computed.
void mlp_backward(const MlpParams &params,
                  const std::vector<std::vector<int>> &rows,
                  const MlpActivations &acts,
                  const Eigen::VectorXd &output_grad, MlpParams *grads);

}  // namespace qcap

#endif  // QCAP_MLP_HPP
