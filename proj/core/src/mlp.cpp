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

#include "qcap/mlp.hpp"

#include <cmath>

namespace qcap {

MlpParams MlpParams::init(const std::vector<int> &widths, Rng &rng) {
  if (widths.size() < 2) {
    throw ValidationError("MLP needs at least input and output widths");
  }
  if (widths.back() != 1) {
    throw ValidationError("MLP output width must be 1");
  }
  MlpParams p;
  for (size_t l = 0; l + 1 < widths.size(); ++l) {
    const int fan_in = widths[l], fan_out = widths[l + 1];
    if (fan_in < 1 || fan_out < 1) {
      throw ValidationError("MLP layer widths must be positive");
    }
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i) {
      for (int j = 0; j < fan_out; ++j) {
        w(i, j) = rng.uniform_real(-bound, bound);
      }
    }
    Eigen::VectorXd b(fan_out);
    for (int j = 0; j < fan_out; ++j) b(j) = rng.uniform_real(-bound, bound);
    p.weights.push_back(std::move(w));
    p.biases.push_back(std::move(b));
  }
  return p;
}

MlpParams MlpParams::zeros_like(const MlpParams &other) {
  MlpParams p;
  for (size_t l = 0; l < other.weights.size(); ++l) {
    p.weights.push_back(Eigen::MatrixXd::Zero(other.weights[l].rows(),
                                              other.weights[l].cols()));
    p.biases.push_back(Eigen::VectorXd::Zero(other.biases[l].size()));
  }
  return p;
}

size_t MlpParams::param_count() const {
  size_t count = 0;
  for (size_t l = 0; l < weights.size(); ++l) {
    count += static_cast<size_t>(weights[l].size()) +
             static_cast<size_t>(biases[l].size());
  }
  return count;
}

void MlpParams::set_zero() {
  for (auto &w : weights) w.setZero();
  for (auto &b : biases) b.setZero();
}

void MlpParams::add_scaled(const MlpParams &other, double factor) {
  for (size_t l = 0; l < weights.size(); ++l) {
    weights[l] += factor * other.weights[l];
    biases[l] += factor * other.biases[l];
  }
}

void mlp_forward(const MlpParams &params,
                 const std::vector<std::vector<int>> &rows,
                 MlpActivations *acts) {
  const size_t num_layers = params.num_layers();
  const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size());
  acts->a.resize(num_layers);
  // First layer exploits the 0/1 input: x * W is a sum of the W rows picked
  // out by the set bits.
  {
    const Eigen::MatrixXd &w = params.weights[0];
    Eigen::MatrixXd &a0 = acts->a[0];
    a0.resize(n_rows, w.cols());
    for (Eigen::Index r = 0; r < n_rows; ++r) {
      a0.row(r) = params.biases[0].transpose();
      for (int idx : rows[static_cast<size_t>(r)]) {
        a0.row(r) += w.row(idx);
      }
    }
    if (num_layers > 1) a0 = a0.cwiseMax(0.0);
  }
  for (size_t l = 1; l < num_layers; ++l) {
    Eigen::MatrixXd &al = acts->a[l];
    al.noalias() = acts->a[l - 1] * params.weights[l];
    al.rowwise() += params.biases[l].transpose();
    if (l + 1 < num_layers) al = al.cwiseMax(0.0);  // output stays linear
  }
}

void mlp_backward(const MlpParams &params,
                  const std::vector<std::vector<int>> &rows,
                  const MlpActivations &acts,
                  const Eigen::VectorXd &output_grad, MlpParams *grads) {
  const size_t num_layers = params.num_layers();
  Eigen::MatrixXd delta = output_grad;  // rows x 1, linear output layer
  for (size_t l = num_layers; l-- > 0;) {
    if (l > 0) {
      grads->weights[l].noalias() += acts.a[l - 1].transpose() * delta;
      grads->biases[l] += delta.colwise().sum().transpose();
      Eigen::MatrixXd next(delta.rows(), params.weights[l].rows());
      next.noalias() = delta * params.weights[l].transpose();
      // ReLU mask: the unit was active iff its post-activation is positive.
      next.array() *= (acts.a[l - 1].array() > 0.0).cast<double>();
      delta = std::move(next);
    } else {
      grads->biases[0] += delta.colwise().sum().transpose();
      Eigen::MatrixXd &gw = grads->weights[0];
      for (Eigen::Index r = 0; r < delta.rows(); ++r) {
        for (int idx : rows[static_cast<size_t>(r)]) {
          gw.row(idx) += delta.row(r);
        }
      }
    }
  }
}

}  // namespace qcap
