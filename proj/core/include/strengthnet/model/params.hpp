// Copyright 2026 The strengthnet authors
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

#ifndef STRENGTHNET_MODEL_PARAMS_HPP_
#define STRENGTHNET_MODEL_PARAMS_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "strengthnet/model/config.hpp"

namespace strengthnet::model {

using Mat = Eigen::MatrixXd;

struct ConvLayerParams {
  // (kernel_time * kernel_freq * c_in) x c_out; patch rows ordered
  // (dt, df, channel), row major
  Mat kernel;
  Mat bias;  // c_out x 1
};

struct LstmDirParams {
  // gate order [input, forget, cell, output] along columns
  Mat w_input;      // input_dim x 4H
  Mat w_recurrent;  // H x 4H
  Mat bias;         // 4H x 1
};

struct BiLstmParams {
  LstmDirParams forward;
  LstmDirParams backward;
};

// Every learnable tensor of the network. visit() walks them in a fixed
// order shared by init, the optimizer, checkpoints and gradient checks.
struct ModelParams {
  ModelConfig config;
  std::vector<ConvLayerParams> conv;  // one per conv layer
  BiLstmParams strength_lstm;
  BiLstmParams emotion_lstm;
  Mat fc1_weight;  // 2H x fc_hidden
  Mat fc1_bias;    // fc_hidden x 1
  Mat fc2_weight;  // fc_hidden x 1
  Mat fc2_bias;    // 1 x 1
  Mat emo_weight;  // 2H x num_emotions
  Mat emo_bias;    // num_emotions x 1

  void visit(const std::function<void(const std::string&, Mat&)>& fn);
  void visit(const std::function<void(const std::string&, const Mat&)>& fn) const;

  std::int64_t parameter_count() const;
  bool all_finite() const;

  // Allocates tensors with the documented init: fan-in scaled uniform
  // weights, U(+-sqrt(6/fan_in)) for the ReLU layers (conv, fc1) and
  // U(+-sqrt(1/fan_in)) elsewhere, zero biases, LSTM forget gate bias 1.0.
  // Deterministic per seed.
  static ModelParams init(const ModelConfig& config, std::uint64_t seed);
  // Same shapes, all zeros; used for gradients and optimizer state.
  static ModelParams zeros_like(const ModelParams& other);
};

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_PARAMS_HPP_
