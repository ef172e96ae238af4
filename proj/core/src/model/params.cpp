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

#include "strengthnet/model/params.hpp"

#include <cmath>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"

namespace strengthnet::model {

void ModelParams::visit(const std::function<void(const std::string&, Mat&)>& fn) {
  for (std::size_t i = 0; i < conv.size(); ++i) {
    fn("conv" + std::to_string(i) + ".kernel", conv[i].kernel);
    fn("conv" + std::to_string(i) + ".bias", conv[i].bias);
  }
  const auto visit_lstm = [&fn](const std::string& prefix, BiLstmParams& lstm) {
    fn(prefix + ".fwd.w_input", lstm.forward.w_input);
    fn(prefix + ".fwd.w_recurrent", lstm.forward.w_recurrent);
    fn(prefix + ".fwd.bias", lstm.forward.bias);
    fn(prefix + ".bwd.w_input", lstm.backward.w_input);
    fn(prefix + ".bwd.w_recurrent", lstm.backward.w_recurrent);
    fn(prefix + ".bwd.bias", lstm.backward.bias);
  };
  visit_lstm("strength_lstm", strength_lstm);
  fn("fc1.weight", fc1_weight);
  fn("fc1.bias", fc1_bias);
  fn("fc2.weight", fc2_weight);
  fn("fc2.bias", fc2_bias);
  visit_lstm("emotion_lstm", emotion_lstm);
  fn("emotion_proj.weight", emo_weight);
  fn("emotion_proj.bias", emo_bias);
}

void ModelParams::visit(const std::function<void(const std::string&, const Mat&)>& fn) const {
  const_cast<ModelParams*>(this)->visit(
      [&fn](const std::string& name, Mat& m) { fn(name, m); });
}

std::int64_t ModelParams::parameter_count() const {
  std::int64_t count = 0;
  visit([&count](const std::string&, const Mat& m) { count += m.size(); });
  return count;
}

bool ModelParams::all_finite() const {
  bool ok = true;
  visit([&ok](const std::string&, const Mat& m) { ok = ok && m.allFinite(); });
  return ok;
}

namespace {

void fill_uniform(Mat& m, double bound, Rng& rng) {
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      m(r, c) = rng.uniform(-bound, bound);
    }
  }
}

LstmDirParams init_lstm_dir(int input_dim, int hidden, Rng& rng) {
  LstmDirParams p;
  p.w_input.resize(input_dim, 4 * hidden);
  fill_uniform(p.w_input, std::sqrt(1.0 / input_dim), rng);
  p.w_recurrent.resize(hidden, 4 * hidden);
  fill_uniform(p.w_recurrent, std::sqrt(1.0 / hidden), rng);
  p.bias = Mat::Zero(4 * hidden, 1);
  // forget gate bias 1.0; gate order [i, f, g, o]
  p.bias.block(hidden, 0, hidden, 1).setOnes();
  return p;
}

}  // namespace

ModelParams ModelParams::init(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);

  ModelParams p;
  p.config = config;

  int c_in = 1;
  for (const int filters : config.block_filters) {
    for (int layer = 0; layer < config.layers_per_block; ++layer) {
      ConvLayerParams conv;
      const int fan_in = config.kernel_time * config.kernel_freq * c_in;
      conv.kernel.resize(fan_in, filters);
      // He-scaled bound keeps activation magnitude stable through the
      // twelve ReLU layers
      fill_uniform(conv.kernel, std::sqrt(6.0 / fan_in), rng);
      conv.bias = Mat::Zero(filters, 1);
      p.conv.push_back(std::move(conv));
      c_in = filters;
    }
  }

  const int enc_dim = config.encoder_output_dim();
  const int hidden = config.bilstm_cells;
  p.strength_lstm.forward = init_lstm_dir(enc_dim, hidden, rng);
  p.strength_lstm.backward = init_lstm_dir(enc_dim, hidden, rng);
  p.emotion_lstm.forward = init_lstm_dir(enc_dim, hidden, rng);
  p.emotion_lstm.backward = init_lstm_dir(enc_dim, hidden, rng);

  const int lstm_out = 2 * hidden;
  p.fc1_weight.resize(lstm_out, config.fc_hidden);
  fill_uniform(p.fc1_weight, std::sqrt(6.0 / lstm_out), rng);
  p.fc1_bias = Mat::Zero(config.fc_hidden, 1);
  p.fc2_weight.resize(config.fc_hidden, 1);
  fill_uniform(p.fc2_weight, std::sqrt(1.0 / config.fc_hidden), rng);
  p.fc2_bias = Mat::Zero(1, 1);

  p.emo_weight.resize(lstm_out, config.num_emotions);
  fill_uniform(p.emo_weight, std::sqrt(1.0 / lstm_out), rng);
  p.emo_bias = Mat::Zero(config.num_emotions, 1);
  return p;
}

ModelParams ModelParams::zeros_like(const ModelParams& other) {
  ModelParams p = other;
  p.visit([](const std::string&, Mat& m) { m.setZero(); });
  return p;
}

}  // namespace strengthnet::model
