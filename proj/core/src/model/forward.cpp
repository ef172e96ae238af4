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

#include "strengthnet/model/forward.hpp"

#include <cmath>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"

namespace strengthnet::model {

namespace {

void check_mask(const Eigen::ArrayXd& mask, long rows) {
  if (mask.size() != rows) throw InvalidInput("mask length does not match frame count");
  long valid = 0;
  for (long t = 0; t < mask.size(); ++t) {
    if (mask(t) != 0.0 && mask(t) != 1.0) throw InvalidInput("mask entries must be 0 or 1");
    if (mask(t) == 1.0) ++valid;
  }
  if (valid == 0) throw InvalidInput("mask has no valid frames");
}

long count_valid(const Eigen::ArrayXd& mask) {
  long valid = 0;
  for (long t = 0; t < mask.size(); ++t) {
    if (mask(t) == 1.0) ++valid;
  }
  return valid;
}

Mat masked_rows(const Mat& x, const Eigen::ArrayXd& mask) {
  Mat out = x;
  for (long t = 0; t < out.rows(); ++t) {
    if (mask(t) == 0.0) out.row(t).setZero();
  }
  return out;
}

std::vector<ConvGeometry> conv_geometries(const ModelConfig& config, long T) {
  std::vector<ConvGeometry> geoms;
  int c_in = 1;
  int f_in = config.mel_channels;
  for (const int filters : config.block_filters) {
    for (int layer = 0; layer < config.layers_per_block; ++layer) {
      ConvGeometry g;
      g.t_in = static_cast<int>(T);
      g.f_in = f_in;
      g.c_in = c_in;
      g.c_out = filters;
      g.kernel_t = config.kernel_time;
      g.kernel_f = config.kernel_freq;
      g.stride_t = config.layer_strides[static_cast<std::size_t>(layer)].first;
      g.stride_f = config.layer_strides[static_cast<std::size_t>(layer)].second;
      geoms.push_back(g);
      f_in = g.f_out();
      c_in = filters;
    }
  }
  return geoms;
}

// Shared by eval and training forwards; fills acts with layer outputs when
// requested.
Mat run_encoder(const ModelParams& params, const Mat& mel, const Eigen::ArrayXd& mask,
                std::vector<ConvGeometry>* geoms_out, std::vector<Mat>* acts) {
  if (mel.cols() != params.config.mel_channels) {
    throw InvalidInput("encoder_forward: expected " +
                       std::to_string(params.config.mel_channels) + " mel channels, got " +
                       std::to_string(mel.cols()));
  }
  check_mask(mask, mel.rows());

  const auto geoms = conv_geometries(params.config, mel.rows());
  Mat x = masked_rows(mel, mask);
  if (acts != nullptr) acts->push_back(x);
  for (std::size_t i = 0; i < geoms.size(); ++i) {
    x = conv_forward(x, params.conv[i], geoms[i], mask);
    if (acts != nullptr) acts->push_back(x);
  }
  if (geoms_out != nullptr) *geoms_out = geoms;
  // final frequency axis has f_out bins, flattening to T x (f_out * c_out)
  return x;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double max_logit = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - max_logit).exp();
  return e / e.sum();
}

struct StrengthHeadCache {
  Mat hidden;
  Mat fc1_post;
  Mat dropout_mask;
};

StrengthHeadResult run_strength_head(const ModelParams& params, const Mat& encoded,
                                     const Eigen::ArrayXd& mask, const DropoutSpec& dropout,
                                     BiLstmCache* lstm_cache, StrengthHeadCache* head_cache) {
  check_mask(mask, encoded.rows());
  const long T = encoded.rows();

  StrengthHeadResult result;
  result.hidden = bilstm_forward(encoded, params.strength_lstm, mask, lstm_cache);

  Mat fc1 = result.hidden * params.fc1_weight;
  fc1.rowwise() += params.fc1_bias.col(0).transpose();
  fc1 = fc1.cwiseMax(0.0);

  Mat dropout_mask = Mat::Ones(fc1.rows(), fc1.cols());
  if (dropout.enabled && params.config.dropout_rate > 0.0) {
    Rng rng(dropout.seed);
    const double keep = 1.0 - params.config.dropout_rate;
    for (long t = 0; t < dropout_mask.rows(); ++t) {
      for (long j = 0; j < dropout_mask.cols(); ++j) {
        dropout_mask(t, j) = rng.uniform() < keep ? 1.0 / keep : 0.0;
      }
    }
  }
  const Mat fc1_dropped = fc1.cwiseProduct(dropout_mask);

  Eigen::VectorXd scores = fc1_dropped * params.fc2_weight;
  scores.array() += params.fc2_bias(0, 0);

  result.frame_scores.resize(T);
  for (long t = 0; t < T; ++t) {
    result.frame_scores(t) = mask(t) == 1.0 ? scores(t) : 0.0;
  }
  result.utterance_score = masked_mean(result.frame_scores, mask);

  if (head_cache != nullptr) {
    head_cache->hidden = result.hidden;
    head_cache->fc1_post = fc1;
    head_cache->dropout_mask = dropout_mask;
  }
  return result;
}

EmotionHeadResult run_emotion_head(const ModelParams& params, const Mat& encoded,
                                   const Eigen::ArrayXd& mask, BiLstmCache* lstm_cache,
                                   Eigen::VectorXd* pooled_out) {
  check_mask(mask, encoded.rows());
  EmotionHeadResult result;
  result.hidden = bilstm_forward(encoded, params.emotion_lstm, mask, lstm_cache);

  const long valid = count_valid(mask);
  Eigen::VectorXd pooled = Eigen::VectorXd::Zero(result.hidden.cols());
  for (long t = 0; t < result.hidden.rows(); ++t) {
    if (mask(t) == 1.0) pooled += result.hidden.row(t).transpose();
  }
  pooled /= static_cast<double>(valid);

  const Eigen::VectorXd logits = params.emo_weight.transpose() * pooled + params.emo_bias.col(0);
  result.probs = softmax(logits);
  if (pooled_out != nullptr) *pooled_out = pooled;
  return result;
}

}  // namespace

Eigen::ArrayXd full_mask(long num_frames) { return Eigen::ArrayXd::Ones(num_frames); }

double masked_mean(const Eigen::VectorXd& values, const Eigen::ArrayXd& mask) {
  double mean = 0.0;
  long count = 0;
  for (long t = 0; t < values.size(); ++t) {
    if (mask(t) == 1.0) {
      ++count;
      mean += (values(t) - mean) / static_cast<double>(count);
    }
  }
  if (count == 0) throw InvalidInput("masked_mean: no valid frames");
  return mean;
}

Mat encoder_forward(const ModelParams& params, const Mat& mel, const Eigen::ArrayXd& mask) {
  return run_encoder(params, mel, mask, nullptr, nullptr);
}

StrengthHeadResult strength_forward(const ModelParams& params, const Mat& encoded,
                                    const Eigen::ArrayXd& mask) {
  return run_strength_head(params, encoded, mask, DropoutSpec{}, nullptr, nullptr);
}

EmotionHeadResult emotion_forward(const ModelParams& params, const Mat& encoded,
                                  const Eigen::ArrayXd& mask) {
  return run_emotion_head(params, encoded, mask, nullptr, nullptr);
}

Prediction predict(const ModelParams& params, const Mat& mel, const Eigen::ArrayXd& mask) {
  const Mat encoded = encoder_forward(params, mel, mask);
  const StrengthHeadResult s = strength_forward(params, encoded, mask);
  const EmotionHeadResult e = emotion_forward(params, encoded, mask);
  Prediction p;
  p.frame_scores = s.frame_scores;
  p.utterance_score = s.utterance_score;
  p.emotion_probs = e.probs;
  return p;
}

ForwardCache forward_training(const ModelParams& params, const Mat& mel,
                              const Eigen::ArrayXd& mask, const DropoutSpec& dropout) {
  ForwardCache cache;
  cache.mask = mask;

  const Mat encoded = run_encoder(params, mel, mask, &cache.conv_geoms, &cache.conv_acts);
  cache.valid_frames = count_valid(mask);

  StrengthHeadCache head;
  const StrengthHeadResult s =
      run_strength_head(params, encoded, mask, dropout, &cache.strength_lstm, &head);
  cache.strength_hidden = head.hidden;
  cache.fc1_post = head.fc1_post;
  cache.dropout_mask = head.dropout_mask;

  const EmotionHeadResult e =
      run_emotion_head(params, encoded, mask, &cache.emotion_lstm, &cache.pooled);
  cache.emotion_hidden = e.hidden;

  cache.prediction.frame_scores = s.frame_scores;
  cache.prediction.utterance_score = s.utterance_score;
  cache.prediction.emotion_probs = e.probs;
  return cache;
}

}  // namespace strengthnet::model
