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

#include "strengthnet/model/backward.hpp"

#include <cmath>

#include "strengthnet/common/error.hpp"

namespace strengthnet::model {

namespace {

double sign_or_zero(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

void backward_accumulate(const ModelParams& params, const ForwardCache& cache,
                         double target_strength, const Eigen::VectorXd& target_emotion,
                         const LossWeights& weights, ModelParams* grad) {
  const Prediction& pred = cache.prediction;
  const long T = pred.frame_scores.size();
  const double t_valid = static_cast<double>(cache.valid_frames);

  // ---- strength head ----
  // frame_mae = (1/T_v) sum |fs_t - s|; utterance term spreads its
  // subgradient through the mean pool.
  const double d_alpha =
      weights.utterance * sign_or_zero(pred.utterance_score - target_strength);
  Eigen::VectorXd d_scores = Eigen::VectorXd::Zero(T);
  for (long t = 0; t < T; ++t) {
    if (cache.mask(t) != 1.0) continue;
    const double frame_term =
        weights.frame * sign_or_zero(pred.frame_scores(t) - target_strength);
    d_scores(t) = (frame_term + d_alpha) / t_valid;
  }

  // fc2: scores = dropout(fc1_post) * fc2_w + fc2_b
  const Mat fc1_dropped = cache.fc1_post.cwiseProduct(cache.dropout_mask);
  grad->fc2_weight.noalias() += fc1_dropped.transpose() * d_scores;
  grad->fc2_bias(0, 0) += d_scores.sum();

  Mat d_fc1 = d_scores * params.fc2_weight.transpose();  // T x fc_hidden
  d_fc1 = d_fc1.cwiseProduct(cache.dropout_mask);
  // ReLU gate on the stored post-activation
  d_fc1.array() *= (cache.fc1_post.array() > 0.0).cast<double>();

  grad->fc1_weight.noalias() += cache.strength_hidden.transpose() * d_fc1;
  grad->fc1_bias.col(0).noalias() += d_fc1.colwise().sum().transpose();

  const Mat d_strength_hidden = d_fc1 * params.fc1_weight.transpose();
  Mat d_encoded = bilstm_backward(d_strength_hidden, params.strength_lstm,
                                  cache.strength_lstm, &grad->strength_lstm);

  // ---- emotion head ----
  if (weights.category != 0.0) {
    const Eigen::VectorXd& probs = pred.emotion_probs;
    // exact gradient of -sum y_k log(p_k + eps) through the softmax
    Eigen::VectorXd d_probs(probs.size());
    for (long k = 0; k < probs.size(); ++k) {
      d_probs(k) = -weights.category * target_emotion(k) / (probs(k) + 1e-12);
    }
    const double dot = d_probs.dot(probs);
    const Eigen::VectorXd d_logits =
        probs.cwiseProduct(d_probs - Eigen::VectorXd::Constant(probs.size(), dot));

    grad->emo_weight.noalias() += cache.pooled * d_logits.transpose();
    grad->emo_bias.col(0).noalias() += d_logits;

    const Eigen::VectorXd d_pooled = params.emo_weight * d_logits;
    Mat d_emotion_hidden = Mat::Zero(T, cache.emotion_hidden.cols());
    for (long t = 0; t < T; ++t) {
      if (cache.mask(t) == 1.0) d_emotion_hidden.row(t) = d_pooled.transpose() / t_valid;
    }
    d_encoded += bilstm_backward(d_emotion_hidden, params.emotion_lstm, cache.emotion_lstm,
                                 &grad->emotion_lstm);
  }

  // ---- encoder ----
  Mat dy = std::move(d_encoded);
  for (long i = static_cast<long>(cache.conv_geoms.size()) - 1; i >= 0; --i) {
    dy = conv_backward(cache.conv_acts[static_cast<std::size_t>(i)],
                       cache.conv_acts[static_cast<std::size_t>(i) + 1], dy,
                       params.conv[static_cast<std::size_t>(i)],
                       cache.conv_geoms[static_cast<std::size_t>(i)],
                       &grad->conv[static_cast<std::size_t>(i)]);
  }
}

ModelParams backward(const ModelParams& params, const ForwardCache& cache,
                     double target_strength, const Eigen::VectorXd& target_emotion,
                     const LossWeights& weights) {
  ModelParams grad = ModelParams::zeros_like(params);
  backward_accumulate(params, cache, target_strength, target_emotion, weights, &grad);
  return grad;
}

}  // namespace strengthnet::model
