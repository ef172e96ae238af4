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

#include "strengthnet/model/loss.hpp"

#include <cmath>

#include "strengthnet/common/error.hpp"

namespace strengthnet::model {

LossBreakdown compute_loss(const Prediction& pred, double target_strength,
                           const Eigen::VectorXd& target_emotion,
                           const Eigen::ArrayXd& mask) {
  if (target_strength < 0.0 || target_strength > 1.0) {
    throw InvalidInput("compute_loss: target strength must be in [0,1]");
  }
  if (target_emotion.size() != pred.emotion_probs.size()) {
    throw InvalidInput("compute_loss: emotion target size mismatch");
  }
  double onehot_sum = 0.0;
  for (long k = 0; k < target_emotion.size(); ++k) {
    if (target_emotion(k) != 0.0 && target_emotion(k) != 1.0) {
      throw InvalidInput("compute_loss: target emotion must be one-hot");
    }
    onehot_sum += target_emotion(k);
  }
  if (onehot_sum != 1.0) throw InvalidInput("compute_loss: target emotion must be one-hot");
  if (mask.size() != pred.frame_scores.size()) {
    throw InvalidInput("compute_loss: mask length mismatch");
  }

  LossBreakdown out;
  double abs_sum = 0.0;
  long valid = 0;
  for (long t = 0; t < pred.frame_scores.size(); ++t) {
    if (mask(t) == 1.0) {
      abs_sum += std::abs(pred.frame_scores(t) - target_strength);
      ++valid;
    }
  }
  if (valid == 0) throw InvalidInput("compute_loss: mask has no valid frames");
  out.frame_mae = abs_sum / static_cast<double>(valid);
  out.utterance_mae = std::abs(pred.utterance_score - target_strength);
  double ce = 0.0;
  for (long k = 0; k < target_emotion.size(); ++k) {
    if (target_emotion(k) == 1.0) ce -= std::log(pred.emotion_probs(k) + 1e-12);
  }
  out.category_ce = ce;
  out.total = out.frame_mae + out.utterance_mae + out.category_ce;
  return out;
}

double weighted_total(const LossBreakdown& losses, const LossWeights& weights) {
  return weights.frame * losses.frame_mae + weights.utterance * losses.utterance_mae +
         weights.category * losses.category_ce;
}

}  // namespace strengthnet::model
