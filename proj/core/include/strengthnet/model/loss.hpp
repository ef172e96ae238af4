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

#ifndef STRENGTHNET_MODEL_LOSS_HPP_
#define STRENGTHNET_MODEL_LOSS_HPP_

#include "strengthnet/model/forward.hpp"

namespace strengthnet::model {

struct LossBreakdown {
  double frame_mae = 0.0;     // masked mean |frame_score - target|
  double utterance_mae = 0.0;  // |utterance_score - target|
  double category_ce = 0.0;   // -sum y_k log(p_k + 1e-12)
  double total = 0.0;         // exact sum of the three
};

// target_emotion is one-hot over the trained categories.
// Throws InvalidInput on a bad target.
LossBreakdown compute_loss(const Prediction& pred, double target_strength,
                           const Eigen::VectorXd& target_emotion,
                           const Eigen::ArrayXd& mask);

// Per-term multipliers for ablations: 0 removes a term from the training
// objective and its gradient.
struct LossWeights {
  double frame = 1.0;
  double utterance = 1.0;
  double category = 1.0;
};

double weighted_total(const LossBreakdown& losses, const LossWeights& weights);

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_LOSS_HPP_
