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

#ifndef STRENGTHNET_MODEL_BACKWARD_HPP_
#define STRENGTHNET_MODEL_BACKWARD_HPP_

#include "strengthnet/model/forward.hpp"
#include "strengthnet/model/loss.hpp"

namespace strengthnet::model {

// Gradients of the weighted objective
//   w_f * frame_mae + w_u * utterance_mae + w_cat * category_ce
// with respect to every parameter, accumulated into grad (same shape as the
// params; use ModelParams::zeros_like). MAE subgradient at a zero residual
// is 0. A zero category weight leaves all emotion branch gradients exactly
// zero.
void backward_accumulate(const ModelParams& params, const ForwardCache& cache,
                         double target_strength, const Eigen::VectorXd& target_emotion,
                         const LossWeights& weights, ModelParams* grad);

// Convenience wrapper returning fresh gradients for a single example.
ModelParams backward(const ModelParams& params, const ForwardCache& cache,
                     double target_strength, const Eigen::VectorXd& target_emotion,
                     const LossWeights& weights = {});

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_BACKWARD_HPP_
