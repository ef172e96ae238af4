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

#ifndef STRENGTHNET_MODEL_FORWARD_HPP_
#define STRENGTHNET_MODEL_FORWARD_HPP_

#include <cstdint>
#include <vector>

#include "strengthnet/model/conv.hpp"
#include "strengthnet/model/lstm.hpp"
#include "strengthnet/model/params.hpp"

namespace strengthnet::model {

// Masks are 0/1 arrays over frames; padded rows carry 0. At least one frame
// must be valid.
Eigen::ArrayXd full_mask(long num_frames);

// Running (Welford) mean over the valid entries; exact for constant input.
// This is the pooling used for the utterance score.
double masked_mean(const Eigen::VectorXd& values, const Eigen::ArrayXd& mask);

// Encoder: blocks of ReLU convs with same padding; the frequency axis is
// collapsed to one bin, giving T x encoder_output_dim().
Mat encoder_forward(const ModelParams& params, const Mat& mel, const Eigen::ArrayXd& mask);

struct StrengthHeadResult {
  Eigen::VectorXd frame_scores;  // length T, zero at masked rows
  double utterance_score = 0.0;  // mean of frame scores over valid rows
  Mat hidden;                    // T x 2H BiLSTM states
};
StrengthHeadResult strength_forward(const ModelParams& params, const Mat& encoded,
                                    const Eigen::ArrayXd& mask);

struct EmotionHeadResult {
  Eigen::VectorXd probs;  // num_emotions, sums to 1
  Mat hidden;             // T x 2H BiLSTM states
};
EmotionHeadResult emotion_forward(const ModelParams& params, const Mat& encoded,
                                  const Eigen::ArrayXd& mask);

struct Prediction {
  Eigen::VectorXd frame_scores;
  double utterance_score = 0.0;
  Eigen::VectorXd emotion_probs;
};

// Eval-mode forward: deterministic, no dropout.
Prediction predict(const ModelParams& params, const Mat& mel, const Eigen::ArrayXd& mask);

struct DropoutSpec {
  bool enabled = false;
  std::uint64_t seed = 0;
};

// Everything backward() needs, recorded by the training-mode forward.
struct ForwardCache {
  Eigen::ArrayXd mask;
  long valid_frames = 0;
  std::vector<ConvGeometry> conv_geoms;
  std::vector<Mat> conv_acts;  // conv_acts[0] = masked input, then each layer output
  BiLstmCache strength_lstm;
  Mat strength_hidden;   // T x 2H
  Mat fc1_post;          // T x fc_hidden, after ReLU, before dropout
  Mat dropout_mask;      // T x fc_hidden, values 0 or 1/(1-rate)
  BiLstmCache emotion_lstm;
  Mat emotion_hidden;    // T x 2H
  Eigen::VectorXd pooled;  // 2H
  Prediction prediction;
};

// Training-mode forward with recorded activations. Dropout (strength head
// FC1 only) uses a seeded mask so runs are reproducible.
ForwardCache forward_training(const ModelParams& params, const Mat& mel,
                              const Eigen::ArrayXd& mask, const DropoutSpec& dropout);

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_FORWARD_HPP_
