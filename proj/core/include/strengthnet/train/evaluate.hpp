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

#ifndef STRENGTHNET_TRAIN_EVALUATE_HPP_
#define STRENGTHNET_TRAIN_EVALUATE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strengthnet/model/checkpoint.hpp"
#include "strengthnet/train/table.hpp"

namespace strengthnet::train {

struct UtterancePrediction {
  std::string utterance_id;
  std::string dataset_id;
  data::Emotion true_emotion = data::Emotion::kHappy;
  double target_strength = 0.0;
  double predicted_strength = 0.0;
  int predicted_emotion_index = 0;
  Eigen::VectorXd emotion_probs;
};

struct EvalReport {
  double utterance_mae = 0.0;
  std::optional<double> ser_accuracy;  // absent when the emotion head is unused
  std::map<std::string, double> per_corpus_mae;
  std::map<std::string, double> per_emotion_mae;
  std::vector<UtterancePrediction> predictions;  // raw score list
};

// Eval-mode predictions over the given rows (each utterance alone, full
// mask). Throws InvalidInput on an empty subset.
EvalReport evaluate(const model::Checkpoint& ckpt, const TrainingTable& table,
                    const std::vector<std::size_t>& indices, bool with_accuracy = true);

// Convenience: evaluate one split of the table.
EvalReport evaluate_split(const model::Checkpoint& ckpt, const TrainingTable& table,
                          data::Split split, bool with_accuracy = true);

void save_eval_report_json(const std::string& path, const EvalReport& report);

// 20-bin histogram of predicted strengths over [0,1]; bin i covers
// [i/20, (i+1)/20), last bin closed.
std::vector<int> strength_histogram(const EvalReport& report, int bins = 20);

}  // namespace strengthnet::train

#endif  // STRENGTHNET_TRAIN_EVALUATE_HPP_
