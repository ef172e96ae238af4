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

#ifndef STRENGTHNET_TRAIN_TRAINER_HPP_
#define STRENGTHNET_TRAIN_TRAINER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strengthnet/model/checkpoint.hpp"
#include "strengthnet/train/table.hpp"

namespace strengthnet::train {

struct TrainConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.98;
  double adam_epsilon = 1e-8;
  int batch_size = 64;
  double dropout = 0.3;
  int patience_epochs = 30;
  int max_epochs = 300;
  std::uint64_t rng_seed = 1;
  // ablations: drop the auxiliary emotion loss / the frame-wise constraint
  bool disable_category_loss = false;
  bool disable_frame_loss = false;
};

struct EpochLog {
  int epoch = 0;  // 1-based
  double train_frame_mae = 0.0;
  double train_utterance_mae = 0.0;
  double train_category_ce = 0.0;
  double train_total = 0.0;
  double val_mae = 0.0;
  std::optional<double> val_acc;  // absent when the emotion head is ablated
  double learning_rate = 0.0;
};

struct TrainResult {
  model::Checkpoint best;  // parameters + mel normalization stats
  int best_epoch = 0;      // 1-based
  double best_val_mae = 0.0;
  std::vector<EpochLog> log;
  bool stopped_early = false;
};

// Optional on-disk side effects while training: the best checkpoint is
// rewritten whenever validation improves (so a crash or divergence leaves
// the last good one behind) and the log is rewritten every epoch.
struct TrainOutputs {
  std::string checkpoint_path;  // empty: do not write
  std::string log_path;         // empty: do not write
};

// Adam training with length-bucketed shuffled batches, per-epoch validation
// MAE, and early stopping that returns the best checkpoint. Deterministic
// per seed. Throws NumericalError (naming epoch/batch) on divergence,
// InsufficientData when train or val subsets are empty.
TrainResult train(const model::ModelConfig& model_config, const TrainingTable& table,
                  const TrainConfig& config, const TrainOutputs* outputs = nullptr);

// JSON-lines training log, one record per epoch.
void save_train_log(const std::string& path, const std::vector<EpochLog>& log);

}  // namespace strengthnet::train

#endif  // STRENGTHNET_TRAIN_TRAINER_HPP_
