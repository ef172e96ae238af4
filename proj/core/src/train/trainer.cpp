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

#include "strengthnet/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"
#include "strengthnet/model/backward.hpp"
#include "strengthnet/model/forward.hpp"
#include "strengthnet/train/early_stopping.hpp"

namespace strengthnet::train {

namespace {

using model::Mat;

// Adam with bias correction over the fixed tensor order of visit().
class AdamOptimizer {
 public:
  AdamOptimizer(model::ModelParams* params, const TrainConfig& config)
      : config_(config),
        m_(model::ModelParams::zeros_like(*params)),
        v_(model::ModelParams::zeros_like(*params)) {
    params->visit([this](const std::string&, Mat& t) { param_slots_.push_back(&t); });
    m_.visit([this](const std::string&, Mat& t) { m_slots_.push_back(&t); });
    v_.visit([this](const std::string&, Mat& t) { v_slots_.push_back(&t); });
  }

  void step(model::ModelParams* grads) {
    std::vector<Mat*> grad_slots;
    grads->visit([&grad_slots](const std::string&, Mat& t) { grad_slots.push_back(&t); });
    ++t_;
    const double bias1 = 1.0 - std::pow(config_.beta1, t_);
    const double bias2 = 1.0 - std::pow(config_.beta2, t_);
    for (std::size_t i = 0; i < param_slots_.size(); ++i) {
      Mat& g = *grad_slots[i];
      Mat& m = *m_slots_[i];
      Mat& v = *v_slots_[i];
      m = config_.beta1 * m + (1.0 - config_.beta1) * g;
      v = config_.beta2 * v + (1.0 - config_.beta2) * g.cwiseProduct(g);
      const Mat m_hat = m / bias1;
      const Mat v_hat = v / bias2;
      param_slots_[i]->noalias() -=
          config_.learning_rate *
          (m_hat.array() / (v_hat.array().sqrt() + config_.adam_epsilon)).matrix();
    }
  }

 private:
  TrainConfig config_;
  model::ModelParams m_;
  model::ModelParams v_;
  std::vector<Mat*> param_slots_;
  std::vector<Mat*> m_slots_;
  std::vector<Mat*> v_slots_;
  long t_ = 0;
};

Eigen::VectorXd one_hot(data::Emotion emotion, int num_classes) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(num_classes);
  y(data::trained_emotion_index(emotion)) = 1.0;
  return y;
}

// Batches of indices grouped by length so padding stays small; batch order
// is shuffled per epoch.
std::vector<std::vector<std::size_t>> make_batches(const TrainingTable& table,
                                                   std::vector<std::size_t> indices,
                                                   int batch_size, Rng& rng) {
  std::stable_sort(indices.begin(), indices.end(), [&table](std::size_t a, std::size_t b) {
    return table.rows[a].mel.num_frames() < table.rows[b].mel.num_frames();
  });
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t pos = 0; pos < indices.size(); pos += static_cast<std::size_t>(batch_size)) {
    const std::size_t end = std::min(indices.size(), pos + static_cast<std::size_t>(batch_size));
    batches.emplace_back(indices.begin() + static_cast<long>(pos),
                         indices.begin() + static_cast<long>(end));
  }
  rng.shuffle(batches);
  return batches;
}

struct ValScore {
  double mae = 0.0;
  double accuracy = 0.0;
};

ValScore validate(const model::ModelParams& params, const audio::NormalizationStats& stats,
                  const TrainingTable& table, const std::vector<std::size_t>& indices) {
  double abs_err = 0.0;
  long correct = 0;
  for (const std::size_t i : indices) {
    const auto& row = table.rows[i];
    const Mat mel = audio::apply_normalization(row.mel, stats).frames;
    const auto pred = model::predict(params, mel, model::full_mask(mel.rows()));
    abs_err += std::abs(pred.utterance_score - row.target_strength);
    long argmax = 0;
    pred.emotion_probs.maxCoeff(&argmax);
    if (argmax == data::trained_emotion_index(row.emotion)) ++correct;
  }
  ValScore score;
  score.mae = abs_err / static_cast<double>(indices.size());
  score.accuracy = static_cast<double>(correct) / static_cast<double>(indices.size());
  return score;
}

}  // namespace

TrainResult train(const model::ModelConfig& model_config, const TrainingTable& table,
                  const TrainConfig& config, const TrainOutputs* outputs) {
  const auto train_indices = table.indices_of(data::Split::kTrain);
  const auto val_indices = table.indices_of(data::Split::kVal);
  if (train_indices.empty()) throw InsufficientData("train: no training examples");
  if (val_indices.empty()) throw InsufficientData("train: no validation examples");

  model::ModelConfig cfg = model_config;
  cfg.dropout_rate = config.dropout;
  cfg.validate();

  // normalization stats from the training partition only
  std::vector<audio::MelSpectrogram> train_mels;
  train_mels.reserve(train_indices.size());
  for (const std::size_t i : train_indices) train_mels.push_back(table.rows[i].mel);
  const audio::NormalizationStats stats = audio::fit_normalization(train_mels);
  train_mels.clear();
  train_mels.shrink_to_fit();

  model::ModelParams params = model::ModelParams::init(cfg, config.rng_seed);
  AdamOptimizer optimizer(&params, config);

  const model::LossWeights weights{config.disable_frame_loss ? 0.0 : 1.0, 1.0,
                                   config.disable_category_loss ? 0.0 : 1.0};

  TrainResult result;
  EarlyStopper stopper(config.patience_epochs);
  model::ModelParams best_params = params;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Rng epoch_rng(Rng::mix(config.rng_seed, static_cast<std::uint64_t>(epoch)));
    const auto batches = make_batches(table, train_indices, config.batch_size, epoch_rng);

    double sum_frame = 0.0, sum_utt = 0.0, sum_cat = 0.0, sum_total = 0.0;
    long examples_seen = 0;

    for (std::size_t b = 0; b < batches.size(); ++b) {
      const auto& batch = batches[b];
      const long t_max = [&] {
        long t = 0;
        for (const std::size_t i : batch) {
          t = std::max<long>(t, table.rows[i].mel.num_frames());
        }
        return t;
      }();

      model::ModelParams grads = model::ModelParams::zeros_like(params);
      for (const std::size_t i : batch) {
        const auto& row = table.rows[i];
        const long t_i = row.mel.num_frames();
        // zero-pad to the batch max; the mask hides the padding
        Mat mel = Mat::Zero(t_max, row.mel.num_channels());
        mel.topRows(t_i) = audio::apply_normalization(row.mel, stats).frames;
        Eigen::ArrayXd mask = Eigen::ArrayXd::Zero(t_max);
        mask.head(t_i) = 1.0;

        model::DropoutSpec dropout;
        dropout.enabled = true;
        dropout.seed = Rng::mix(config.rng_seed,
                                (static_cast<std::uint64_t>(epoch) << 32) ^ i);
        const auto cache = model::forward_training(params, mel, mask, dropout);
        const Eigen::VectorXd target = one_hot(row.emotion, cfg.num_emotions);
        const auto losses =
            model::compute_loss(cache.prediction, row.target_strength, target, mask);
        const double objective = model::weighted_total(losses, weights);
        if (!std::isfinite(objective)) {
          throw NumericalError("train: non-finite loss at epoch " + std::to_string(epoch) +
                               ", batch " + std::to_string(b));
        }
        sum_frame += weights.frame * losses.frame_mae;
        sum_utt += losses.utterance_mae;
        sum_cat += weights.category * losses.category_ce;
        sum_total += objective;
        ++examples_seen;

        model::backward_accumulate(params, cache, row.target_strength, target, weights,
                                   &grads);
      }
      // average over the batch
      grads.visit([&batch](const std::string&, Mat& g) {
        g /= static_cast<double>(batch.size());
      });
      optimizer.step(&grads);
    }

    const ValScore val = validate(params, stats, table, val_indices);

    EpochLog log;
    log.epoch = epoch;
    log.train_frame_mae = sum_frame / static_cast<double>(examples_seen);
    log.train_utterance_mae = sum_utt / static_cast<double>(examples_seen);
    log.train_category_ce = sum_cat / static_cast<double>(examples_seen);
    log.train_total = sum_total / static_cast<double>(examples_seen);
    log.val_mae = val.mae;
    if (!config.disable_category_loss) log.val_acc = val.accuracy;
    log.learning_rate = config.learning_rate;
    result.log.push_back(log);

    if (stopper.observe(epoch, val.mae)) {
      best_params = params;
      if (outputs != nullptr && !outputs->checkpoint_path.empty()) {
        model::Checkpoint snapshot;
        snapshot.params = best_params;
        snapshot.norm = stats;
        model::save_checkpoint(outputs->checkpoint_path, snapshot);
      }
    }
    if (outputs != nullptr && !outputs->log_path.empty()) {
      save_train_log(outputs->log_path, result.log);
    }
    if (stopper.should_stop(epoch)) {
      result.stopped_early = true;
      break;
    }
  }

  result.best.params = std::move(best_params);
  result.best.norm = stats;
  result.best_epoch = stopper.best_epoch();
  result.best_val_mae = stopper.best_value();
  return result;
}

void save_train_log(const std::string& path, const std::vector<EpochLog>& log) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  for (const auto& e : log) {
    nlohmann::json j;
    j["epoch"] = e.epoch;
    j["train_frame_mae"] = e.train_frame_mae;
    j["train_utterance_mae"] = e.train_utterance_mae;
    j["train_category_ce"] = e.train_category_ce;
    j["train_total"] = e.train_total;
    j["val_mae"] = e.val_mae;
    if (e.val_acc.has_value()) j["val_acc"] = *e.val_acc;
    j["lr"] = e.learning_rate;
    out << j.dump() << "\n";
  }
  if (!out) throw InvalidInput("short write: " + path);
}

}  // namespace strengthnet::train
