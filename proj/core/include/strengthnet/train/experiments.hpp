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

#ifndef STRENGTHNET_TRAIN_EXPERIMENTS_HPP_
#define STRENGTHNET_TRAIN_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "strengthnet/ranker/rank_svm.hpp"
#include "strengthnet/train/evaluate.hpp"
#include "strengthnet/train/trainer.hpp"

namespace strengthnet::train {

// One corpus with everything the experiments need in memory.
struct CorpusData {
  std::string dataset_id;
  data::CorpusManifest manifest;  // splits assigned
  std::map<std::string, audio::MelSpectrogram> mels;    // raw log-mel by id
  std::map<std::string, Eigen::VectorXd> functionals;   // by id
  std::map<int, ranker::RankingModel> rankers;          // by Emotion value
  std::vector<ranker::StrengthLabel> labels;            // all emotional utterances
  std::vector<std::string> warnings;
};

struct RankerTrainingOptions {
  int max_pairs_per_set = 2000;
  std::uint64_t seed = 1;
  ranker::RankerOptions svm;
  // which rankers to train; defaults to all four trained emotions
  std::vector<data::Emotion> emotions = {data::Emotion::kHappy, data::Emotion::kSad,
                                         data::Emotion::kAngry, data::Emotion::kSurprise};
};

// Trains one ranker per trained emotion on the corpus train split and
// scores every emotional utterance, normalizing per (dataset, emotion).
void build_corpus_rankers(CorpusData* corpus, const RankerTrainingOptions& options);

// Pools labeled corpora into one training table (mels + normalized labels).
TrainingTable table_from_corpora(const std::vector<const CorpusData*>& corpora);

// MAE of the source-corpus ranker applied to the target corpus test split,
// with transferred scores min-max normalized per (target, emotion) over
// the whole target corpus.
double ranker_transfer_mae(const CorpusData& source, const CorpusData& target);

struct AblationOutcome {
  std::string variant;  // "full", "no_category_loss", "no_frame_loss"
  TrainResult result;
  EvalReport test_report;
};

// Trains the full model and the two ablated variants with identical data
// and seed, evaluating each on the table's test split.
std::vector<AblationOutcome> run_ablation(const model::ModelConfig& model_config,
                                          const TrainingTable& table,
                                          const TrainConfig& train_config);

struct ComparisonCell {
  bool na = true;
  double mean = 0.0;
  double stddev = 0.0;
  int runs = 0;
};

struct ComparisonMatrix {
  std::vector<std::string> methods;  // rows
  std::vector<std::string> corpora;  // columns: evaluation test splits
  std::vector<std::vector<ComparisonCell>> cells;
};

// Methods x corpora MAE matrix: one ranker-transfer row per corpus and one
// StrengthNet row per pooling configuration, NA where the evaluation corpus
// overlaps the training source. Multi-seed pools report mean/std.
ComparisonMatrix cross_corpus_eval(const std::vector<const CorpusData*>& corpora,
                                   const std::vector<std::vector<std::string>>& pools,
                                   const std::vector<std::uint64_t>& seeds,
                                   const model::ModelConfig& model_config,
                                   const TrainConfig& train_config);

void save_comparison_csv(const std::string& path, const ComparisonMatrix& matrix);

}  // namespace strengthnet::train

#endif  // STRENGTHNET_TRAIN_EXPERIMENTS_HPP_
