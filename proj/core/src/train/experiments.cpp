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

#include "strengthnet/train/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "strengthnet/audio/functionals.hpp"
#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"
#include "strengthnet/ranker/pair_sets.hpp"

namespace strengthnet::train {

void build_corpus_rankers(CorpusData* corpus, const RankerTrainingOptions& options) {
  const data::CorpusManifest train_subset = corpus->manifest.filtered(data::Split::kTrain);
  if (train_subset.rows.empty()) {
    throw InsufficientData("build_corpus_rankers: corpus " + corpus->dataset_id +
                           " has no train split");
  }

  Eigen::MatrixXd features(static_cast<long>(train_subset.rows.size()),
                           static_cast<long>(audio::kFunctionalDim));
  for (std::size_t i = 0; i < train_subset.rows.size(); ++i) {
    const auto it = corpus->functionals.find(train_subset.rows[i].utterance_id);
    if (it == corpus->functionals.end()) {
      throw InvalidInput("build_corpus_rankers: missing functionals for '" +
                         train_subset.rows[i].utterance_id + "'");
    }
    features.row(static_cast<long>(i)) = it->second.transpose();
  }

  std::vector<ranker::ScoredUtterance> scored;
  for (const data::Emotion emotion : options.emotions) {
    const auto pairs = ranker::build_pair_sets(
        train_subset, emotion, options.max_pairs_per_set,
        Rng::mix(options.seed, static_cast<std::uint64_t>(emotion)));
    auto model = ranker::train_ranker(features, pairs, options.svm);
    model.dataset_id = corpus->dataset_id;

    for (const auto& row : corpus->manifest.rows) {
      if (row.emotion != emotion) continue;
      const auto it = corpus->functionals.find(row.utterance_id);
      if (it == corpus->functionals.end()) {
        throw InvalidInput("build_corpus_rankers: missing functionals for '" +
                           row.utterance_id + "'");
      }
      ranker::ScoredUtterance s;
      s.utterance_id = row.utterance_id;
      s.dataset_id = row.dataset_id;
      s.emotion = emotion;
      s.raw_score = ranker::score(model, it->second);
      scored.push_back(std::move(s));
    }
    corpus->rankers[static_cast<int>(emotion)] = std::move(model);
  }

  auto normalized = ranker::normalize_scores(scored);
  corpus->labels = std::move(normalized.labels);
  for (auto& w : normalized.warnings) corpus->warnings.push_back(std::move(w));
}

TrainingTable table_from_corpora(const std::vector<const CorpusData*>& corpora) {
  TrainingTable table;
  for (const CorpusData* corpus : corpora) {
    std::map<std::string, double> label_by_id;
    for (const auto& l : corpus->labels) label_by_id[l.utterance_id] = l.normalized;
    for (const auto& row : corpus->manifest.rows) {
      if (row.emotion == data::Emotion::kNeutral) continue;
      const auto lit = label_by_id.find(row.utterance_id);
      if (lit == label_by_id.end()) {
        throw MissingLabel("table_from_corpora: no strength label for '" +
                           row.utterance_id + "'");
      }
      const auto mit = corpus->mels.find(row.utterance_id);
      if (mit == corpus->mels.end()) {
        throw InvalidInput("table_from_corpora: missing mel for '" + row.utterance_id + "'");
      }
      TrainingExample ex;
      ex.utterance_id = row.utterance_id;
      ex.dataset_id = row.dataset_id;
      ex.emotion = row.emotion;
      ex.target_strength = lit->second;
      ex.mel = mit->second;
      ex.split = row.split;
      table.rows.push_back(std::move(ex));
    }
  }
  return table;
}

double ranker_transfer_mae(const CorpusData& source, const CorpusData& target) {
  std::map<std::string, double> target_label;
  for (const auto& l : target.labels) target_label[l.utterance_id] = l.normalized;

  // score the whole target corpus with the source rankers, then normalize
  // per (target, emotion) with target min/max
  std::vector<ranker::ScoredUtterance> scored;
  for (const auto& row : target.manifest.rows) {
    if (row.emotion == data::Emotion::kNeutral) continue;
    const auto rit = source.rankers.find(static_cast<int>(row.emotion));
    if (rit == source.rankers.end()) {
      throw InvalidInput("ranker_transfer_mae: source lacks ranker for " +
                         data::emotion_name(row.emotion));
    }
    ranker::ScoredUtterance s;
    s.utterance_id = row.utterance_id;
    s.dataset_id = row.dataset_id;
    s.emotion = row.emotion;
    s.raw_score = ranker::score(rit->second, target.functionals.at(row.utterance_id));
    scored.push_back(std::move(s));
  }
  const auto normalized = ranker::normalize_scores(scored);

  std::map<std::string, data::Split> split_by_id;
  for (const auto& row : target.manifest.rows) split_by_id[row.utterance_id] = row.split;

  double abs_err = 0.0;
  long n = 0;
  for (const auto& l : normalized.labels) {
    if (split_by_id.at(l.utterance_id) != data::Split::kTest) continue;
    abs_err += std::abs(l.normalized - target_label.at(l.utterance_id));
    ++n;
  }
  if (n == 0) throw InvalidInput("ranker_transfer_mae: target has no test utterances");
  return abs_err / static_cast<double>(n);
}

std::vector<AblationOutcome> run_ablation(const model::ModelConfig& model_config,
                                          const TrainingTable& table,
                                          const TrainConfig& train_config) {
  std::vector<AblationOutcome> outcomes;
  const struct {
    const char* name;
    bool no_cat;
    bool no_frame;
  } variants[] = {{"full", false, false},
                  {"no_category_loss", true, false},
                  {"no_frame_loss", false, true}};
  for (const auto& v : variants) {
    TrainConfig cfg = train_config;
    cfg.disable_category_loss = v.no_cat;
    cfg.disable_frame_loss = v.no_frame;
    AblationOutcome outcome;
    outcome.variant = v.name;
    outcome.result = train(model_config, table, cfg);
    outcome.test_report = evaluate_split(outcome.result.best, table, data::Split::kTest,
                                         /*with_accuracy=*/!v.no_cat);
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

ComparisonMatrix cross_corpus_eval(const std::vector<const CorpusData*>& corpora,
                                   const std::vector<std::vector<std::string>>& pools,
                                   const std::vector<std::uint64_t>& seeds,
                                   const model::ModelConfig& model_config,
                                   const TrainConfig& train_config) {
  if (corpora.size() < 2) throw InsufficientData("cross_corpus_eval: need >= 2 corpora");
  if (seeds.empty()) throw InvalidInput("cross_corpus_eval: need at least one seed");

  ComparisonMatrix matrix;
  for (const CorpusData* c : corpora) matrix.corpora.push_back(c->dataset_id);

  const auto find_corpus = [&corpora](const std::string& id) -> const CorpusData* {
    for (const CorpusData* c : corpora) {
      if (c->dataset_id == id) return c;
    }
    throw InvalidInput("cross_corpus_eval: unknown corpus '" + id + "'");
  };

  // ranker transfer rows (seed independent)
  for (const CorpusData* source : corpora) {
    matrix.methods.push_back("R_" + source->dataset_id);
    std::vector<ComparisonCell> row;
    for (const CorpusData* target : corpora) {
      ComparisonCell cell;
      if (source->dataset_id != target->dataset_id) {
        cell.na = false;
        cell.mean = ranker_transfer_mae(*source, *target);
        cell.stddev = 0.0;
        cell.runs = 1;
      }
      row.push_back(cell);
    }
    matrix.cells.push_back(std::move(row));
  }

  // pooled StrengthNet rows
  for (const auto& pool : pools) {
    std::string name = "StrengthNet_";
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i > 0) name += "+";
      name += pool[i];
    }
    matrix.methods.push_back(name);

    std::vector<const CorpusData*> pool_corpora;
    for (const auto& id : pool) pool_corpora.push_back(find_corpus(id));
    const TrainingTable pool_table = table_from_corpora(pool_corpora);

    // per-seed checkpoints, evaluated against every non-overlapping target
    std::vector<ComparisonCell> row(corpora.size());
    std::vector<std::vector<double>> maes(corpora.size());
    for (const std::uint64_t seed : seeds) {
      TrainConfig cfg = train_config;
      cfg.rng_seed = seed;
      const TrainResult trained = train(model_config, pool_table, cfg);
      for (std::size_t t = 0; t < corpora.size(); ++t) {
        const CorpusData* target = corpora[t];
        if (std::find(pool.begin(), pool.end(), target->dataset_id) != pool.end()) continue;
        const TrainingTable target_table = table_from_corpora({target});
        const EvalReport report = evaluate_split(trained.best, target_table,
                                                 data::Split::kTest, /*with_accuracy=*/false);
        maes[t].push_back(report.utterance_mae);
      }
    }
    for (std::size_t t = 0; t < corpora.size(); ++t) {
      if (maes[t].empty()) continue;
      ComparisonCell& cell = row[t];
      cell.na = false;
      cell.runs = static_cast<int>(maes[t].size());
      double sum = 0.0;
      for (const double v : maes[t]) sum += v;
      cell.mean = sum / static_cast<double>(cell.runs);
      double var = 0.0;
      for (const double v : maes[t]) var += (v - cell.mean) * (v - cell.mean);
      cell.stddev = std::sqrt(var / static_cast<double>(cell.runs));
    }
    matrix.cells.push_back(std::move(row));
  }
  return matrix;
}

void save_comparison_csv(const std::string& path, const ComparisonMatrix& matrix) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  const bool multi_seed = [&matrix] {
    for (const auto& row : matrix.cells) {
      for (const auto& cell : row) {
        if (!cell.na && cell.runs > 1) return true;
      }
    }
    return false;
  }();

  out << "method";
  for (const auto& corpus : matrix.corpora) {
    out << ',' << corpus << "_mae";
    if (multi_seed) out << ',' << corpus << "_std";
  }
  out << "\n";
  out.precision(6);
  out << std::fixed;
  for (std::size_t r = 0; r < matrix.methods.size(); ++r) {
    out << matrix.methods[r];
    for (const auto& cell : matrix.cells[r]) {
      if (cell.na) {
        out << ",NA";
        if (multi_seed) out << ",NA";
      } else {
        out << ',' << cell.mean;
        if (multi_seed) out << ',' << cell.stddev;
      }
    }
    out << "\n";
  }
  if (!out) throw InvalidInput("short write: " + path);
}

}  // namespace strengthnet::train
