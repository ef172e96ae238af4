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

#include "strengthnet/train/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "strengthnet/common/error.hpp"
#include "strengthnet/model/forward.hpp"

namespace strengthnet::train {

EvalReport evaluate(const model::Checkpoint& ckpt, const TrainingTable& table,
                    const std::vector<std::size_t>& indices, bool with_accuracy) {
  if (indices.empty()) throw InvalidInput("evaluate: empty subset");

  EvalReport report;
  double abs_err = 0.0;
  long correct = 0;
  std::map<std::string, std::pair<double, long>> corpus_acc;
  std::map<std::string, std::pair<double, long>> emotion_acc;

  for (const std::size_t i : indices) {
    const auto& row = table.rows[i];
    const model::Mat mel = audio::apply_normalization(row.mel, ckpt.norm).frames;
    const auto pred = model::predict(ckpt.params, mel, model::full_mask(mel.rows()));

    UtterancePrediction up;
    up.utterance_id = row.utterance_id;
    up.dataset_id = row.dataset_id;
    up.true_emotion = row.emotion;
    up.target_strength = row.target_strength;
    up.predicted_strength = pred.utterance_score;
    long argmax = 0;
    pred.emotion_probs.maxCoeff(&argmax);
    up.predicted_emotion_index = static_cast<int>(argmax);
    up.emotion_probs = pred.emotion_probs;
    report.predictions.push_back(up);

    const double err = std::abs(pred.utterance_score - row.target_strength);
    abs_err += err;
    if (argmax == data::trained_emotion_index(row.emotion)) ++correct;
    auto& ca = corpus_acc[row.dataset_id];
    ca.first += err;
    ca.second += 1;
    auto& ea = emotion_acc[data::emotion_name(row.emotion)];
    ea.first += err;
    ea.second += 1;
  }

  const double n = static_cast<double>(indices.size());
  report.utterance_mae = abs_err / n;
  if (with_accuracy) report.ser_accuracy = static_cast<double>(correct) / n;
  for (const auto& [corpus, acc] : corpus_acc) {
    report.per_corpus_mae[corpus] = acc.first / static_cast<double>(acc.second);
  }
  for (const auto& [emotion, acc] : emotion_acc) {
    report.per_emotion_mae[emotion] = acc.first / static_cast<double>(acc.second);
  }
  return report;
}

EvalReport evaluate_split(const model::Checkpoint& ckpt, const TrainingTable& table,
                          data::Split split, bool with_accuracy) {
  return evaluate(ckpt, table, table.indices_of(split), with_accuracy);
}

void save_eval_report_json(const std::string& path, const EvalReport& report) {
  nlohmann::json j;
  j["utterance_mae"] = report.utterance_mae;
  if (report.ser_accuracy.has_value()) j["ser_accuracy"] = *report.ser_accuracy;
  j["per_corpus_mae"] = report.per_corpus_mae;
  j["per_emotion_mae"] = report.per_emotion_mae;
  nlohmann::json preds = nlohmann::json::array();
  for (const auto& p : report.predictions) {
    nlohmann::json jp;
    jp["utterance_id"] = p.utterance_id;
    jp["dataset_id"] = p.dataset_id;
    jp["emotion"] = data::emotion_name(p.true_emotion);
    jp["target"] = p.target_strength;
    jp["strength"] = p.predicted_strength;
    jp["predicted_emotion"] =
        data::emotion_name(data::kTrainedEmotions[p.predicted_emotion_index]);
    preds.push_back(jp);
  }
  j["predictions"] = preds;
  j["histogram_20bin"] = strength_histogram(report);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

std::vector<int> strength_histogram(const EvalReport& report, int bins) {
  std::vector<int> hist(static_cast<std::size_t>(bins), 0);
  for (const auto& p : report.predictions) {
    const double v = std::clamp(p.predicted_strength, 0.0, 1.0);
    const int bin = std::min(static_cast<int>(v * bins), bins - 1);
    hist[static_cast<std::size_t>(bin)] += 1;
  }
  return hist;
}

}  // namespace strengthnet::train
