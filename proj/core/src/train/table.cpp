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

#include "strengthnet/train/table.hpp"

#include <filesystem>
#include <unordered_map>

#include "strengthnet/audio/feature_cache.hpp"
#include "strengthnet/common/error.hpp"

namespace strengthnet::train {

std::vector<std::size_t> TrainingTable::indices_of(data::Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].split == split) out.push_back(i);
  }
  return out;
}

TrainingTable make_training_table(const data::CorpusManifest& manifest,
                                  const std::vector<ranker::StrengthLabel>& labels,
                                  const MelLoader& loader) {
  std::unordered_map<std::string, double> label_by_id;
  for (const auto& l : labels) label_by_id[l.utterance_id] = l.normalized;

  TrainingTable table;
  for (const auto& row : manifest.rows) {
    if (row.emotion == data::Emotion::kNeutral) continue;  // 4-class training set
    const auto it = label_by_id.find(row.utterance_id);
    if (it == label_by_id.end()) {
      throw MissingLabel("make_training_table: no strength label for utterance '" +
                         row.utterance_id + "'");
    }
    TrainingExample ex;
    ex.utterance_id = row.utterance_id;
    ex.dataset_id = row.dataset_id;
    ex.emotion = row.emotion;
    ex.target_strength = it->second;
    ex.mel = loader(row);
    ex.split = row.split;
    table.rows.push_back(std::move(ex));
  }
  return table;
}

MelLoader mel_cache_loader(const std::string& feature_dir) {
  return [feature_dir](const data::ManifestRow& row) {
    const auto path =
        std::filesystem::path(feature_dir) / "mel" / (row.utterance_id + ".mel");
    auto record = audio::read_mel_record(path.string());
    if (record.utterance_id != row.utterance_id) {
      throw InvalidInput("mel cache id mismatch in " + path.string());
    }
    return std::move(record.mel);
  };
}

}  // namespace strengthnet::train
