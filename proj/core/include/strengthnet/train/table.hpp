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

#ifndef STRENGTHNET_TRAIN_TABLE_HPP_
#define STRENGTHNET_TRAIN_TABLE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "strengthnet/audio/mel.hpp"
#include "strengthnet/data/manifest.hpp"
#include "strengthnet/ranker/labels.hpp"

namespace strengthnet::train {

struct TrainingExample {
  std::string utterance_id;
  std::string dataset_id;
  data::Emotion emotion = data::Emotion::kHappy;
  double target_strength = 0.0;
  audio::MelSpectrogram mel;  // raw log-mel; normalized inside the trainer
  data::Split split = data::Split::kUnassigned;
};

struct TrainingTable {
  std::vector<TrainingExample> rows;

  std::vector<std::size_t> indices_of(data::Split split) const;
  bool empty() const { return rows.empty(); }
};

using MelLoader = std::function<audio::MelSpectrogram(const data::ManifestRow&)>;

// Builds rows (mel, target strength, emotion) for the four trained
// emotions; neutral utterances are excluded. Every emotional utterance must
// have a strength label or MissingLabel is thrown.
TrainingTable make_training_table(const data::CorpusManifest& manifest,
                                  const std::vector<ranker::StrengthLabel>& labels,
                                  const MelLoader& loader);

// Loader reading <feature_dir>/mel/<utterance_id>.mel cache records.
MelLoader mel_cache_loader(const std::string& feature_dir);

}  // namespace strengthnet::train

#endif  // STRENGTHNET_TRAIN_TABLE_HPP_
