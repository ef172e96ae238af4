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

#ifndef STRENGTHNET_DATA_MANIFEST_HPP_
#define STRENGTHNET_DATA_MANIFEST_HPP_

#include <optional>
#include <string>
#include <vector>

namespace strengthnet::data {

enum class Emotion { kNeutral, kHappy, kSad, kAngry, kSurprise };

// The four categories the emotion predictor is trained on, in one-hot order.
inline constexpr Emotion kTrainedEmotions[] = {Emotion::kHappy, Emotion::kSad,
                                               Emotion::kAngry, Emotion::kSurprise};
inline constexpr int kNumTrainedEmotions = 4;

std::string emotion_name(Emotion e);
std::optional<Emotion> parse_emotion(const std::string& s);
// Index into kTrainedEmotions; throws InvalidInput for neutral.
int trained_emotion_index(Emotion e);

enum class Split { kTrain, kVal, kTest, kUnassigned };
std::string split_name(Split s);
std::optional<Split> parse_split(const std::string& s);

struct ManifestRow {
  std::string utterance_id;
  std::string audio_path;
  std::string dataset_id;
  Emotion emotion = Emotion::kNeutral;
  std::string speaker_id;
  Split split = Split::kUnassigned;
};

struct CorpusManifest {
  std::vector<ManifestRow> rows;

  std::size_t size() const { return rows.size(); }
  const ManifestRow* find(const std::string& utterance_id) const;
  CorpusManifest filtered(Split split) const;
  CorpusManifest filtered_dataset(const std::string& dataset_id) const;
  std::vector<std::string> dataset_ids() const;  // unique, in first-seen order
};

// CSV header: utterance_id,audio_path,dataset_id,emotion,speaker_id,split
// An empty split field means unassigned. Throws ParseError with the line
// number on malformed rows, duplicate ids, or unknown emotions/splits.
CorpusManifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const CorpusManifest& m);

// Merges manifests, rejecting duplicate utterance ids across inputs.
CorpusManifest merge_manifests(const std::vector<CorpusManifest>& manifests);

}  // namespace strengthnet::data

#endif  // STRENGTHNET_DATA_MANIFEST_HPP_
