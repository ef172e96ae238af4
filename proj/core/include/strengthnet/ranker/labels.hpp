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

#ifndef STRENGTHNET_RANKER_LABELS_HPP_
#define STRENGTHNET_RANKER_LABELS_HPP_

#include <string>
#include <vector>

#include "strengthnet/data/manifest.hpp"

namespace strengthnet::ranker {

struct ScoredUtterance {
  std::string utterance_id;
  std::string dataset_id;
  data::Emotion emotion = data::Emotion::kHappy;
  double raw_score = 0.0;
};

struct StrengthLabel {
  std::string utterance_id;
  std::string dataset_id;
  data::Emotion emotion = data::Emotion::kHappy;
  double raw_score = 0.0;
  double normalized = 0.0;  // in [0,1], 1 = highest strength
};

struct NormalizeResult {
  std::vector<StrengthLabel> labels;     // input order preserved
  std::vector<std::string> warnings;     // one per degenerate group
};

// Min-max normalization within each (dataset_id, emotion) group. Groups
// whose raw scores are all equal get 0.5 everywhere plus a DegenerateGroup
// warning. Throws InvalidInput on an empty collection.
NormalizeResult normalize_scores(const std::vector<ScoredUtterance>& scored);

// CSV header: utterance_id,dataset_id,emotion,raw_score,normalized
void save_labels_csv(const std::string& path, const std::vector<StrengthLabel>& labels);
std::vector<StrengthLabel> load_labels_csv(const std::string& path);

}  // namespace strengthnet::ranker

#endif  // STRENGTHNET_RANKER_LABELS_HPP_
