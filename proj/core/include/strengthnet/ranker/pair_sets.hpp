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

#ifndef STRENGTHNET_RANKER_PAIR_SETS_HPP_
#define STRENGTHNET_RANKER_PAIR_SETS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strengthnet/data/manifest.hpp"

namespace strengthnet::ranker {

// Ordered and similar constraint pairs for one (dataset, emotion) ranking
// problem. Indices address rows of the manifest (and the row-aligned
// feature table) the sets were built from.
struct PairSets {
  // (i, j): utterance i expected stronger than utterance j. i is always an
  // emotional utterance and j a neutral one.
  std::vector<std::pair<int, int>> ordered;
  // (i, j): expected similar strength; both neutral or both emotional.
  std::vector<std::pair<int, int>> similar;
  data::Emotion emotion = data::Emotion::kHappy;
  std::string dataset_id;
};

// Samples ordered pairs uniformly without replacement from
// (emotional x neutral) and similar pairs from the union of within-domain
// pairs, each capped at max_pairs_per_set. Deterministic per seed.
// Throws InsufficientData when the manifest lacks neutral or emotional
// utterances of the requested emotion.
PairSets build_pair_sets(const data::CorpusManifest& manifest, data::Emotion emotion,
                         int max_pairs_per_set, std::uint64_t seed);

}  // namespace strengthnet::ranker

#endif  // STRENGTHNET_RANKER_PAIR_SETS_HPP_
