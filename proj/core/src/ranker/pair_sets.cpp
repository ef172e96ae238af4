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

#include "strengthnet/ranker/pair_sets.hpp"

#include <unordered_set>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"

namespace strengthnet::ranker {

namespace {

// Samples k distinct indices from [0, n) without materializing the range.
std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k, Rng& rng) {
  std::vector<std::uint64_t> out;
  if (k >= n) {
    out.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  out.reserve(k);
  while (out.size() < k) {
    const std::uint64_t v = rng.below(n);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

PairSets build_pair_sets(const data::CorpusManifest& manifest, data::Emotion emotion,
                         int max_pairs_per_set, std::uint64_t seed) {
  if (emotion == data::Emotion::kNeutral) {
    throw InvalidInput("build_pair_sets: target emotion cannot be neutral");
  }
  if (max_pairs_per_set <= 0) {
    throw InvalidInput("build_pair_sets: max_pairs_per_set must be positive");
  }

  std::vector<int> neutral;
  std::vector<int> emotional;
  for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
    const auto& row = manifest.rows[i];
    if (row.emotion == data::Emotion::kNeutral) neutral.push_back(static_cast<int>(i));
    else if (row.emotion == emotion) emotional.push_back(static_cast<int>(i));
  }
  if (neutral.empty() || emotional.empty()) {
    throw InsufficientData("build_pair_sets: need at least one neutral and one " +
                           data::emotion_name(emotion) + " utterance (have " +
                           std::to_string(neutral.size()) + " neutral, " +
                           std::to_string(emotional.size()) + " emotional)");
  }

  PairSets sets;
  sets.emotion = emotion;
  sets.dataset_id = manifest.rows.front().dataset_id;
  Rng rng(seed);

  // ordered: emotional x neutral
  const std::uint64_t n_emo = emotional.size();
  const std::uint64_t n_neu = neutral.size();
  for (const std::uint64_t flat :
       sample_indices(n_emo * n_neu, static_cast<std::uint64_t>(max_pairs_per_set), rng)) {
    sets.ordered.emplace_back(emotional[flat / n_neu], neutral[flat % n_neu]);
  }

  // similar: unordered within-domain pairs, indexed over the union
  // [0, C(n_neu,2)) -> neutral pairs, then emotional pairs
  const std::uint64_t neu_pairs = n_neu * (n_neu - 1) / 2;
  const std::uint64_t emo_pairs = n_emo * (n_emo - 1) / 2;
  const auto unrank_pair = [](std::uint64_t flat, const std::vector<int>& pool) {
    // row-major upper triangle: (i, j) with i < j
    std::uint64_t i = 0;
    std::uint64_t row_len = pool.size() - 1;
    while (flat >= row_len) {
      flat -= row_len;
      --row_len;
      ++i;
    }
    return std::make_pair(pool[i], pool[i + 1 + flat]);
  };
  for (const std::uint64_t flat :
       sample_indices(neu_pairs + emo_pairs, static_cast<std::uint64_t>(max_pairs_per_set), rng)) {
    sets.similar.push_back(flat < neu_pairs ? unrank_pair(flat, neutral)
                                            : unrank_pair(flat - neu_pairs, emotional));
  }
  return sets;
}

}  // namespace strengthnet::ranker
