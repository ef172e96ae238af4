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

#include "strengthnet/data/split.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"

namespace strengthnet::data {

std::array<int, 3> split_counts(int n, const SplitRatios& ratios) {
  const double total = ratios.train + ratios.val + ratios.test;
  const double quota[3] = {n * ratios.train / total, n * ratios.val / total,
                           n * ratios.test / total};
  std::array<int, 3> counts{};
  double rema[3];
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    counts[i] = static_cast<int>(quota[i]);
    rema[i] = quota[i] - counts[i];
    assigned += counts[i];
  }
  // distribute leftovers by largest remainder; ties favor val, then test
  int leftover = n - assigned;
  const int order[3] = {1, 2, 0};
  while (leftover > 0) {
    int best = -1;
    double best_r = -1.0;
    for (const int i : order) {
      if (rema[i] > best_r + 1e-12) {
        best_r = rema[i];
        best = i;
      }
    }
    counts[best] += 1;
    rema[best] = -1.0;
    --leftover;
  }
  // non-empty val/test guarantee, taken from train
  if (counts[1] == 0 && counts[0] > 1) {
    counts[0] -= 1;
    counts[1] += 1;
  }
  if (counts[2] == 0 && counts[0] > 1) {
    counts[0] -= 1;
    counts[2] += 1;
  }
  return counts;
}

namespace {

// Deterministic group key order: sort by (dataset_id, emotion).
using GroupKey = std::pair<std::string, int>;

}  // namespace

CorpusManifest split_manifest(const CorpusManifest& m, const SplitRatios& ratios,
                              std::uint64_t seed, bool speaker_disjoint) {
  if (ratios.train <= 0 || ratios.val <= 0 || ratios.test <= 0) {
    throw InvalidInput("split_manifest: ratios must be positive");
  }

  CorpusManifest out = m;
  std::map<GroupKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    groups[{out.rows[i].dataset_id, static_cast<int>(out.rows[i].emotion)}].push_back(i);
  }

  for (auto& [key, indices] : groups) {
    const int n = static_cast<int>(indices.size());
    if (n < 3) {
      throw InsufficientData("split_manifest: group (" + key.first + ", " +
                             emotion_name(static_cast<Emotion>(key.second)) +
                             ") has only " + std::to_string(n) + " utterances; need >= 3");
    }
  }

  if (!speaker_disjoint) {
    for (auto& [key, indices] : groups) {
      // per-group stream so the assignment of one group does not depend on
      // how many utterances other groups have
      Rng rng(Rng::mix(seed, std::hash<std::string>{}(key.first) * 31 +
                                 static_cast<std::uint64_t>(key.second)));
      rng.shuffle(indices);
      const auto counts = split_counts(static_cast<int>(indices.size()), ratios);
      int pos = 0;
      for (int i = 0; i < counts[0]; ++i) out.rows[indices[pos++]].split = Split::kTrain;
      for (int i = 0; i < counts[1]; ++i) out.rows[indices[pos++]].split = Split::kVal;
      for (int i = 0; i < counts[2]; ++i) out.rows[indices[pos++]].split = Split::kTest;
    }
    return out;
  }

  // Speaker-disjoint: assign whole speakers per dataset, greedily filling
  // train, then val, then test toward the utterance quotas.
  std::map<std::string, std::vector<std::string>> speakers_by_dataset;
  std::map<std::string, std::vector<std::size_t>> rows_by_speaker;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const auto& row = out.rows[i];
    const std::string speaker_key = row.dataset_id + "\x1f" + row.speaker_id;
    if (rows_by_speaker.find(speaker_key) == rows_by_speaker.end()) {
      speakers_by_dataset[row.dataset_id].push_back(speaker_key);
    }
    rows_by_speaker[speaker_key].push_back(i);
  }

  for (auto& [dataset, speaker_keys] : speakers_by_dataset) {
    if (speaker_keys.size() < 3) {
      throw InsufficientData("split_manifest: dataset " + dataset + " has only " +
                             std::to_string(speaker_keys.size()) +
                             " speakers; need >= 3 for speaker-disjoint splits");
    }
    Rng rng(Rng::mix(seed, std::hash<std::string>{}(dataset)));
    rng.shuffle(speaker_keys);
    int total = 0;
    for (const auto& key : speaker_keys) total += static_cast<int>(rows_by_speaker[key].size());
    const auto counts = split_counts(total, ratios);

    const std::size_t n_spk = speaker_keys.size();
    std::size_t next = 0;
    const auto assign = [&](Split split) {
      for (const std::size_t i : rows_by_speaker[speaker_keys[next]]) {
        out.rows[i].split = split;
      }
      ++next;
    };
    // Fill train toward its utterance quota but always leave two speakers,
    // then val leaving one, then the rest to test.
    int used = 0;
    while (next < n_spk - 2 && used < counts[0]) {
      used += static_cast<int>(rows_by_speaker[speaker_keys[next]].size());
      assign(Split::kTrain);
    }
    used = 0;
    do {
      used += static_cast<int>(rows_by_speaker[speaker_keys[next]].size());
      assign(Split::kVal);
    } while (next < n_spk - 1 && used < counts[1]);
    while (next < n_spk) assign(Split::kTest);
  }
  return out;
}

}  // namespace strengthnet::data
