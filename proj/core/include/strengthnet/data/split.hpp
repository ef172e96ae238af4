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

#ifndef STRENGTHNET_DATA_SPLIT_HPP_
#define STRENGTHNET_DATA_SPLIT_HPP_

#include <array>
#include <cstdint>

#include "strengthnet/data/manifest.hpp"

namespace strengthnet::data {

struct SplitRatios {
  int train = 8;
  int val = 1;
  int test = 1;
};

// Assigns train/val/test per (dataset_id, emotion) group at the given
// ratios. Counts follow largest-remainder rounding, except that val and
// test are bumped to at least one utterance each (a group of 3 becomes
// 1/1/1). Deterministic per seed. With speaker_disjoint, whole speakers are
// assigned per dataset instead of single utterances.
// Throws InsufficientData when a group has fewer than 3 utterances.
CorpusManifest split_manifest(const CorpusManifest& m, const SplitRatios& ratios,
                              std::uint64_t seed, bool speaker_disjoint = false);

// Largest-remainder allocation of n into (train, val, test) with the
// non-empty val/test guarantee. Exposed for tests.
std::array<int, 3> split_counts(int n, const SplitRatios& ratios);

}  // namespace strengthnet::data

#endif  // STRENGTHNET_DATA_SPLIT_HPP_
