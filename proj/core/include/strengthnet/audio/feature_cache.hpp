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

#ifndef STRENGTHNET_AUDIO_FEATURE_CACHE_HPP_
#define STRENGTHNET_AUDIO_FEATURE_CACHE_HPP_

#include <Eigen/Core>
#include <string>

#include "strengthnet/audio/mel.hpp"

namespace strengthnet::audio {

// On-disk per-utterance records, little endian:
//   mel record (.mel):  u32 id_len | id bytes | u32 T | u32 channels |
//                       T*channels float32, row major
//   functional record (.func): u32 id_len | id bytes | u32 dim | dim float32
// Normalization stats sidecar: JSON {"mean":[...], "std":[...]}.

struct MelRecord {
  std::string utterance_id;
  MelSpectrogram mel;
};

void write_mel_record(const std::string& path, const std::string& utterance_id,
                      const MelSpectrogram& mel);
MelRecord read_mel_record(const std::string& path);

void write_functional_record(const std::string& path, const std::string& utterance_id,
                             const Eigen::VectorXd& values);
struct FunctionalRecord {
  std::string utterance_id;
  Eigen::VectorXd values;
};
FunctionalRecord read_functional_record(const std::string& path);

void save_normalization_stats(const std::string& path, const NormalizationStats& stats);
NormalizationStats load_normalization_stats(const std::string& path);

}  // namespace strengthnet::audio

#endif  // STRENGTHNET_AUDIO_FEATURE_CACHE_HPP_
