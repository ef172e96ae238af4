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

#ifndef STRENGTHNET_MODEL_CHECKPOINT_HPP_
#define STRENGTHNET_MODEL_CHECKPOINT_HPP_

#include <string>

#include "strengthnet/audio/mel.hpp"
#include "strengthnet/model/params.hpp"

namespace strengthnet::model {

// Self-describing checkpoint container, little endian:
//   magic line  "STRENGTHNET-CKPT-1\n"
//   u32 header_len, then header_len bytes of JSON:
//     {"config": {...}, "tensors": [{"name": ..., "rank": r, "dims": [...]}]}
//   tensor payloads in listed order, float32 row major
// Conv kernels are stored rank 4 as [kt, kf, c_in, c_out]; matrices rank 2;
// biases rank 1. The mel normalization stats ride along as tensors named
// "norm.mean" / "norm.std" so inference needs no side files.
inline constexpr char kCheckpointMagic[] = "STRENGTHNET-CKPT-1";

struct Checkpoint {
  ModelParams params;
  audio::NormalizationStats norm;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_CHECKPOINT_HPP_
