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

#ifndef STRENGTHNET_MODEL_CONFIG_HPP_
#define STRENGTHNET_MODEL_CONFIG_HPP_

#include <string>
#include <utility>
#include <vector>

namespace strengthnet::model {

// Architecture of the assessment network: a Conv2D encoder over
// (time, frequency), then a BiLSTM strength head emitting per-frame scores
// pooled to an utterance score, and a BiLSTM emotion head emitting a
// 4-class posterior.
struct ModelConfig {
  int mel_channels = 80;
  std::vector<int> block_filters = {16, 32, 64, 128};
  int layers_per_block = 3;
  // (time, frequency) stride of each layer within a block
  std::vector<std::pair<int, int>> layer_strides = {{1, 1}, {1, 1}, {1, 3}};
  int kernel_time = 3;
  int kernel_freq = 3;
  int bilstm_cells = 128;  // per direction
  int fc_hidden = 128;
  double dropout_rate = 0.3;
  int num_emotions = 4;

  int num_conv_layers() const {
    return static_cast<int>(block_filters.size()) * layers_per_block;
  }
  // Frequency bins remaining after all strided convolutions (same padding,
  // ceil division). 80 -> 27 -> 9 -> 3 -> 1 for the default strides.
  int final_freq_bins() const;
  // Width of the encoder output H: final filters x remaining bins.
  int encoder_output_dim() const;

  // Throws InvalidInput when the configuration is inconsistent.
  void validate() const;

  std::string to_json() const;
  static ModelConfig from_json(const std::string& json_text);
};

// Downsized configuration for gradient checks and fast tests.
ModelConfig tiny_model_config();

}  // namespace strengthnet::model

#endif  // STRENGTHNET_MODEL_CONFIG_HPP_
