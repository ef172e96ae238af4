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

#include "strengthnet/model/config.hpp"

#include <json.hpp>

#include "strengthnet/common/error.hpp"

namespace strengthnet::model {

int ModelConfig::final_freq_bins() const {
  int f = mel_channels;
  for (std::size_t b = 0; b < block_filters.size(); ++b) {
    for (const auto& [st, sf] : layer_strides) {
      f = (f + sf - 1) / sf;  // ceil division, same padding
    }
  }
  return f;
}

int ModelConfig::encoder_output_dim() const {
  return block_filters.back() * final_freq_bins();
}

void ModelConfig::validate() const {
  if (mel_channels <= 0) throw InvalidInput("config: mel_channels must be positive");
  if (block_filters.empty()) throw InvalidInput("config: block_filters empty");
  for (const int f : block_filters) {
    if (f <= 0) throw InvalidInput("config: filter counts must be positive");
  }
  if (layers_per_block <= 0) throw InvalidInput("config: layers_per_block must be positive");
  if (static_cast<int>(layer_strides.size()) != layers_per_block) {
    throw InvalidInput("config: layer_strides must have layers_per_block entries");
  }
  for (const auto& [st, sf] : layer_strides) {
    if (st != 1) throw InvalidInput("config: time stride must be 1 to keep frame scores");
    if (sf <= 0) throw InvalidInput("config: frequency stride must be positive");
  }
  if (kernel_time <= 0 || kernel_time % 2 == 0 || kernel_freq <= 0 || kernel_freq % 2 == 0) {
    throw InvalidInput("config: kernels must be odd sized");
  }
  if (bilstm_cells <= 0) throw InvalidInput("config: bilstm_cells must be positive");
  if (fc_hidden <= 0) throw InvalidInput("config: fc_hidden must be positive");
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
    throw InvalidInput("config: dropout_rate must be in [0,1)");
  }
  if (num_emotions <= 1) throw InvalidInput("config: num_emotions must be > 1");
}

std::string ModelConfig::to_json() const {
  nlohmann::json j;
  j["mel_channels"] = mel_channels;
  j["block_filters"] = block_filters;
  j["layers_per_block"] = layers_per_block;
  nlohmann::json strides = nlohmann::json::array();
  for (const auto& [st, sf] : layer_strides) strides.push_back({st, sf});
  j["layer_strides"] = strides;
  j["kernel_time"] = kernel_time;
  j["kernel_freq"] = kernel_freq;
  j["bilstm_cells"] = bilstm_cells;
  j["fc_hidden"] = fc_hidden;
  j["dropout_rate"] = dropout_rate;
  j["num_emotions"] = num_emotions;
  return j.dump();
}

ModelConfig ModelConfig::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model config json: ") + e.what());
  }
  ModelConfig c;
  c.mel_channels = j.at("mel_channels").get<int>();
  c.block_filters = j.at("block_filters").get<std::vector<int>>();
  c.layers_per_block = j.at("layers_per_block").get<int>();
  c.layer_strides.clear();
  for (const auto& s : j.at("layer_strides")) {
    c.layer_strides.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
  }
  c.kernel_time = j.at("kernel_time").get<int>();
  c.kernel_freq = j.at("kernel_freq").get<int>();
  c.bilstm_cells = j.at("bilstm_cells").get<int>();
  c.fc_hidden = j.at("fc_hidden").get<int>();
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.num_emotions = j.at("num_emotions").get<int>();
  c.validate();
  return c;
}

ModelConfig tiny_model_config() {
  ModelConfig c;
  c.block_filters = {4, 8, 16, 32};
  c.bilstm_cells = 16;
  c.fc_hidden = 16;
  return c;
}

}  // namespace strengthnet::model
