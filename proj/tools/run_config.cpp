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

#include "run_config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "strengthnet/common/error.hpp"

namespace strengthnet::tools {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (allowed.find(key) == allowed.end()) {
      throw ParseError("run config: unknown key '" + key + "' in " + where);
    }
  }
}

void apply_model(model::ModelConfig* cfg, const json& j) {
  reject_unknown(j,
                 {"mel_channels", "block_filters", "layers_per_block", "layer_strides",
                  "kernel_time", "kernel_freq", "bilstm_cells", "fc_hidden", "dropout_rate",
                  "num_emotions"},
                 "model");
  if (j.contains("mel_channels")) cfg->mel_channels = j["mel_channels"].get<int>();
  if (j.contains("block_filters")) cfg->block_filters = j["block_filters"].get<std::vector<int>>();
  if (j.contains("layers_per_block")) cfg->layers_per_block = j["layers_per_block"].get<int>();
  if (j.contains("layer_strides")) {
    cfg->layer_strides.clear();
    for (const auto& s : j["layer_strides"]) {
      cfg->layer_strides.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
    }
  }
  if (j.contains("kernel_time")) cfg->kernel_time = j["kernel_time"].get<int>();
  if (j.contains("kernel_freq")) cfg->kernel_freq = j["kernel_freq"].get<int>();
  if (j.contains("bilstm_cells")) cfg->bilstm_cells = j["bilstm_cells"].get<int>();
  if (j.contains("fc_hidden")) cfg->fc_hidden = j["fc_hidden"].get<int>();
  if (j.contains("dropout_rate")) cfg->dropout_rate = j["dropout_rate"].get<double>();
  if (j.contains("num_emotions")) cfg->num_emotions = j["num_emotions"].get<int>();
  cfg->validate();
}

void apply_train(train::TrainConfig* cfg, const json& j) {
  reject_unknown(j,
                 {"learning_rate", "beta1", "beta2", "adam_epsilon", "batch_size", "dropout",
                  "patience_epochs", "max_epochs", "rng_seed", "disable_category_loss",
                  "disable_frame_loss"},
                 "train");
  if (j.contains("learning_rate")) cfg->learning_rate = j["learning_rate"].get<double>();
  if (j.contains("beta1")) cfg->beta1 = j["beta1"].get<double>();
  if (j.contains("beta2")) cfg->beta2 = j["beta2"].get<double>();
  if (j.contains("adam_epsilon")) cfg->adam_epsilon = j["adam_epsilon"].get<double>();
  if (j.contains("batch_size")) cfg->batch_size = j["batch_size"].get<int>();
  if (j.contains("dropout")) cfg->dropout = j["dropout"].get<double>();
  if (j.contains("patience_epochs")) cfg->patience_epochs = j["patience_epochs"].get<int>();
  if (j.contains("max_epochs")) cfg->max_epochs = j["max_epochs"].get<int>();
  if (j.contains("rng_seed")) cfg->rng_seed = j["rng_seed"].get<std::uint64_t>();
  if (j.contains("disable_category_loss")) {
    cfg->disable_category_loss = j["disable_category_loss"].get<bool>();
  }
  if (j.contains("disable_frame_loss")) {
    cfg->disable_frame_loss = j["disable_frame_loss"].get<bool>();
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open run config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("bad run config json " + path + ": " + e.what());
  }
  reject_unknown(j, {"corpora", "model", "train", "pools", "out_dir"}, "top level");

  RunConfig cfg;
  if (!j.contains("corpora") || !j["corpora"].is_array() || j["corpora"].empty()) {
    throw ParseError("run config: 'corpora' must be a non-empty array");
  }
  for (const auto& c : j["corpora"]) {
    reject_unknown(c, {"dataset_id", "manifest", "features", "labels", "rankers_dir"},
                   "corpora entry");
    CorpusPaths paths;
    if (c.contains("dataset_id")) paths.dataset_id = c["dataset_id"].get<std::string>();
    if (c.contains("manifest")) paths.manifest = c["manifest"].get<std::string>();
    if (c.contains("features")) paths.features = c["features"].get<std::string>();
    if (c.contains("labels")) paths.labels = c["labels"].get<std::string>();
    if (c.contains("rankers_dir")) paths.rankers_dir = c["rankers_dir"].get<std::string>();
    if (paths.manifest.empty()) throw ParseError("run config: corpus entry missing 'manifest'");
    cfg.corpora.push_back(std::move(paths));
  }
  if (j.contains("model")) apply_model(&cfg.model, j["model"]);
  if (j.contains("train")) apply_train(&cfg.train, j["train"]);
  if (j.contains("pools")) {
    for (const auto& pool : j["pools"]) {
      cfg.pools.push_back(pool.get<std::vector<std::string>>());
    }
  }
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  return cfg;
}

}  // namespace strengthnet::tools
