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

#ifndef STRENGTHNET_TOOLS_RUN_CONFIG_HPP_
#define STRENGTHNET_TOOLS_RUN_CONFIG_HPP_

#include <string>
#include <vector>

#include "strengthnet/model/config.hpp"
#include "strengthnet/train/trainer.hpp"

namespace strengthnet::tools {

struct CorpusPaths {
  std::string dataset_id;  // optional; defaults to the manifest's dataset ids
  std::string manifest;
  std::string features;
  std::string labels;
  std::string rankers_dir;  // used by compare
};

// One experiment config file: corpus paths plus model/train overrides.
// Key-value JSON; unknown keys are rejected so typos fail loudly. Command
// line flags override file values.
struct RunConfig {
  std::vector<CorpusPaths> corpora;
  model::ModelConfig model;
  train::TrainConfig train;
  std::vector<std::vector<std::string>> pools;  // compare only
  std::string out_dir;
};

RunConfig load_run_config(const std::string& path);

}  // namespace strengthnet::tools

#endif  // STRENGTHNET_TOOLS_RUN_CONFIG_HPP_
