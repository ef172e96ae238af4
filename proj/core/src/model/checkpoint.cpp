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

#include "strengthnet/model/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "strengthnet/common/error.hpp"

namespace strengthnet::model {

namespace {

// Dims reported per tensor name. Conv kernels expand their packed
// (kt*kf*c_in) x c_out layout to rank 4; n x 1 tensors are rank 1.
nlohmann::json tensor_dims(const std::string& name, const Mat& m, const ModelConfig& config,
                           int conv_index) {
  if (name.size() > 7 && name.compare(name.size() - 7, 7, ".kernel") == 0) {
    int c_in = conv_index == 0
                   ? 1
                   : config.block_filters[static_cast<std::size_t>((conv_index - 1) /
                                                                   config.layers_per_block)];
    return {config.kernel_time, config.kernel_freq, c_in, static_cast<int>(m.cols())};
  }
  if (m.cols() == 1) return {static_cast<int>(m.rows())};
  return {static_cast<int>(m.rows()), static_cast<int>(m.cols())};
}

void write_tensor(std::ofstream& out, const Mat& m) {
  std::vector<float> data(static_cast<std::size_t>(m.size()));
  std::size_t idx = 0;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) data[idx++] = static_cast<float>(m(r, c));
  }
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
}

void read_tensor(std::ifstream& in, Mat& m, const std::string& path) {
  std::vector<float> data(static_cast<std::size_t>(m.size()));
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!in) throw ParseError("truncated checkpoint: " + path);
  std::size_t idx = 0;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) m(r, c) = data[idx++];
  }
}

std::int64_t dims_size(const nlohmann::json& dims) {
  std::int64_t n = 1;
  for (const auto& d : dims) n *= d.get<std::int64_t>();
  return n;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);

  // assemble tensor list: params in visit order, then normalization stats
  nlohmann::json tensors = nlohmann::json::array();
  std::vector<const Mat*> payload;
  int conv_index = 0;
  ckpt.params.visit([&](const std::string& name, const Mat& m) {
    nlohmann::json t;
    t["name"] = name;
    const bool is_kernel = name.find(".kernel") != std::string::npos;
    t["dims"] = tensor_dims(name, m, ckpt.params.config, conv_index);
    t["rank"] = t["dims"].size();
    if (is_kernel) ++conv_index;
    tensors.push_back(t);
    payload.push_back(&m);
  });
  Mat norm_mean = ckpt.norm.mean;
  Mat norm_std = ckpt.norm.std;
  for (const auto& [name, mat] : {std::pair<const char*, Mat*>{"norm.mean", &norm_mean},
                                  std::pair<const char*, Mat*>{"norm.std", &norm_std}}) {
    nlohmann::json t;
    t["name"] = name;
    t["dims"] = {static_cast<int>(mat->rows())};
    t["rank"] = 1;
    tensors.push_back(t);
    payload.push_back(mat);
  }

  nlohmann::json header;
  header["config"] = nlohmann::json::parse(ckpt.params.config.to_json());
  header["tensors"] = tensors;
  const std::string header_text = header.dump();

  out.write(kCheckpointMagic, static_cast<std::streamsize>(std::strlen(kCheckpointMagic)));
  out.put('\n');
  const auto header_len = static_cast<std::uint32_t>(header_text.size());
  out.write(reinterpret_cast<const char*>(&header_len), 4);
  out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
  for (const Mat* m : payload) write_tensor(out, *m);
  if (!out) throw InvalidInput("short write: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open checkpoint: " + path);

  std::string magic(std::strlen(kCheckpointMagic), '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  char newline = 0;
  in.get(newline);
  if (!in || magic != kCheckpointMagic || newline != '\n') {
    throw ParseError("not a strengthnet checkpoint: " + path);
  }
  std::uint32_t header_len = 0;
  in.read(reinterpret_cast<char*>(&header_len), 4);
  if (!in || header_len > (1u << 24)) throw ParseError("bad checkpoint header: " + path);
  std::string header_text(header_len, '\0');
  in.read(header_text.data(), header_len);
  if (!in) throw ParseError("truncated checkpoint header: " + path);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad checkpoint json " + path + ": " + e.what());
  }

  Checkpoint ckpt;
  ckpt.params = ModelParams::init(ModelConfig::from_json(header.at("config").dump()), 0);

  // index the expected tensors by name
  std::vector<std::pair<std::string, Mat*>> slots;
  ckpt.params.visit([&slots](const std::string& name, Mat& m) { slots.emplace_back(name, &m); });
  Mat norm_mean;
  Mat norm_std;

  for (const auto& t : header.at("tensors")) {
    const std::string name = t.at("name").get<std::string>();
    const auto& dims = t.at("dims");
    Mat* target = nullptr;
    if (name == "norm.mean") {
      norm_mean.resize(dims.at(0).get<long>(), 1);
      target = &norm_mean;
    } else if (name == "norm.std") {
      norm_std.resize(dims.at(0).get<long>(), 1);
      target = &norm_std;
    } else {
      for (auto& [slot_name, mat] : slots) {
        if (slot_name == name) {
          target = mat;
          break;
        }
      }
      if (target == nullptr) throw ParseError("unexpected tensor '" + name + "' in " + path);
      if (dims_size(dims) != target->size()) {
        throw ParseError("tensor '" + name + "' has wrong size in " + path);
      }
    }
    read_tensor(in, *target, path);
  }
  if (norm_mean.size() == 0 || norm_std.size() == 0) {
    throw ParseError("checkpoint missing normalization stats: " + path);
  }
  ckpt.norm.mean = norm_mean.col(0);
  ckpt.norm.std = norm_std.col(0);
  return ckpt;
}

}  // namespace strengthnet::model
