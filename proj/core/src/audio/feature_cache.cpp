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

#include "strengthnet/audio/feature_cache.hpp"

#include <cstdint>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "strengthnet/common/error.hpp"

namespace strengthnet::audio {

namespace {

void write_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t read_u32(std::ifstream& in, const std::string& path) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  if (!in) throw ParseError("truncated record: " + path);
  return v;
}

std::string read_id(std::ifstream& in, const std::string& path) {
  const std::uint32_t len = read_u32(in, path);
  if (len > (1u << 20)) throw ParseError("implausible id length: " + path);
  std::string id(len, '\0');
  in.read(id.data(), len);
  if (!in) throw ParseError("truncated record: " + path);
  return id;
}

}  // namespace

void write_mel_record(const std::string& path, const std::string& utterance_id,
                      const MelSpectrogram& mel) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  write_u32(out, static_cast<std::uint32_t>(utterance_id.size()));
  out.write(utterance_id.data(), static_cast<std::streamsize>(utterance_id.size()));
  const auto rows = static_cast<std::uint32_t>(mel.frames.rows());
  const auto cols = static_cast<std::uint32_t>(mel.frames.cols());
  write_u32(out, rows);
  write_u32(out, cols);
  std::vector<float> data(static_cast<std::size_t>(rows) * cols);
  for (std::uint32_t t = 0; t < rows; ++t) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      data[static_cast<std::size_t>(t) * cols + c] = static_cast<float>(mel.frames(t, c));
    }
  }
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!out) throw InvalidInput("short write: " + path);
}

MelRecord read_mel_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open mel record: " + path);
  MelRecord rec;
  rec.utterance_id = read_id(in, path);
  const std::uint32_t rows = read_u32(in, path);
  const std::uint32_t cols = read_u32(in, path);
  std::vector<float> data(static_cast<std::size_t>(rows) * cols);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!in) throw ParseError("truncated mel record: " + path);
  rec.mel.frames.resize(rows, cols);
  for (std::uint32_t t = 0; t < rows; ++t) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      rec.mel.frames(t, c) = data[static_cast<std::size_t>(t) * cols + c];
    }
  }
  return rec;
}

void write_functional_record(const std::string& path, const std::string& utterance_id,
                             const Eigen::VectorXd& values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  write_u32(out, static_cast<std::uint32_t>(utterance_id.size()));
  out.write(utterance_id.data(), static_cast<std::streamsize>(utterance_id.size()));
  write_u32(out, static_cast<std::uint32_t>(values.size()));
  std::vector<float> data(static_cast<std::size_t>(values.size()));
  for (long i = 0; i < values.size(); ++i) data[static_cast<std::size_t>(i)] = static_cast<float>(values(i));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!out) throw InvalidInput("short write: " + path);
}

FunctionalRecord read_functional_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open functional record: " + path);
  FunctionalRecord rec;
  rec.utterance_id = read_id(in, path);
  const std::uint32_t dim = read_u32(in, path);
  std::vector<float> data(dim);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!in) throw ParseError("truncated functional record: " + path);
  rec.values.resize(dim);
  for (std::uint32_t i = 0; i < dim; ++i) rec.values(i) = data[i];
  return rec;
}

void save_normalization_stats(const std::string& path, const NormalizationStats& stats) {
  nlohmann::json j;
  j["mean"] = std::vector<double>(stats.mean.data(), stats.mean.data() + stats.mean.size());
  j["std"] = std::vector<double>(stats.std.data(), stats.std.data() + stats.std.size());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

NormalizationStats load_normalization_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open stats file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad stats json " + path + ": " + e.what());
  }
  NormalizationStats stats;
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto sd = j.at("std").get<std::vector<double>>();
  if (mean.size() != sd.size()) throw ParseError("stats size mismatch: " + path);
  stats.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<long>(mean.size()));
  stats.std = Eigen::Map<const Eigen::VectorXd>(sd.data(), static_cast<long>(sd.size()));
  return stats;
}

}  // namespace strengthnet::audio
