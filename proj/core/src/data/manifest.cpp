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

#include "strengthnet/data/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "strengthnet/common/error.hpp"

namespace strengthnet::data {

std::string emotion_name(Emotion e) {
  switch (e) {
    case Emotion::kNeutral: return "neutral";
    case Emotion::kHappy: return "happy";
    case Emotion::kSad: return "sad";
    case Emotion::kAngry: return "angry";
    case Emotion::kSurprise: return "surprise";
  }
  return "unknown";
}

std::optional<Emotion> parse_emotion(const std::string& s) {
  if (s == "neutral") return Emotion::kNeutral;
  if (s == "happy") return Emotion::kHappy;
  if (s == "sad") return Emotion::kSad;
  if (s == "angry") return Emotion::kAngry;
  if (s == "surprise") return Emotion::kSurprise;
  return std::nullopt;
}

int trained_emotion_index(Emotion e) {
  for (int i = 0; i < kNumTrainedEmotions; ++i) {
    if (kTrainedEmotions[i] == e) return i;
  }
  throw InvalidInput("emotion '" + emotion_name(e) + "' is not a trained category");
}

std::string split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
    case Split::kUnassigned: return "unassigned";
  }
  return "unassigned";
}

std::optional<Split> parse_split(const std::string& s) {
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  if (s == "unassigned" || s.empty()) return Split::kUnassigned;
  return std::nullopt;
}

const ManifestRow* CorpusManifest::find(const std::string& utterance_id) const {
  for (const auto& row : rows) {
    if (row.utterance_id == utterance_id) return &row;
  }
  return nullptr;
}

CorpusManifest CorpusManifest::filtered(Split split) const {
  CorpusManifest out;
  for (const auto& row : rows) {
    if (row.split == split) out.rows.push_back(row);
  }
  return out;
}

CorpusManifest CorpusManifest::filtered_dataset(const std::string& dataset_id) const {
  CorpusManifest out;
  for (const auto& row : rows) {
    if (row.dataset_id == dataset_id) out.rows.push_back(row);
  }
  return out;
}

std::vector<std::string> CorpusManifest::dataset_ids() const {
  std::vector<std::string> ids;
  for (const auto& row : rows) {
    if (std::find(ids.begin(), ids.end(), row.dataset_id) == ids.end()) {
      ids.push_back(row.dataset_id);
    }
  }
  return ids;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

constexpr const char* kHeader = "utterance_id,audio_path,dataset_id,emotion,speaker_id,split";

}  // namespace

CorpusManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open manifest: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file (missing header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw ParseError(path + ":1: expected header '" + std::string(kHeader) + "'");
  }

  CorpusManifest m;
  std::unordered_set<std::string> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 6 fields, got " +
                       std::to_string(fields.size()));
    }
    ManifestRow row;
    row.utterance_id = fields[0];
    row.audio_path = fields[1];
    row.dataset_id = fields[2];
    const auto emotion = parse_emotion(fields[3]);
    if (!emotion) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": unknown emotion '" +
                       fields[3] + "'");
    }
    row.emotion = *emotion;
    row.speaker_id = fields[4];
    const auto split = parse_split(fields[5]);
    if (!split) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": unknown split '" +
                       fields[5] + "'");
    }
    row.split = *split;
    if (row.utterance_id.empty()) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": empty utterance_id");
    }
    if (!seen.insert(row.utterance_id).second) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": duplicate utterance_id '" +
                       row.utterance_id + "'");
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

void save_manifest(const std::string& path, const CorpusManifest& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << kHeader << "\n";
  for (const auto& row : m.rows) {
    out << row.utterance_id << ',' << row.audio_path << ',' << row.dataset_id << ','
        << emotion_name(row.emotion) << ',' << row.speaker_id << ','
        << split_name(row.split) << "\n";
  }
  if (!out) throw InvalidInput("short write: " + path);
}

CorpusManifest merge_manifests(const std::vector<CorpusManifest>& manifests) {
  CorpusManifest out;
  std::unordered_set<std::string> seen;
  for (const auto& m : manifests) {
    for (const auto& row : m.rows) {
      if (!seen.insert(row.utterance_id).second) {
        throw InvalidInput("merge_manifests: duplicate utterance_id '" + row.utterance_id + "'");
      }
      out.rows.push_back(row);
    }
  }
  return out;
}

}  // namespace strengthnet::data
