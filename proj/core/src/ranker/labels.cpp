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

#include "strengthnet/ranker/labels.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "strengthnet/common/error.hpp"

namespace strengthnet::ranker {

NormalizeResult normalize_scores(const std::vector<ScoredUtterance>& scored) {
  if (scored.empty()) throw InvalidInput("normalize_scores: empty collection");

  using GroupKey = std::pair<std::string, int>;
  std::map<GroupKey, std::pair<double, double>> extent;  // min, max
  for (const auto& s : scored) {
    const GroupKey key{s.dataset_id, static_cast<int>(s.emotion)};
    auto it = extent.find(key);
    if (it == extent.end()) {
      extent[key] = {s.raw_score, s.raw_score};
    } else {
      it->second.first = std::min(it->second.first, s.raw_score);
      it->second.second = std::max(it->second.second, s.raw_score);
    }
  }

  NormalizeResult result;
  std::map<GroupKey, bool> warned;
  result.labels.reserve(scored.size());
  for (const auto& s : scored) {
    const GroupKey key{s.dataset_id, static_cast<int>(s.emotion)};
    const auto [lo, hi] = extent[key];
    StrengthLabel label;
    label.utterance_id = s.utterance_id;
    label.dataset_id = s.dataset_id;
    label.emotion = s.emotion;
    label.raw_score = s.raw_score;
    if (hi - lo <= 0.0) {
      label.normalized = 0.5;
      if (!warned[key]) {
        warned[key] = true;
        result.warnings.push_back("DegenerateGroup: all raw scores equal in (" +
                                  s.dataset_id + ", " + data::emotion_name(s.emotion) +
                                  "); labels set to 0.5");
      }
    } else {
      label.normalized = (s.raw_score - lo) / (hi - lo);
    }
    result.labels.push_back(std::move(label));
  }
  return result;
}

void save_labels_csv(const std::string& path, const std::vector<StrengthLabel>& labels) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << "utterance_id,dataset_id,emotion,raw_score,normalized\n";
  out.precision(17);
  for (const auto& l : labels) {
    out << l.utterance_id << ',' << l.dataset_id << ',' << data::emotion_name(l.emotion)
        << ',' << l.raw_score << ',' << l.normalized << "\n";
  }
  if (!out) throw InvalidInput("short write: " + path);
}

std::vector<StrengthLabel> load_labels_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open labels csv: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  std::vector<StrengthLabel> labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    StrengthLabel l;
    l.utterance_id = fields[0];
    l.dataset_id = fields[1];
    const auto emotion = data::parse_emotion(fields[2]);
    if (!emotion) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": unknown emotion '" +
                       fields[2] + "'");
    }
    l.emotion = *emotion;
    try {
      l.raw_score = std::stod(fields[3]);
      l.normalized = std::stod(fields[4]);
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": bad numeric field");
    }
    labels.push_back(std::move(l));
  }
  return labels;
}

}  // namespace strengthnet::ranker
