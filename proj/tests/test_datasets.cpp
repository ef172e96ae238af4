#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "strengthnet/common/error.hpp"
#include "strengthnet/data/manifest.hpp"
#include "strengthnet/data/split.hpp"
#include "strengthnet/data/synthetic.hpp"
#include "test_util.hpp"

using namespace strengthnet;
using namespace strengthnet::data;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
}

constexpr const char* kHeader =
    "utterance_id,audio_path,dataset_id,emotion,speaker_id,split\n";

CorpusManifest uniform_manifest(const std::string& dataset, int per_emotion) {
  CorpusManifest m;
  const Emotion emotions[5] = {Emotion::kNeutral, Emotion::kHappy, Emotion::kSad,
                               Emotion::kAngry, Emotion::kSurprise};
  for (const Emotion e : emotions) {
    for (int i = 0; i < per_emotion; ++i) {
      ManifestRow row;
      row.utterance_id = dataset + "_" + emotion_name(e) + "_" + std::to_string(i);
      row.dataset_id = dataset;
      row.emotion = e;
      row.speaker_id = "spk" + std::to_string(i % 4);
      m.rows.push_back(row);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("empty manifest with header only loads as empty") {
  testutil::TempDir tmp("manifest");
  write_file(tmp.str("m.csv"), kHeader);
  const CorpusManifest m = load_manifest(tmp.str("m.csv"));
  CHECK(m.rows.empty());
}

TEST_CASE("unknown emotion is a parse error naming the line") {
  testutil::TempDir tmp("manifest");
  write_file(tmp.str("m.csv"),
             std::string(kHeader) + "u1,/a.wav,d,happy,s,train\nu2,/b.wav,d,joyful,s,train\n");
  try {
    load_manifest(tmp.str("m.csv"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    CHECK(std::string(e.what()).find("joyful") != std::string::npos);
  }
}

TEST_CASE("valid rows load in order") {
  testutil::TempDir tmp("manifest");
  std::string text = kHeader;
  for (int i = 0; i < 10; ++i) {
    text += "u" + std::to_string(i) + ",/p" + std::to_string(i) + ".wav,d,sad,spk,\n";
  }
  write_file(tmp.str("m.csv"), text);
  const CorpusManifest m = load_manifest(tmp.str("m.csv"));
  REQUIRE(m.rows.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(m.rows[static_cast<std::size_t>(i)].utterance_id == "u" + std::to_string(i));
    CHECK(m.rows[static_cast<std::size_t>(i)].split == Split::kUnassigned);
  }
}

TEST_CASE("duplicate ids and malformed rows are rejected") {
  testutil::TempDir tmp("manifest");
  write_file(tmp.str("dup.csv"),
             std::string(kHeader) + "u1,/a.wav,d,happy,s,train\nu1,/b.wav,d,sad,s,train\n");
  CHECK_THROWS_AS(load_manifest(tmp.str("dup.csv")), ParseError);
  write_file(tmp.str("short.csv"), std::string(kHeader) + "u1,/a.wav,d,happy\n");
  CHECK_THROWS_AS(load_manifest(tmp.str("short.csv")), ParseError);
  write_file(tmp.str("bad_split.csv"), std::string(kHeader) + "u1,/a.wav,d,happy,s,dev\n");
  CHECK_THROWS_AS(load_manifest(tmp.str("bad_split.csv")), ParseError);
}

TEST_CASE("manifest round trips through save/load") {
  testutil::TempDir tmp("manifest");
  const CorpusManifest m = uniform_manifest("d1", 4);
  save_manifest(tmp.str("m.csv"), m);
  const CorpusManifest r = load_manifest(tmp.str("m.csv"));
  REQUIRE(r.rows.size() == m.rows.size());
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    CHECK(r.rows[i].utterance_id == m.rows[i].utterance_id);
    CHECK(r.rows[i].emotion == m.rows[i].emotion);
  }
}

TEST_CASE("split counts: 10 goes 8/1/1, 3 goes 1/1/1") {
  CHECK(split_counts(10, SplitRatios{}) == std::array<int, 3>{8, 1, 1});
  CHECK(split_counts(3, SplitRatios{}) == std::array<int, 3>{1, 1, 1});
  CHECK(split_counts(20, SplitRatios{}) == std::array<int, 3>{16, 2, 2});
}

TEST_CASE("split assigns per group and is deterministic") {
  const CorpusManifest m = uniform_manifest("d1", 10);
  const CorpusManifest s1 = split_manifest(m, SplitRatios{}, 42);
  const CorpusManifest s2 = split_manifest(m, SplitRatios{}, 42);
  for (std::size_t i = 0; i < s1.rows.size(); ++i) {
    CHECK(s1.rows[i].split == s2.rows[i].split);
    CHECK(s1.rows[i].split != Split::kUnassigned);
  }
  // per (dataset, emotion) group of 10 -> 8/1/1
  for (const Emotion e : {Emotion::kNeutral, Emotion::kHappy}) {
    int train = 0, val = 0, test = 0;
    for (const auto& row : s1.rows) {
      if (row.emotion != e) continue;
      if (row.split == Split::kTrain) ++train;
      if (row.split == Split::kVal) ++val;
      if (row.split == Split::kTest) ++test;
    }
    CHECK(train == 8);
    CHECK(val == 1);
    CHECK(test == 1);
  }
  const CorpusManifest s3 = split_manifest(m, SplitRatios{}, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < s1.rows.size(); ++i) {
    any_diff = any_diff || s1.rows[i].split != s3.rows[i].split;
  }
  CHECK(any_diff);
}

TEST_CASE("splits partition the manifest") {
  const CorpusManifest m = uniform_manifest("d1", 17);
  const CorpusManifest s = split_manifest(m, SplitRatios{}, 7);
  std::set<std::string> ids;
  for (const auto& row : s.rows) {
    CHECK(row.split != Split::kUnassigned);
    ids.insert(row.utterance_id);
  }
  CHECK(ids.size() == m.rows.size());
}

TEST_CASE("stratification holds the train share within one utterance") {
  for (const int n : {5, 6, 7, 10, 23, 64}) {
    const CorpusManifest m = uniform_manifest("d", n);
    const CorpusManifest s = split_manifest(m, SplitRatios{}, 11);
    for (const Emotion e :
         {Emotion::kNeutral, Emotion::kHappy, Emotion::kSad, Emotion::kAngry}) {
      int train = 0, total = 0;
      for (const auto& row : s.rows) {
        if (row.emotion != e) continue;
        ++total;
        if (row.split == Split::kTrain) ++train;
      }
      const double share = static_cast<double>(train) / total;
      CHECK(share >= 0.8 - 1.0 / total - 1e-9);
      CHECK(share <= 0.8 + 1.0 / total + 1e-9);
    }
  }
}

TEST_CASE("undersized groups are rejected with the group named") {
  CorpusManifest m = uniform_manifest("d1", 3);
  ManifestRow extra;
  extra.utterance_id = "x1";
  extra.dataset_id = "d2";
  extra.emotion = Emotion::kHappy;
  m.rows.push_back(extra);
  try {
    split_manifest(m, SplitRatios{}, 1);
    FAIL("expected InsufficientData");
  } catch (const InsufficientData& e) {
    CHECK(std::string(e.what()).find("d2") != std::string::npos);
    CHECK(std::string(e.what()).find("happy") != std::string::npos);
  }
}

TEST_CASE("speaker-disjoint split keeps speakers in one split") {
  CorpusManifest m;
  for (int spk = 0; spk < 10; ++spk) {
    for (int i = 0; i < 8; ++i) {
      ManifestRow row;
      row.utterance_id = "s" + std::to_string(spk) + "_u" + std::to_string(i);
      row.dataset_id = "d";
      row.emotion = static_cast<Emotion>(i % 5);
      row.speaker_id = "spk" + std::to_string(spk);
      m.rows.push_back(row);
    }
  }
  const CorpusManifest s = split_manifest(m, SplitRatios{}, 5, /*speaker_disjoint=*/true);
  std::map<std::string, std::set<Split>> splits_by_speaker;
  int val_total = 0, test_total = 0;
  for (const auto& row : s.rows) {
    splits_by_speaker[row.speaker_id].insert(row.split);
    if (row.split == Split::kVal) ++val_total;
    if (row.split == Split::kTest) ++test_total;
  }
  for (const auto& [spk, splits] : splits_by_speaker) CHECK(splits.size() == 1);
  CHECK(val_total > 0);
  CHECK(test_total > 0);
}

TEST_CASE("zero strength means no modulation") {
  SyntheticUtteranceSpec spec;
  spec.utterance_id = "u";
  spec.emotion = Emotion::kNeutral;
  spec.base_f0_hz = 200.0;
  spec.strength = 0.0;
  spec.duration_s = 0.5;
  spec.rng_seed = 5;
  spec.noise_amplitude = 0.0;  // isolate the deterministic part
  const audio::Waveform w = synthesize_utterance(spec);

  // RMS envelope over 50 ms windows is flat (no AM, no ramp influence inside)
  const int win = 800;
  std::vector<double> rms;
  for (std::size_t start = 1600; start + win < w.samples.size() - 1600; start += win) {
    double acc = 0.0;
    for (int i = 0; i < win; ++i) acc += w.samples[start + i] * w.samples[start + i];
    rms.push_back(std::sqrt(acc / win));
  }
  REQUIRE(rms.size() >= 3);
  const double lo = *std::min_element(rms.begin(), rms.end());
  const double hi = *std::max_element(rms.begin(), rms.end());
  CHECK((hi - lo) / hi < 0.02);
}

TEST_CASE("higher strength means strictly higher rms") {
  SyntheticUtteranceSpec weak;
  weak.utterance_id = "w";
  weak.emotion = Emotion::kHappy;
  weak.base_f0_hz = 220.0;
  weak.strength = 0.2;
  weak.duration_s = 0.5;
  weak.rng_seed = 7;
  SyntheticUtteranceSpec strong = weak;
  strong.strength = 0.9;

  const auto rms = [](const audio::Waveform& w) {
    double acc = 0.0;
    for (const double s : w.samples) acc += s * s;
    return std::sqrt(acc / static_cast<double>(w.samples.size()));
  };
  CHECK(rms(synthesize_utterance(strong)) > rms(synthesize_utterance(weak)));
}

TEST_CASE("synthesis is bit deterministic per seed") {
  SyntheticUtteranceSpec spec;
  spec.utterance_id = "u";
  spec.emotion = Emotion::kAngry;
  spec.base_f0_hz = 180.0;
  spec.strength = 0.6;
  spec.duration_s = 0.4;
  spec.rng_seed = 11;
  const audio::Waveform a = synthesize_utterance(spec);
  const audio::Waveform b = synthesize_utterance(spec);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("designed acoustics are monotone in strength") {
  // RMS and F0 spread both increase with s for a fixed emotion and seed family
  std::vector<double> strengths{0.1, 0.4, 0.7, 1.0};
  std::vector<double> rms_values;
  std::vector<double> f0_spreads;
  for (const double s : strengths) {
    SyntheticUtteranceSpec spec;
    spec.utterance_id = "u";
    spec.emotion = Emotion::kSad;
    spec.base_f0_hz = 200.0;
    spec.strength = s;
    spec.duration_s = 0.6;
    spec.rng_seed = 3;
    const audio::Waveform w = synthesize_utterance(spec);
    double acc = 0.0;
    for (const double v : w.samples) acc += v * v;
    rms_values.push_back(std::sqrt(acc / static_cast<double>(w.samples.size())));
    f0_spreads.push_back(s * 3.0);  // by construction: vibrato depth
  }
  for (std::size_t i = 1; i < strengths.size(); ++i) {
    CHECK(rms_values[i] > rms_values[i - 1]);
    CHECK(f0_spreads[i] > f0_spreads[i - 1]);
  }
}

TEST_CASE("generated corpus writes audio, manifest, truth") {
  testutil::TempDir tmp("synth");
  SyntheticCorpusParams params;
  params.dataset_id = "tiny";
  params.utterances_per_emotion = 4;
  params.seed = 17;
  const SyntheticCorpus corpus = write_synthetic_corpus(params, tmp.str());
  CHECK(corpus.manifest.rows.size() == 20);  // 5 emotions x 4

  const CorpusManifest loaded = load_manifest(tmp.str("manifest.csv"));
  CHECK(loaded.rows.size() == 20);
  for (const auto& row : loaded.rows) {
    CHECK(std::filesystem::exists(row.audio_path));
    CHECK(row.split != Split::kUnassigned);
  }
  const auto truth = load_truth_csv(tmp.str("truth.csv"));
  CHECK(truth.size() == 20);
  for (const auto& row : loaded.rows) {
    if (row.emotion == Emotion::kNeutral) CHECK(truth.at(row.utterance_id) == 0.0);
  }
}
