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
//
// strengthnet command line: feature extraction, ranker training, network
// training, prediction and the evaluation/comparison harnesses.
//
// Exit codes: 0 success, 1 input or validation error, 2 numerical failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_config.hpp"
#include "strengthnet/audio/feature_cache.hpp"
#include "strengthnet/audio/functionals.hpp"
#include "strengthnet/audio/mel.hpp"
#include "strengthnet/audio/resample.hpp"
#include "strengthnet/audio/wav_io.hpp"
#include "strengthnet/common/error.hpp"
#include "strengthnet/data/manifest.hpp"
#include "strengthnet/data/split.hpp"
#include "strengthnet/data/synthetic.hpp"
#include "strengthnet/model/checkpoint.hpp"
#include "strengthnet/model/forward.hpp"
#include "strengthnet/ranker/rank_svm.hpp"
#include "strengthnet/train/evaluate.hpp"
#include "strengthnet/train/experiments.hpp"
#include "strengthnet/train/table.hpp"
#include "strengthnet/train/trainer.hpp"

namespace fs = std::filesystem;
using namespace strengthnet;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNumericalError = 2;

audio::Waveform load_audio_16k(const std::string& path) {
  return audio::resample(audio::read_wav(path), 16000);
}

// ---------------------------------------------------------------- extract

struct ExtractOptions {
  std::string manifest_path;
  std::string out_dir;
  std::string stats_from = "train";
  int jobs = 1;
  bool force = false;
};

int cmd_extract_features(const ExtractOptions& opt) {
  const data::CorpusManifest manifest = data::load_manifest(opt.manifest_path);
  fs::create_directories(fs::path(opt.out_dir) / "mel");
  fs::create_directories(fs::path(opt.out_dir) / "func");

  std::atomic<std::size_t> next{0};
  std::atomic<int> extracted{0};
  std::atomic<int> skipped{0};
  std::mutex error_mutex;
  std::vector<std::string> errors;

  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= manifest.rows.size()) break;
      const auto& row = manifest.rows[i];
      const fs::path mel_path = fs::path(opt.out_dir) / "mel" / (row.utterance_id + ".mel");
      const fs::path func_path = fs::path(opt.out_dir) / "func" / (row.utterance_id + ".func");
      try {
        if (!opt.force && fs::exists(mel_path) && fs::exists(func_path) &&
            fs::exists(row.audio_path) &&
            fs::last_write_time(mel_path) >= fs::last_write_time(row.audio_path) &&
            fs::last_write_time(func_path) >= fs::last_write_time(row.audio_path)) {
          skipped.fetch_add(1);
          continue;
        }
        const audio::Waveform w = load_audio_16k(row.audio_path);
        audio::write_mel_record(mel_path.string(), row.utterance_id,
                                audio::mel_spectrogram(w));
        audio::write_functional_record(func_path.string(), row.utterance_id,
                                       audio::functional_features(w));
        extracted.fetch_add(1);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        errors.push_back(row.utterance_id + " (" + row.audio_path + "): " + e.what());
      }
    }
  };

  const int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    std::cerr << errors.size() << " file(s) failed\n";
    return kExitInputError;
  }

  // normalization stats over the requested split
  std::vector<audio::MelSpectrogram> stat_mels;
  for (const auto& row : manifest.rows) {
    if (opt.stats_from != "all") {
      const auto split = data::parse_split(opt.stats_from);
      if (!split) throw InvalidInput("unknown --stats-from value: " + opt.stats_from);
      if (row.split != *split) continue;
    }
    const fs::path mel_path = fs::path(opt.out_dir) / "mel" / (row.utterance_id + ".mel");
    stat_mels.push_back(audio::read_mel_record(mel_path.string()).mel);
  }
  if (stat_mels.empty()) {
    throw InvalidInput("no utterances in split '" + opt.stats_from +
                       "' to fit normalization stats (use --stats-from all?)");
  }
  audio::save_normalization_stats((fs::path(opt.out_dir) / "stats.json").string(),
                                  audio::fit_normalization(stat_mels));

  std::cout << extracted.load() << " extracted, " << skipped.load() << " skipped\n";
  return kExitOk;
}

// ------------------------------------------------------------- train-ranker

struct TrainRankerOptions {
  std::string manifest_path;
  std::string features_dir;
  std::string out_dir;
  std::string emotion = "all";
  int max_pairs = 2000;
  double c_ordered = 1.0;
  double c_similar = 1.0;
  std::uint64_t seed = 1;
};

train::CorpusData load_corpus_features(const data::CorpusManifest& manifest,
                                       const std::string& features_dir, bool with_mels) {
  train::CorpusData corpus;
  corpus.manifest = manifest;
  corpus.dataset_id = manifest.rows.empty() ? "" : manifest.rows.front().dataset_id;
  for (const auto& row : manifest.rows) {
    const fs::path func_path = fs::path(features_dir) / "func" / (row.utterance_id + ".func");
    corpus.functionals[row.utterance_id] =
        audio::read_functional_record(func_path.string()).values;
    if (with_mels) {
      const fs::path mel_path = fs::path(features_dir) / "mel" / (row.utterance_id + ".mel");
      corpus.mels[row.utterance_id] = audio::read_mel_record(mel_path.string()).mel;
    }
  }
  return corpus;
}

int cmd_train_ranker(const TrainRankerOptions& opt) {
  const data::CorpusManifest manifest = data::load_manifest(opt.manifest_path);
  fs::create_directories(opt.out_dir);

  train::RankerTrainingOptions options;
  options.max_pairs_per_set = opt.max_pairs;
  options.seed = opt.seed;
  options.svm.c_ordered = opt.c_ordered;
  options.svm.c_similar = opt.c_similar;
  if (opt.emotion != "all") {
    const auto emotion = data::parse_emotion(opt.emotion);
    if (!emotion || *emotion == data::Emotion::kNeutral) {
      throw InvalidInput(
          "--emotion must be one of happy, sad, angry, surprise (or use --all-emotions)");
    }
    options.emotions = {*emotion};
  }

  std::vector<ranker::StrengthLabel> all_labels;
  for (const std::string& dataset_id : manifest.dataset_ids()) {
    train::CorpusData corpus = load_corpus_features(manifest.filtered_dataset(dataset_id),
                                                    opt.features_dir, /*with_mels=*/false);
    corpus.dataset_id = dataset_id;
    train::build_corpus_rankers(&corpus, options);
    for (const auto& warning : corpus.warnings) std::cerr << "warning: " << warning << "\n";
    for (const auto& [emotion_value, model] : corpus.rankers) {
      const std::string path =
          (fs::path(opt.out_dir) /
           ("ranker_" + dataset_id + "_" +
            data::emotion_name(static_cast<data::Emotion>(emotion_value)) + ".json"))
              .string();
      ranker::save_ranking_model(path, model);
      std::cout << "wrote " << path << " (objective " << model.objective << ", "
                << (model.converged ? "converged" : "iteration cap") << ")\n";
    }
    all_labels.insert(all_labels.end(), corpus.labels.begin(), corpus.labels.end());
  }
  const std::string labels_path = (fs::path(opt.out_dir) / "labels.csv").string();
  ranker::save_labels_csv(labels_path, all_labels);
  std::cout << "wrote " << labels_path << " (" << all_labels.size() << " labels)\n";
  return kExitOk;
}

// -------------------------------------------------------------------- train

struct TrainCliOptions {
  std::string config_path;
  std::string out_dir;
  std::string ablate = "none";
  std::optional<std::uint64_t> seed;
  std::optional<double> lr;
  std::optional<int> batch_size;
  std::optional<int> max_epochs;
  std::optional<int> patience;
};

train::TrainingTable load_table(const tools::RunConfig& cfg) {
  train::TrainingTable table;
  for (const auto& corpus : cfg.corpora) {
    if (corpus.features.empty() || corpus.labels.empty()) {
      throw InvalidInput("run config: corpus entries need 'features' and 'labels'");
    }
    const data::CorpusManifest manifest = data::load_manifest(corpus.manifest);
    const auto labels = ranker::load_labels_csv(corpus.labels);
    train::TrainingTable part = train::make_training_table(
        manifest, labels, train::mel_cache_loader(corpus.features));
    table.rows.insert(table.rows.end(), std::make_move_iterator(part.rows.begin()),
                      std::make_move_iterator(part.rows.end()));
  }
  return table;
}

int cmd_train(const TrainCliOptions& opt) {
  tools::RunConfig cfg = tools::load_run_config(opt.config_path);
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (cfg.out_dir.empty()) throw InvalidInput("no output directory (set out_dir or --out)");
  if (opt.seed) cfg.train.rng_seed = *opt.seed;
  if (opt.lr) cfg.train.learning_rate = *opt.lr;
  if (opt.batch_size) cfg.train.batch_size = *opt.batch_size;
  if (opt.max_epochs) cfg.train.max_epochs = *opt.max_epochs;
  if (opt.patience) cfg.train.patience_epochs = *opt.patience;
  if (opt.ablate == "no-cat") {
    cfg.train.disable_category_loss = true;
  } else if (opt.ablate == "no-fstr") {
    cfg.train.disable_frame_loss = true;
  } else if (opt.ablate != "none") {
    throw InvalidInput("--ablate must be none, no-cat or no-fstr");
  }

  const train::TrainingTable table = load_table(cfg);
  fs::create_directories(cfg.out_dir);
  train::TrainOutputs outputs;
  outputs.checkpoint_path = (fs::path(cfg.out_dir) / "checkpoint.ckpt").string();
  outputs.log_path = (fs::path(cfg.out_dir) / "train_log.jsonl").string();

  const train::TrainResult result = train::train(cfg.model, table, cfg.train, &outputs);
  std::cout << "best epoch " << result.best_epoch << ", val mae " << result.best_val_mae
            << (result.stopped_early ? " (early stop)" : "") << "\n"
            << "wrote " << outputs.checkpoint_path << "\n"
            << "wrote " << outputs.log_path << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ predict

struct PredictOptions {
  std::string checkpoint_path;
  std::vector<std::string> wav_paths;
  std::string manifest_path;
  std::string out_path;
};

int cmd_predict(const PredictOptions& opt) {
  const model::Checkpoint ckpt = model::load_checkpoint(opt.checkpoint_path);

  std::vector<std::pair<std::string, std::string>> inputs;  // id, path
  for (const auto& p : opt.wav_paths) inputs.emplace_back(fs::path(p).stem().string(), p);
  if (!opt.manifest_path.empty()) {
    for (const auto& row : data::load_manifest(opt.manifest_path).rows) {
      inputs.emplace_back(row.utterance_id, row.audio_path);
    }
  }
  if (inputs.empty()) throw InvalidInput("predict: no inputs (pass wav files or --manifest)");

  std::ofstream file_out;
  if (!opt.out_path.empty()) {
    file_out.open(opt.out_path, std::ios::trunc);
    if (!file_out) throw InvalidInput("cannot open for writing: " + opt.out_path);
  }
  std::ostream& out = opt.out_path.empty() ? std::cout : file_out;

  std::size_t failures = 0;
  for (const auto& [id, path] : inputs) {
    json record;
    record["utterance_id"] = id;
    try {
      const audio::Waveform w = load_audio_16k(path);
      const audio::MelSpectrogram mel =
          audio::apply_normalization(audio::mel_spectrogram(w), ckpt.norm);
      const model::Prediction pred =
          model::predict(ckpt.params, mel.frames, model::full_mask(mel.frames.rows()));
      record["strength"] = pred.utterance_score;
      long argmax = 0;
      pred.emotion_probs.maxCoeff(&argmax);
      record["emotion"] = data::emotion_name(data::kTrainedEmotions[argmax]);
      json probs;
      for (int k = 0; k < data::kNumTrainedEmotions; ++k) {
        probs[data::emotion_name(data::kTrainedEmotions[k])] = pred.emotion_probs(k);
      }
      record["probs"] = probs;
    } catch (const std::exception& e) {
      record["error"] = e.what();
      ++failures;
    }
    out << record.dump() << "\n";
  }
  return failures == inputs.size() ? kExitInputError : kExitOk;
}

// ----------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string checkpoint_path;
  std::string manifest_path;
  std::string features_dir;
  std::string labels_path;
  std::string split = "test";
  std::string out_path;
};

int cmd_evaluate(const EvaluateOptions& opt) {
  const model::Checkpoint ckpt = model::load_checkpoint(opt.checkpoint_path);
  const data::CorpusManifest manifest = data::load_manifest(opt.manifest_path);
  const auto labels = ranker::load_labels_csv(opt.labels_path);
  const train::TrainingTable table = train::make_training_table(
      manifest, labels, train::mel_cache_loader(opt.features_dir));
  const auto split = data::parse_split(opt.split);
  if (!split) throw InvalidInput("unknown --split value: " + opt.split);

  const train::EvalReport report = train::evaluate_split(ckpt, table, *split);
  std::cout << "utterances: " << report.predictions.size() << "\n"
            << "utterance mae: " << report.utterance_mae << "\n";
  if (report.ser_accuracy) std::cout << "ser accuracy: " << *report.ser_accuracy << "\n";
  for (const auto& [corpus, mae] : report.per_corpus_mae) {
    std::cout << "  corpus " << corpus << ": mae " << mae << "\n";
  }
  for (const auto& [emotion, mae] : report.per_emotion_mae) {
    std::cout << "  emotion " << emotion << ": mae " << mae << "\n";
  }
  if (!opt.out_path.empty()) {
    train::save_eval_report_json(opt.out_path, report);
    std::cout << "wrote " << opt.out_path << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------ compare

struct CompareOptions {
  std::string config_path;
  std::string out_path;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
};

train::CorpusData load_full_corpus(const tools::CorpusPaths& paths) {
  if (paths.features.empty() || paths.labels.empty()) {
    throw InvalidInput("compare: corpus entries need 'features' and 'labels'");
  }
  const data::CorpusManifest manifest = data::load_manifest(paths.manifest);
  train::CorpusData corpus =
      load_corpus_features(manifest, paths.features, /*with_mels=*/true);
  if (!paths.dataset_id.empty()) corpus.dataset_id = paths.dataset_id;
  corpus.labels = ranker::load_labels_csv(paths.labels);
  if (!paths.rankers_dir.empty()) {
    for (int e = 0; e < data::kNumTrainedEmotions; ++e) {
      const data::Emotion emotion = data::kTrainedEmotions[e];
      const fs::path path =
          fs::path(paths.rankers_dir) /
          ("ranker_" + corpus.dataset_id + "_" + data::emotion_name(emotion) + ".json");
      if (fs::exists(path)) {
        corpus.rankers[static_cast<int>(emotion)] = ranker::load_ranking_model(path.string());
      }
    }
  }
  return corpus;
}

int cmd_compare(const CompareOptions& opt) {
  const tools::RunConfig cfg = tools::load_run_config(opt.config_path);
  if (cfg.pools.empty()) throw InvalidInput("compare: config needs a 'pools' array");

  std::vector<train::CorpusData> corpora;
  for (const auto& paths : cfg.corpora) corpora.push_back(load_full_corpus(paths));
  std::vector<const train::CorpusData*> corpus_ptrs;
  corpus_ptrs.reserve(corpora.size());
  for (const auto& c : corpora) corpus_ptrs.push_back(&c);

  const train::ComparisonMatrix matrix =
      train::cross_corpus_eval(corpus_ptrs, cfg.pools, opt.seeds, cfg.model, cfg.train);

  std::cout << "method";
  for (const auto& c : matrix.corpora) std::cout << "\t" << c;
  std::cout << "\n";
  for (std::size_t r = 0; r < matrix.methods.size(); ++r) {
    std::cout << matrix.methods[r];
    for (const auto& cell : matrix.cells[r]) {
      if (cell.na) {
        std::cout << "\tNA";
      } else if (cell.runs > 1) {
        std::cout << "\t" << cell.mean << "+-" << cell.stddev;
      } else {
        std::cout << "\t" << cell.mean;
      }
    }
    std::cout << "\n";
  }
  if (!opt.out_path.empty()) {
    train::save_comparison_csv(opt.out_path, matrix);
    std::cout << "wrote " << opt.out_path << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- gen-synth

struct GenSynthOptions {
  std::string out_dir;
  std::string dataset_id = "synthA";
  int per_emotion = 20;
  double f0_lo = 120.0, f0_hi = 260.0;
  double dur_lo = 0.4, dur_hi = 0.8;
  double tilt_lo = 0.0, tilt_hi = 0.0;
  double noise_lo = 1e-4, noise_hi = 1e-4;
  double gain_lo = 1.0, gain_hi = 1.0;
  bool loudness_normalize = false;
  double vib_rate_lo = 5.0, vib_rate_hi = 6.0;
  double am_rate_lo = 2.5, am_rate_hi = 3.5;
  double rate_coupling = 0.0;
  int timbre_voice = 0;
  std::uint64_t seed = 1;
};

int cmd_gen_synth(const GenSynthOptions& opt) {
  data::SyntheticCorpusParams params;
  params.dataset_id = opt.dataset_id;
  params.utterances_per_emotion = opt.per_emotion;
  params.f0_lo_hz = opt.f0_lo;
  params.f0_hi_hz = opt.f0_hi;
  params.duration_lo_s = opt.dur_lo;
  params.duration_hi_s = opt.dur_hi;
  params.tilt_lo = opt.tilt_lo;
  params.tilt_hi = opt.tilt_hi;
  params.noise_lo = opt.noise_lo;
  params.noise_hi = opt.noise_hi;
  params.gain_lo = opt.gain_lo;
  params.gain_hi = opt.gain_hi;
  params.loudness_normalize = opt.loudness_normalize;
  params.vibrato_rate_lo_hz = opt.vib_rate_lo;
  params.vibrato_rate_hi_hz = opt.vib_rate_hi;
  params.am_rate_lo_hz = opt.am_rate_lo;
  params.am_rate_hi_hz = opt.am_rate_hi;
  params.rate_strength_coupling = opt.rate_coupling;
  params.timbre_voice = opt.timbre_voice;
  params.seed = opt.seed;
  const data::SyntheticCorpus corpus = data::write_synthetic_corpus(params, opt.out_dir);
  std::cout << "wrote " << corpus.manifest.rows.size() << " utterances under " << opt.out_dir
            << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- ablate

struct AblateOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_ablate(const AblateOptions& opt) {
  tools::RunConfig cfg = tools::load_run_config(opt.config_path);
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (cfg.out_dir.empty()) throw InvalidInput("no output directory (set out_dir or --out)");
  if (opt.seed) cfg.train.rng_seed = *opt.seed;

  const train::TrainingTable table = load_table(cfg);
  const auto outcomes = train::run_ablation(cfg.model, table, cfg.train);

  fs::create_directories(cfg.out_dir);
  json report = json::array();
  std::cout << "variant\ttest_mae\tser_acc\n";
  for (const auto& outcome : outcomes) {
    json j;
    j["variant"] = outcome.variant;
    j["best_epoch"] = outcome.result.best_epoch;
    j["val_mae"] = outcome.result.best_val_mae;
    j["test_mae"] = outcome.test_report.utterance_mae;
    std::cout << outcome.variant << "\t" << outcome.test_report.utterance_mae << "\t";
    if (outcome.test_report.ser_accuracy) {
      j["ser_accuracy"] = *outcome.test_report.ser_accuracy;
      std::cout << *outcome.test_report.ser_accuracy;
    } else {
      std::cout << "-";
    }
    std::cout << "\n";
    report.push_back(j);
  }
  const std::string path = (fs::path(cfg.out_dir) / "ablation.json").string();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << report.dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- split-manifest

struct SplitOptions {
  std::string manifest_path;
  std::string out_path;
  std::string ratios = "8:1:1";
  std::uint64_t seed = 1;
  bool speaker_disjoint = false;
};

int cmd_split_manifest(const SplitOptions& opt) {
  const data::CorpusManifest manifest = data::load_manifest(opt.manifest_path);
  data::SplitRatios ratios;
  if (std::sscanf(opt.ratios.c_str(), "%d:%d:%d", &ratios.train, &ratios.val, &ratios.test) !=
      3) {
    throw InvalidInput("--ratios must look like 8:1:1");
  }
  const data::CorpusManifest split =
      data::split_manifest(manifest, ratios, opt.seed, opt.speaker_disjoint);
  data::save_manifest(opt.out_path, split);
  std::cout << "wrote " << opt.out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emotion strength assessment toolkit"};
  app.require_subcommand(1);

  ExtractOptions extract_opt;
  auto* extract =
      app.add_subcommand("extract-features", "extract mel spectra and functional vectors");
  extract->add_option("--manifest", extract_opt.manifest_path, "corpus manifest csv")
      ->required();
  extract->add_option("--out", extract_opt.out_dir, "feature cache directory")->required();
  extract->add_option("--stats-from", extract_opt.stats_from,
                      "split for normalization stats (train/val/test/all)");
  extract->add_option("--jobs", extract_opt.jobs, "parallel workers");
  extract->add_flag("--force", extract_opt.force, "re-extract even if up to date");

  TrainRankerOptions ranker_opt;
  auto* train_ranker =
      app.add_subcommand("train-ranker", "learn per-(dataset, emotion) ranking functions");
  train_ranker->add_option("--manifest", ranker_opt.manifest_path, "corpus manifest csv")
      ->required();
  train_ranker->add_option("--features", ranker_opt.features_dir, "feature cache directory")
      ->required();
  train_ranker->add_option("--out", ranker_opt.out_dir, "output directory")->required();
  train_ranker->add_option("--emotion", ranker_opt.emotion,
                           "single emotion (happy/sad/angry/surprise)");
  train_ranker->add_flag_callback(
      "--all-emotions", [&ranker_opt] { ranker_opt.emotion = "all"; },
      "train all four rankers (default)");
  train_ranker->add_option("--max-pairs", ranker_opt.max_pairs, "cap per constraint set");
  train_ranker->add_option("--c-ordered", ranker_opt.c_ordered, "ordered-pair penalty");
  train_ranker->add_option("--c-similar", ranker_opt.c_similar, "similar-pair penalty");
  train_ranker->add_option("--seed", ranker_opt.seed, "pair sampling seed");

  TrainCliOptions train_opt;
  auto* train_cmd = app.add_subcommand("train", "train the assessment network");
  train_cmd->add_option("--config", train_opt.config_path, "run config json")->required();
  train_cmd->add_option("--out", train_opt.out_dir, "output directory (overrides config)");
  train_cmd->add_option("--ablate", train_opt.ablate, "none | no-cat | no-fstr");
  train_cmd->add_option("--seed", train_opt.seed, "training seed");
  train_cmd->add_option("--lr", train_opt.lr, "learning rate");
  train_cmd->add_option("--batch-size", train_opt.batch_size, "batch size");
  train_cmd->add_option("--max-epochs", train_opt.max_epochs, "epoch cap");
  train_cmd->add_option("--patience", train_opt.patience, "early stopping patience");

  PredictOptions predict_opt;
  auto* predict = app.add_subcommand("predict", "predict strength and emotion for audio");
  predict->add_option("--checkpoint", predict_opt.checkpoint_path, "model checkpoint")
      ->required();
  predict->add_option("wavs", predict_opt.wav_paths, "wav files");
  predict->add_option("--manifest", predict_opt.manifest_path, "manifest of inputs");
  predict->add_option("--out", predict_opt.out_path, "output jsonl (default stdout)");

  EvaluateOptions eval_opt;
  auto* evaluate = app.add_subcommand("evaluate", "score a checkpoint against labels");
  evaluate->add_option("--checkpoint", eval_opt.checkpoint_path, "model checkpoint")
      ->required();
  evaluate->add_option("--manifest", eval_opt.manifest_path, "corpus manifest csv")->required();
  evaluate->add_option("--features", eval_opt.features_dir, "feature cache directory")
      ->required();
  evaluate->add_option("--labels", eval_opt.labels_path, "labels csv")->required();
  evaluate->add_option("--split", eval_opt.split, "split to evaluate (default test)");
  evaluate->add_option("--out", eval_opt.out_path, "report json path");

  CompareOptions compare_opt;
  auto* compare = app.add_subcommand(
      "compare", "cross-corpus comparison matrix (rankers vs pooled models)");
  compare->add_option("--config", compare_opt.config_path, "run config json with pools")
      ->required();
  compare->add_option("--out", compare_opt.out_path, "matrix csv path");
  compare->add_option("--seeds", compare_opt.seeds, "training seeds (repeatable)");

  GenSynthOptions synth_opt;
  auto* gen_synth = app.add_subcommand("gen-synth", "generate a synthetic labeled corpus");
  gen_synth->add_option("--out", synth_opt.out_dir, "output directory")->required();
  gen_synth->add_option("--dataset-id", synth_opt.dataset_id, "corpus id");
  gen_synth->add_option("--num-per-emotion", synth_opt.per_emotion, "utterances per emotion");
  gen_synth->add_option("--f0-lo", synth_opt.f0_lo, "lowest base f0 (Hz)");
  gen_synth->add_option("--f0-hi", synth_opt.f0_hi, "highest base f0 (Hz)");
  gen_synth->add_option("--dur-lo", synth_opt.dur_lo, "shortest utterance (s)");
  gen_synth->add_option("--dur-hi", synth_opt.dur_hi, "longest utterance (s)");
  gen_synth->add_option("--tilt-lo", synth_opt.tilt_lo, "per-utterance tilt range, low");
  gen_synth->add_option("--tilt-hi", synth_opt.tilt_hi, "per-utterance tilt range, high");
  gen_synth->add_option("--noise-lo", synth_opt.noise_lo, "per-utterance noise range, low");
  gen_synth->add_option("--noise-hi", synth_opt.noise_hi, "per-utterance noise range, high");
  gen_synth->add_option("--gain-lo", synth_opt.gain_lo, "per-utterance gain range, low");
  gen_synth->add_option("--gain-hi", synth_opt.gain_hi, "per-utterance gain range, high");
  gen_synth->add_flag("--loudness-normalize", synth_opt.loudness_normalize,
                      "rescale each utterance to a fixed rms");
  gen_synth->add_option("--vib-rate-lo", synth_opt.vib_rate_lo, "vibrato rate range, low (Hz)");
  gen_synth->add_option("--vib-rate-hi", synth_opt.vib_rate_hi, "vibrato rate range, high (Hz)");
  gen_synth->add_option("--am-rate-lo", synth_opt.am_rate_lo, "am rate range, low (Hz)");
  gen_synth->add_option("--am-rate-hi", synth_opt.am_rate_hi, "am rate range, high (Hz)");
  gen_synth->add_option("--rate-coupling", synth_opt.rate_coupling,
                        "-1..1: how strongly modulation rates track strength");
  gen_synth->add_option("--timbre-voice", synth_opt.timbre_voice,
                        "emotion template set (0 or 1)");
  gen_synth->add_option("--seed", synth_opt.seed, "corpus seed");

  AblateOptions ablate_opt;
  auto* ablate = app.add_subcommand("ablate", "train full and ablated variants side by side");
  ablate->add_option("--config", ablate_opt.config_path, "run config json")->required();
  ablate->add_option("--out", ablate_opt.out_dir, "output directory (overrides config)");
  ablate->add_option("--seed", ablate_opt.seed, "training seed");

  SplitOptions split_opt;
  auto* split = app.add_subcommand("split-manifest", "assign stratified train/val/test splits");
  split->add_option("--manifest", split_opt.manifest_path, "input manifest csv")->required();
  split->add_option("--out", split_opt.out_path, "output manifest csv")->required();
  split->add_option("--ratios", split_opt.ratios, "train:val:test (default 8:1:1)");
  split->add_option("--seed", split_opt.seed, "split seed");
  split->add_flag("--speaker-disjoint", split_opt.speaker_disjoint,
                  "assign whole speakers to one split");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) return cmd_extract_features(extract_opt);
    if (train_ranker->parsed()) return cmd_train_ranker(ranker_opt);
    if (train_cmd->parsed()) return cmd_train(train_opt);
    if (predict->parsed()) return cmd_predict(predict_opt);
    if (evaluate->parsed()) return cmd_evaluate(eval_opt);
    if (compare->parsed()) return cmd_compare(compare_opt);
    if (gen_synth->parsed()) return cmd_gen_synth(synth_opt);
    if (ablate->parsed()) return cmd_ablate(ablate_opt);
    if (split->parsed()) return cmd_split_manifest(split_opt);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
