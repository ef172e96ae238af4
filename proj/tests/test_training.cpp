#include <doctest.h>

#include <cmath>
#include <fstream>

#include "strengthnet/audio/mel.hpp"
#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"
#include "strengthnet/data/split.hpp"
#include "strengthnet/data/synthetic.hpp"
#include "strengthnet/train/early_stopping.hpp"
#include "strengthnet/train/evaluate.hpp"
#include "strengthnet/train/trainer.hpp"
#include "test_util.hpp"

using namespace strengthnet::train;
using strengthnet::InsufficientData;
using strengthnet::InvalidInput;
using strengthnet::MissingLabel;
using strengthnet::Rng;
namespace audio = strengthnet::audio;
namespace data = strengthnet::data;
namespace model = strengthnet::model;
namespace ranker = strengthnet::ranker;

namespace {

model::ModelConfig unit_test_config() {
  model::ModelConfig c;
  c.block_filters = {2, 4};
  c.bilstm_cells = 4;
  c.fc_hidden = 4;
  return c;
}

audio::MelSpectrogram random_mel(long T, std::uint64_t seed) {
  Rng rng(seed);
  audio::MelSpectrogram m;
  m.frames.resize(T, 80);
  for (long t = 0; t < T; ++t) {
    for (int c = 0; c < 80; ++c) m.frames(t, c) = rng.normal();
  }
  return m;
}

// Tiny corpus of real synthesized audio run through the mel front end.
TrainingTable synthetic_table(int per_emotion, std::uint64_t seed) {
  data::SyntheticCorpusParams params;
  params.dataset_id = "unit";
  params.utterances_per_emotion = per_emotion;
  params.duration_lo_s = 0.3;
  params.duration_hi_s = 0.5;
  params.seed = seed;
  const data::SyntheticCorpus corpus = data::plan_synthetic_corpus(params);

  TrainingTable table;
  for (std::size_t i = 0; i < corpus.specs.size(); ++i) {
    const auto& spec = corpus.specs[i];
    if (spec.emotion == data::Emotion::kNeutral) continue;
    TrainingExample ex;
    ex.utterance_id = spec.utterance_id;
    ex.dataset_id = "unit";
    ex.emotion = spec.emotion;
    ex.target_strength = spec.strength;
    ex.mel = audio::mel_spectrogram(data::synthesize_utterance(spec));
    ex.split = corpus.manifest.rows[i].split;
    table.rows.push_back(std::move(ex));
  }
  return table;
}

// Checkpoint that always predicts `alpha` and puts the emotion argmax on
// `emotion_index`.
model::Checkpoint fixed_output_checkpoint(double alpha, int emotion_index) {
  model::Checkpoint ckpt;
  ckpt.params = model::ModelParams::init(unit_test_config(), 1);
  ckpt.params.fc1_weight.setZero();
  ckpt.params.fc1_bias.setZero();
  ckpt.params.fc2_weight.setZero();
  ckpt.params.fc2_bias(0, 0) = alpha;
  ckpt.params.emo_weight.setZero();
  ckpt.params.emo_bias.setZero();
  ckpt.params.emo_bias(emotion_index, 0) = 2.0;
  ckpt.norm.mean = Eigen::VectorXd::Zero(80);
  ckpt.norm.std = Eigen::VectorXd::Ones(80);
  return ckpt;
}

}  // namespace

TEST_CASE("training table counts emotional utterances and skips neutral") {
  data::CorpusManifest m;
  std::vector<ranker::StrengthLabel> labels;
  for (const data::Emotion e : {data::Emotion::kNeutral, data::Emotion::kHappy,
                                data::Emotion::kSad, data::Emotion::kAngry,
                                data::Emotion::kSurprise}) {
    for (int i = 0; i < 2; ++i) {
      data::ManifestRow row;
      row.utterance_id = data::emotion_name(e) + std::to_string(i);
      row.dataset_id = "d";
      row.emotion = e;
      m.rows.push_back(row);
      if (e != data::Emotion::kNeutral) {
        ranker::StrengthLabel l;
        l.utterance_id = row.utterance_id;
        l.dataset_id = "d";
        l.emotion = e;
        l.normalized = 0.5;
        labels.push_back(l);
      }
    }
  }
  const MelLoader loader = [](const data::ManifestRow&) { return random_mel(4, 9); };
  const TrainingTable table = make_training_table(m, labels, loader);
  CHECK(table.rows.size() == 8);  // 4 emotions x 2, neutral excluded
  for (const auto& row : table.rows) CHECK(row.emotion != data::Emotion::kNeutral);

  // missing label -> MissingLabel naming the utterance
  labels.pop_back();
  try {
    make_training_table(m, labels, loader);
    FAIL("expected MissingLabel");
  } catch (const MissingLabel& e) {
    CHECK(std::string(e.what()).find("surprise1") != std::string::npos);
  }
}

TEST_CASE("early stopper follows the patience contract") {
  // patience 1, val MAE improving through epoch 2 then flat: stop at 3
  EarlyStopper stopper(1);
  CHECK(stopper.observe(1, 0.5));
  CHECK_FALSE(stopper.should_stop(1));
  CHECK(stopper.observe(2, 0.4));
  CHECK_FALSE(stopper.should_stop(2));
  CHECK_FALSE(stopper.observe(3, 0.4));  // no strict improvement
  CHECK(stopper.should_stop(3));
  CHECK(stopper.best_epoch() == 2);
  CHECK(stopper.best_value() == 0.4);
}

TEST_CASE("zero learning rate leaves parameters at their init") {
  const TrainingTable table = synthetic_table(3, 5);
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.batch_size = 4;
  cfg.max_epochs = 3;
  cfg.patience_epochs = 30;
  cfg.rng_seed = 77;
  const model::ModelConfig mc = unit_test_config();
  const TrainResult result = train(mc, table, cfg);

  model::ModelConfig expected_cfg = mc;
  expected_cfg.dropout_rate = cfg.dropout;
  const model::ModelParams init = model::ModelParams::init(expected_cfg, cfg.rng_seed);
  std::vector<const model::Mat*> a;
  std::vector<const model::Mat*> b;
  init.visit([&a](const std::string&, const model::Mat& m) { a.push_back(&m); });
  result.best.params.visit([&b](const std::string&, const model::Mat& m) { b.push_back(&m); });
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((*a[i] - *b[i]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("smoke run: loss falls over thirty epochs on a tiny table") {
  const TrainingTable table = synthetic_table(5, 6);  // 20 emotional utterances
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.batch_size = 8;
  cfg.max_epochs = 30;
  cfg.patience_epochs = 30;
  cfg.rng_seed = 13;
  const TrainResult result = train(unit_test_config(), table, cfg);
  REQUIRE(result.log.size() >= 2);
  CHECK(result.log.back().train_total < result.log.front().train_total);
  CHECK(result.best_epoch >= 1);
}

TEST_CASE("training is deterministic per seed") {
  const TrainingTable table = synthetic_table(3, 7);
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.batch_size = 4;
  cfg.max_epochs = 4;
  cfg.rng_seed = 21;
  const TrainResult a = train(unit_test_config(), table, cfg);
  const TrainResult b = train(unit_test_config(), table, cfg);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].val_mae == b.log[i].val_mae);
    CHECK(a.log[i].train_total == b.log[i].train_total);
  }
}

TEST_CASE("disabling the category loss freezes the emotion branch") {
  const TrainingTable table = synthetic_table(3, 8);
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.batch_size = 4;
  cfg.max_epochs = 2;
  cfg.rng_seed = 31;
  cfg.disable_category_loss = true;
  const model::ModelConfig mc = unit_test_config();
  const TrainResult result = train(mc, table, cfg);

  model::ModelConfig expected_cfg = mc;
  expected_cfg.dropout_rate = cfg.dropout;
  const model::ModelParams init = model::ModelParams::init(expected_cfg, cfg.rng_seed);
  // emotion branch parameters saw zero gradient, so they are bit identical
  CHECK((result.best.params.emo_weight - init.emo_weight).cwiseAbs().maxCoeff() == 0.0);
  CHECK((result.best.params.emotion_lstm.forward.w_input - init.emotion_lstm.forward.w_input)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((result.best.params.emotion_lstm.backward.w_recurrent -
         init.emotion_lstm.backward.w_recurrent)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  // but the strength branch moved
  CHECK((result.best.params.fc2_weight - init.fc2_weight).cwiseAbs().maxCoeff() > 0.0);
  // and the log has no accuracy column
  for (const auto& e : result.log) CHECK_FALSE(e.val_acc.has_value());
}

TEST_CASE("train rejects empty subsets") {
  TrainingTable table;
  for (int i = 0; i < 4; ++i) {
    TrainingExample ex;
    ex.utterance_id = "u" + std::to_string(i);
    ex.emotion = data::Emotion::kHappy;
    ex.target_strength = 0.5;
    ex.mel = random_mel(4, static_cast<std::uint64_t>(i));
    ex.split = data::Split::kTrain;  // no val rows
    table.rows.push_back(std::move(ex));
  }
  CHECK_THROWS_AS(train(unit_test_config(), table, TrainConfig{}), InsufficientData);
}

TEST_CASE("evaluate: perfect predictions give zero mae, full accuracy") {
  const model::Checkpoint ckpt = fixed_output_checkpoint(0.42, 1);
  TrainingTable table;
  for (int i = 0; i < 5; ++i) {
    TrainingExample ex;
    ex.utterance_id = "u" + std::to_string(i);
    ex.dataset_id = "d";
    ex.emotion = data::kTrainedEmotions[1];  // matches the forced argmax
    ex.target_strength = 0.42;
    ex.mel = random_mel(6, static_cast<std::uint64_t>(100 + i));
    ex.split = data::Split::kTest;
    table.rows.push_back(std::move(ex));
  }
  const EvalReport report = evaluate_split(ckpt, table, data::Split::kTest);
  CHECK(report.utterance_mae == 0.0);
  REQUIRE(report.ser_accuracy.has_value());
  CHECK(*report.ser_accuracy == 1.0);
}

TEST_CASE("evaluate: single wrong utterance") {
  const model::Checkpoint ckpt = fixed_output_checkpoint(0.4, 0);
  TrainingTable table;
  TrainingExample ex;
  ex.utterance_id = "u";
  ex.dataset_id = "d";
  ex.emotion = data::kTrainedEmotions[2];  // argmax will be wrong
  ex.target_strength = 0.7;
  ex.mel = random_mel(6, 200);
  ex.split = data::Split::kTest;
  table.rows.push_back(std::move(ex));
  const EvalReport report = evaluate_split(ckpt, table, data::Split::kTest);
  CHECK(report.utterance_mae == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(*report.ser_accuracy == 0.0);
}

TEST_CASE("evaluate rejects an empty subset") {
  const model::Checkpoint ckpt = fixed_output_checkpoint(0.5, 0);
  TrainingTable table;
  CHECK_THROWS_AS(evaluate_split(ckpt, table, data::Split::kTest), InvalidInput);
}

TEST_CASE("sanity anchor: constant 0.5 predictor scores about 0.25 mae") {
  const model::Checkpoint ckpt = fixed_output_checkpoint(0.5, 0);
  Rng rng(91);
  TrainingTable table;
  for (int i = 0; i < 200; ++i) {
    TrainingExample ex;
    ex.utterance_id = "u" + std::to_string(i);
    ex.dataset_id = "d";
    ex.emotion = data::kTrainedEmotions[static_cast<int>(rng.below(4))];
    ex.target_strength = rng.uniform();
    ex.mel = random_mel(3, static_cast<std::uint64_t>(300 + i));
    ex.split = data::Split::kTest;
    table.rows.push_back(std::move(ex));
  }
  const EvalReport report = evaluate_split(ckpt, table, data::Split::kTest);
  CHECK(std::abs(report.utterance_mae - 0.25) < 0.05);
}

TEST_CASE("train log serializes one json record per epoch") {
  testutil::TempDir tmp("log");
  std::vector<EpochLog> log(2);
  log[0].epoch = 1;
  log[0].val_mae = 0.5;
  log[0].val_acc = 0.25;
  log[1].epoch = 2;
  log[1].val_mae = 0.4;
  save_train_log(tmp.str("log.jsonl"), log);
  std::ifstream in(tmp.str("log.jsonl"));
  std::string line1, line2;
  REQUIRE(std::getline(in, line1));
  REQUIRE(std::getline(in, line2));
  CHECK(line1.find("\"val_acc\"") != std::string::npos);
  CHECK(line2.find("\"val_acc\"") == std::string::npos);
}
