#include <doctest.h>

#include <cmath>

#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"
#include "strengthnet/model/backward.hpp"
#include "strengthnet/model/checkpoint.hpp"
#include "strengthnet/model/forward.hpp"
#include "strengthnet/model/loss.hpp"
#include "test_util.hpp"

using namespace strengthnet;
using namespace strengthnet::model;

namespace {

// Independent shape walker: parameter count from config arithmetic alone.
long long walk_parameter_count(const ModelConfig& c) {
  long long total = 0;
  int c_in = 1;
  for (const int filters : c.block_filters) {
    for (int l = 0; l < c.layers_per_block; ++l) {
      total += static_cast<long long>(c.kernel_time) * c.kernel_freq * c_in * filters + filters;
      c_in = filters;
    }
  }
  int f = c.mel_channels;
  for (std::size_t b = 0; b < c.block_filters.size(); ++b) {
    for (const auto& [st, sf] : c.layer_strides) f = (f + sf - 1) / sf;
  }
  const long long enc = static_cast<long long>(c.block_filters.back()) * f;
  const long long h = c.bilstm_cells;
  const long long per_dir = enc * 4 * h + h * 4 * h + 4 * h;
  total += 4 * per_dir;  // two BiLSTMs, two directions each
  total += 2 * h * c.fc_hidden + c.fc_hidden;  // fc1
  total += c.fc_hidden + 1;                    // fc2
  total += 2 * h * c.num_emotions + c.num_emotions;
  return total;
}

Mat random_mel(long T, int channels, std::uint64_t seed) {
  Rng rng(seed);
  Mat m(T, channels);
  for (long t = 0; t < T; ++t) {
    for (int c = 0; c < channels; ++c) m(t, c) = rng.normal();
  }
  return m;
}

ModelConfig gradcheck_config() {
  ModelConfig c;
  c.mel_channels = 8;
  c.block_filters = {2, 4};
  c.bilstm_cells = 3;
  c.fc_hidden = 4;
  c.dropout_rate = 0.0;
  return c;
}

Eigen::VectorXd one_hot4(int k) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
  y(k) = 1.0;
  return y;
}

double loss_at(const ModelParams& params, const Mat& mel, const Eigen::ArrayXd& mask,
               double target, const Eigen::VectorXd& y, const LossWeights& weights) {
  const auto cache = forward_training(params, mel, mask, DropoutSpec{});
  return weighted_total(compute_loss(cache.prediction, target, y, mask), weights);
}

}  // namespace

TEST_CASE("init is deterministic per seed") {
  const ModelConfig cfg = tiny_model_config();
  const ModelParams a = ModelParams::init(cfg, 5);
  const ModelParams b = ModelParams::init(cfg, 5);
  std::vector<const Mat*> ta;
  std::vector<const Mat*> tb;
  a.visit([&ta](const std::string&, const Mat& m) { ta.push_back(&m); });
  b.visit([&tb](const std::string&, const Mat& m) { tb.push_back(&m); });
  REQUIRE(ta.size() == tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    CHECK((*ta[i] - *tb[i]).cwiseAbs().maxCoeff() == 0.0);
  }
  const ModelParams c = ModelParams::init(cfg, 6);
  CHECK((a.conv[0].kernel - c.conv[0].kernel).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("parameter count matches the frozen shape-walker value") {
  const ModelConfig cfg;  // paper-scale default
  CHECK(walk_parameter_count(cfg) == 1049701);  // frozen
  const ModelParams params = ModelParams::init(cfg, 1);
  CHECK(params.parameter_count() == 1049701);

  const ModelConfig tiny = tiny_model_config();
  CHECK(ModelParams::init(tiny, 1).parameter_count() == walk_parameter_count(tiny));
}

TEST_CASE("bias init: zeros everywhere, ones on LSTM forget gates") {
  const ModelParams p = ModelParams::init(tiny_model_config(), 3);
  for (const auto& conv : p.conv) CHECK(conv.bias.cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.fc1_bias.cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.fc2_bias.cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.emo_bias.cwiseAbs().maxCoeff() == 0.0);
  const int h = p.config.bilstm_cells;
  for (const auto* lstm : {&p.strength_lstm, &p.emotion_lstm}) {
    for (const auto* dir : {&lstm->forward, &lstm->backward}) {
      CHECK(dir->bias.block(0, 0, h, 1).cwiseAbs().maxCoeff() == 0.0);
      CHECK(dir->bias.block(h, 0, h, 1).minCoeff() == 1.0);
      CHECK(dir->bias.block(h, 0, h, 1).maxCoeff() == 1.0);
      CHECK(dir->bias.block(2 * h, 0, 2 * h, 1).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("encoder output is T x 128 for the default architecture") {
  const ModelConfig cfg;  // 80 -> 27 -> 9 -> 3 -> 1
  CHECK(cfg.final_freq_bins() == 1);
  CHECK(cfg.encoder_output_dim() == 128);
  const ModelParams params = ModelParams::init(cfg, 1);
  const Mat mel = random_mel(77, 80, 9);
  const Mat h = encoder_forward(params, mel, full_mask(77));
  CHECK(h.rows() == 77);
  CHECK(h.cols() == 128);
}

TEST_CASE("zero input with zero biases encodes to zero") {
  const ModelParams params = ModelParams::init(tiny_model_config(), 2);
  const Mat mel = Mat::Zero(6, 80);
  const Mat h = encoder_forward(params, mel, full_mask(6));
  CHECK(h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("encoder agreement is limited by the temporal receptive field") {
  const ModelConfig cfg = tiny_model_config();  // 12 layers -> half-width 12
  const ModelParams params = ModelParams::init(cfg, 4);
  const long T = 40;
  const long t_agree = 30;
  Mat mel_a = random_mel(T, 80, 11);
  Mat mel_b = mel_a;
  for (long t = t_agree; t < T; ++t) mel_b.row(t).setConstant(0.5);

  const Mat ha = encoder_forward(params, mel_a, full_mask(T));
  const Mat hb = encoder_forward(params, mel_b, full_mask(T));
  const int k = 12;
  for (long t = 0; t < t_agree - k; ++t) {
    CHECK((ha.row(t) - hb.row(t)).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK((ha.bottomRows(5) - hb.bottomRows(5)).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("wrong channel count is rejected") {
  const ModelParams params = ModelParams::init(tiny_model_config(), 2);
  CHECK_THROWS_AS(encoder_forward(params, random_mel(5, 40, 1), full_mask(5)), InvalidInput);
}

TEST_CASE("forced-constant frame scores pool to exactly that constant") {
  ModelConfig cfg = tiny_model_config();
  ModelParams params = ModelParams::init(cfg, 7);
  // zero the whole strength head except a bias on FC2
  params.fc1_weight.setZero();
  params.fc1_bias.setZero();
  params.fc2_weight.setZero();
  const double c = 0.37;
  params.fc2_bias(0, 0) = c;

  const Mat mel = random_mel(9, 80, 21);
  const Mat h = encoder_forward(params, mel, full_mask(9));
  const StrengthHeadResult s = strength_forward(params, h, full_mask(9));
  for (long t = 0; t < 9; ++t) CHECK(s.frame_scores(t) == c);
  CHECK(s.utterance_score == c);
}

TEST_CASE("utterance score is exactly the masked mean of frame scores") {
  const ModelParams params = ModelParams::init(tiny_model_config(), 8);
  const long T = 12;
  const Mat mel = random_mel(T, 80, 22);
  Eigen::ArrayXd mask = Eigen::ArrayXd::Ones(T);
  mask(9) = 0.0;
  mask(10) = 0.0;
  mask(11) = 0.0;
  Mat padded = mel;
  padded.bottomRows(3).setZero();
  const Mat h = encoder_forward(params, padded, mask);
  const StrengthHeadResult s = strength_forward(params, h, mask);
  CHECK(s.hidden.rows() == T);
  CHECK(s.hidden.cols() == 2 * params.config.bilstm_cells);
  for (long t = 0; t < T; ++t) {
    if (mask(t) != 1.0) CHECK(s.frame_scores(t) == 0.0);
  }
  // pooling identity, bit exact against the shared mean
  CHECK(s.utterance_score == masked_mean(s.frame_scores, mask));
}

TEST_CASE("zeroed emotion projection gives the uniform posterior") {
  ModelParams params = ModelParams::init(tiny_model_config(), 9);
  params.emo_weight.setZero();
  params.emo_bias.setZero();
  const Mat mel = random_mel(7, 80, 23);
  const Mat h = encoder_forward(params, mel, full_mask(7));
  const EmotionHeadResult e = emotion_forward(params, h, full_mask(7));
  for (int k = 0; k < 4; ++k) CHECK(e.probs(k) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("posterior sums to one and ignores logit shifts") {
  ModelParams params = ModelParams::init(tiny_model_config(), 10);
  const Mat mel = random_mel(8, 80, 24);
  const Mat h = encoder_forward(params, mel, full_mask(8));
  const EmotionHeadResult e1 = emotion_forward(params, h, full_mask(8));
  CHECK(std::abs(e1.probs.sum() - 1.0) < 1e-6);
  for (int k = 0; k < 4; ++k) CHECK(e1.probs(k) >= 0.0);

  params.emo_bias.array() += 3.7;  // constant shift on all logits
  const EmotionHeadResult e2 = emotion_forward(params, h, full_mask(8));
  CHECK((e1.probs - e2.probs).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("loss of a perfect prediction is zero") {
  Prediction p;
  p.frame_scores = Eigen::VectorXd::Constant(5, 0.6);
  p.utterance_score = 0.6;
  p.emotion_probs = Eigen::VectorXd::Zero(4);
  p.emotion_probs(2) = 1.0;
  const LossBreakdown l = compute_loss(p, 0.6, one_hot4(2), full_mask(5));
  CHECK(l.frame_mae == 0.0);
  CHECK(l.utterance_mae == 0.0);
  CHECK(l.category_ce <= 1e-6);
}

TEST_CASE("loss hand arithmetic: frames {0.2,0.4}, target 0.3, uniform posterior") {
  Prediction p;
  p.frame_scores = Eigen::VectorXd(2);
  p.frame_scores << 0.2, 0.4;
  p.utterance_score = 0.3;  // mean of the two
  p.emotion_probs = Eigen::VectorXd::Constant(4, 0.25);
  const LossBreakdown l = compute_loss(p, 0.3, one_hot4(1), full_mask(2));
  CHECK(l.frame_mae == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(l.utterance_mae == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(l.category_ce == doctest::Approx(std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("loss total is exactly the component sum") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Prediction p;
    const long T = 3 + static_cast<long>(rng.below(5));
    p.frame_scores = Eigen::VectorXd::Zero(T);
    for (long t = 0; t < T; ++t) p.frame_scores(t) = rng.uniform(-0.5, 1.5);
    p.utterance_score = p.frame_scores.mean();
    Eigen::VectorXd raw(4);
    for (int k = 0; k < 4; ++k) raw(k) = rng.uniform(0.01, 1.0);
    p.emotion_probs = raw / raw.sum();
    const LossBreakdown l =
        compute_loss(p, rng.uniform(), one_hot4(static_cast<int>(rng.below(4))), full_mask(T));
    CHECK(l.total == l.frame_mae + l.utterance_mae + l.category_ce);
  }
}

TEST_CASE("analytic gradients match central finite differences") {
  const ModelConfig cfg = gradcheck_config();
  ModelParams params = ModelParams::init(cfg, 13);
  const long T = 5;
  const Mat mel = random_mel(T, cfg.mel_channels, 41);
  const Eigen::ArrayXd mask = full_mask(T);
  const double target = 0.37;
  const Eigen::VectorXd y = one_hot4(2);
  const LossWeights weights;

  const auto cache = forward_training(params, mel, mask, DropoutSpec{});
  ModelParams grads = ModelParams::zeros_like(params);
  backward_accumulate(params, cache, target, y, weights, &grads);

  std::vector<Mat*> grad_slots;
  grads.visit([&](const std::string&, Mat& m) { grad_slots.push_back(&m); });
  std::vector<std::pair<std::string, Mat*>> param_slots;
  params.visit([&](const std::string& name, Mat& m) { param_slots.emplace_back(name, &m); });

  const double eps = 1e-5;
  for (std::size_t s = 0; s < param_slots.size(); ++s) {
    Mat& tensor = *param_slots[s].second;
    double max_abs_analytic = 0.0;
    double max_err = 0.0;
    // probe a bounded number of entries per tensor to keep the suite quick
    const long stride = std::max<long>(1, tensor.size() / 40);
    for (long idx = 0; idx < tensor.size(); idx += stride) {
      const long r = idx % tensor.rows();
      const long c = idx / tensor.rows();
      const double saved = tensor(r, c);
      tensor(r, c) = saved + eps;
      const double up = loss_at(params, mel, mask, target, y, weights);
      tensor(r, c) = saved - eps;
      const double down = loss_at(params, mel, mask, target, y, weights);
      tensor(r, c) = saved;
      const double numeric = (up - down) / (2.0 * eps);
      const double analytic = (*grad_slots[s])(r, c);
      max_err = std::max(max_err, std::abs(numeric - analytic));
      max_abs_analytic = std::max(max_abs_analytic, std::abs(analytic));
    }
    const double scale = std::max(max_abs_analytic, 1e-6);
    INFO("tensor ", param_slots[s].first, " max_err ", max_err, " scale ", scale);
    CHECK(max_err / scale < 1e-4);
  }
}

TEST_CASE("softmax cross-entropy gradient at the logits equals p - y") {
  const ModelConfig cfg = gradcheck_config();
  ModelParams params = ModelParams::init(cfg, 17);
  const Mat mel = random_mel(4, cfg.mel_channels, 42);
  const Eigen::ArrayXd mask = full_mask(4);
  const Eigen::VectorXd y = one_hot4(1);

  // category-only objective: the emotion bias gradient IS the logits gradient
  LossWeights weights;
  weights.frame = 0.0;
  weights.utterance = 0.0;
  const auto cache = forward_training(params, mel, mask, DropoutSpec{});
  ModelParams grads = ModelParams::zeros_like(params);
  backward_accumulate(params, cache, 0.5, y, weights, &grads);

  const Eigen::VectorXd expected = cache.prediction.emotion_probs - y;
  CHECK((grads.emo_bias.col(0) - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("zero residuals produce zero strength-head gradients") {
  ModelConfig cfg = tiny_model_config();
  cfg.dropout_rate = 0.0;
  ModelParams params = ModelParams::init(cfg, 19);
  params.fc1_weight.setZero();
  params.fc1_bias.setZero();
  params.fc2_weight.setZero();
  params.fc2_bias(0, 0) = 0.44;

  const Mat mel = random_mel(6, 80, 43);
  const Eigen::ArrayXd mask = full_mask(6);
  const auto cache = forward_training(params, mel, mask, DropoutSpec{});
  REQUIRE(cache.prediction.utterance_score == 0.44);

  ModelParams grads = ModelParams::zeros_like(params);
  // target equals every prediction: MAE subgradient 0 at the tie
  backward_accumulate(params, cache, 0.44, one_hot4(0), LossWeights{1.0, 1.0, 0.0}, &grads);
  CHECK(grads.fc2_weight.cwiseAbs().maxCoeff() == 0.0);
  CHECK(grads.fc2_bias.cwiseAbs().maxCoeff() == 0.0);
  CHECK(grads.fc1_weight.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eval prediction is identical alone and inside a padded batch") {
  const ModelParams params = ModelParams::init(tiny_model_config(), 23);
  const long T = 14;
  const Mat mel = random_mel(T, 80, 44);
  const Prediction alone = predict(params, mel, full_mask(T));

  const long t_max = 25;  // as if batched with a longer utterance
  Mat padded = Mat::Zero(t_max, 80);
  padded.topRows(T) = mel;
  Eigen::ArrayXd mask = Eigen::ArrayXd::Zero(t_max);
  mask.head(T) = 1.0;
  const Prediction batched = predict(params, padded, mask);

  CHECK(std::abs(alone.utterance_score - batched.utterance_score) < 1e-5);
  CHECK((alone.emotion_probs - batched.emotion_probs).cwiseAbs().maxCoeff() < 1e-5);
  for (long t = 0; t < T; ++t) {
    CHECK(std::abs(alone.frame_scores(t) - batched.frame_scores(t)) < 1e-5);
  }
}

TEST_CASE("empty mask is rejected") {
  const ModelParams params = ModelParams::init(tiny_model_config(), 29);
  const Mat mel = random_mel(5, 80, 45);
  CHECK_THROWS_AS(predict(params, mel, Eigen::ArrayXd::Zero(5)), InvalidInput);
}

TEST_CASE("dropout is seeded and only active in training mode") {
  ModelConfig cfg = tiny_model_config();
  cfg.dropout_rate = 0.3;
  const ModelParams params = ModelParams::init(cfg, 31);
  const Mat mel = random_mel(6, 80, 46);
  const Eigen::ArrayXd mask = full_mask(6);

  DropoutSpec d1{true, 99};
  DropoutSpec d2{true, 99};
  DropoutSpec d3{true, 100};
  const auto c1 = forward_training(params, mel, mask, d1);
  const auto c2 = forward_training(params, mel, mask, d2);
  const auto c3 = forward_training(params, mel, mask, d3);
  CHECK(c1.prediction.utterance_score == c2.prediction.utterance_score);
  CHECK(c1.prediction.utterance_score != c3.prediction.utterance_score);

  // eval mode matches the no-dropout training forward
  const auto c4 = forward_training(params, mel, mask, DropoutSpec{});
  const Prediction eval = predict(params, mel, mask);
  CHECK(c4.prediction.utterance_score == eval.utterance_score);
}

TEST_CASE("checkpoint round trip preserves params and stats at float32") {
  testutil::TempDir tmp("ckpt");
  Checkpoint ckpt;
  ckpt.params = ModelParams::init(tiny_model_config(), 37);
  ckpt.norm.mean = Eigen::VectorXd::LinSpaced(80, -2.0, 2.0);
  ckpt.norm.std = Eigen::VectorXd::Constant(80, 1.7);
  save_checkpoint(tmp.str("model.ckpt"), ckpt);
  const Checkpoint loaded = load_checkpoint(tmp.str("model.ckpt"));

  CHECK(loaded.params.config.block_filters == ckpt.params.config.block_filters);
  CHECK(loaded.params.parameter_count() == ckpt.params.parameter_count());
  double max_err = 0.0;
  std::vector<const Mat*> orig;
  ckpt.params.visit([&](const std::string&, const Mat& m) { orig.push_back(&m); });
  std::size_t i = 0;
  loaded.params.visit([&](const std::string&, const Mat& m) {
    max_err = std::max(max_err, (m - *orig[i++]).cwiseAbs().maxCoeff());
  });
  CHECK(max_err < 1e-6);  // float32 storage
  CHECK((loaded.norm.mean - ckpt.norm.mean).cwiseAbs().maxCoeff() < 1e-6);

  // corrupted magic is rejected
  CHECK_THROWS_AS(load_checkpoint(tmp.str("missing.ckpt")), InvalidInput);
}
