#include <benchmark/benchmark.h>

#include "strengthnet/common/rng.hpp"
#include "strengthnet/model/backward.hpp"
#include "strengthnet/model/forward.hpp"

namespace {

using namespace strengthnet::model;

Mat random_mel(long T, int channels, std::uint64_t seed) {
  strengthnet::Rng rng(seed);
  Mat m(T, channels);
  for (long t = 0; t < T; ++t) {
    for (int c = 0; c < channels; ++c) m(t, c) = rng.normal();
  }
  return m;
}

void BM_ForwardEval(benchmark::State& state) {
  ModelConfig cfg;  // paper-scale architecture
  const ModelParams params = ModelParams::init(cfg, 1);
  const Mat mel = random_mel(state.range(0), cfg.mel_channels, 3);
  const Eigen::ArrayXd mask = full_mask(mel.rows());
  for (auto _ : state) {
    auto pred = predict(params, mel, mask);
    benchmark::DoNotOptimize(pred);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardEval)->Arg(40)->Arg(80)->Arg(160);

void BM_ForwardBackward(benchmark::State& state) {
  ModelConfig cfg = tiny_model_config();
  cfg.dropout_rate = 0.0;
  const ModelParams params = ModelParams::init(cfg, 1);
  const Mat mel = random_mel(state.range(0), cfg.mel_channels, 5);
  const Eigen::ArrayXd mask = full_mask(mel.rows());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(cfg.num_emotions);
  y(1) = 1.0;
  for (auto _ : state) {
    const auto cache = forward_training(params, mel, mask, DropoutSpec{});
    auto grads = backward(params, cache, 0.6, y, LossWeights{});
    benchmark::DoNotOptimize(grads);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardBackward)->Arg(40)->Arg(80);

}  // namespace
