#include <benchmark/benchmark.h>

#include <cmath>

#include "strengthnet/audio/functionals.hpp"
#include "strengthnet/audio/mel.hpp"
#include "strengthnet/audio/resample.hpp"
#include "strengthnet/common/rng.hpp"

namespace {

strengthnet::audio::Waveform test_tone(double seconds, int sample_rate) {
  strengthnet::audio::Waveform w;
  w.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(seconds * sample_rate);
  w.samples.resize(n);
  strengthnet::Rng rng(7);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    w.samples[i] = 0.4 * std::sin(2.0 * M_PI * 210.0 * t) +
                   0.2 * std::sin(2.0 * M_PI * 420.0 * t) + 1e-3 * rng.normal();
  }
  return w;
}

void BM_MelSpectrogram(benchmark::State& state) {
  const auto w = test_tone(static_cast<double>(state.range(0)) / 10.0, 16000);
  for (auto _ : state) {
    auto mel = strengthnet::audio::mel_spectrogram(w);
    benchmark::DoNotOptimize(mel);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MelSpectrogram)->Arg(5)->Arg(10)->Arg(30);

void BM_FunctionalFeatures(benchmark::State& state) {
  const auto w = test_tone(static_cast<double>(state.range(0)) / 10.0, 16000);
  for (auto _ : state) {
    auto f = strengthnet::audio::functional_features(w);
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FunctionalFeatures)->Arg(5)->Arg(10)->Arg(30);

void BM_Resample48kTo16k(benchmark::State& state) {
  const auto w = test_tone(1.0, 48000);
  for (auto _ : state) {
    auto r = strengthnet::audio::resample(w, 16000);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Resample48kTo16k);

}  // namespace
