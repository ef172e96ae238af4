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

#include "strengthnet/audio/mel.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "strengthnet/audio/fft.hpp"
#include "strengthnet/common/error.hpp"

namespace strengthnet::audio {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> hann_window(int length) {
  std::vector<double> w(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    w[static_cast<std::size_t>(i)] =
        0.5 - 0.5 * std::cos(kTwoPi * i / (length - 1));
  }
  return w;
}

}  // namespace

Eigen::MatrixXd mel_filterbank(int num_mels, int fft_size, int sample_rate,
                               double fmin_hz, double fmax_hz) {
  if (num_mels <= 0 || fft_size <= 0 || sample_rate <= 0 || fmax_hz <= fmin_hz) {
    throw InvalidInput("mel_filterbank: bad parameters");
  }
  const int num_bins = fft_size / 2 + 1;
  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(num_mels, num_bins);

  const double mel_lo = hz_to_mel(fmin_hz);
  const double mel_hi = hz_to_mel(fmax_hz);
  std::vector<double> edges_hz(static_cast<std::size_t>(num_mels) + 2);
  for (int i = 0; i < num_mels + 2; ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * i / (num_mels + 1);
    edges_hz[static_cast<std::size_t>(i)] = mel_to_hz(mel);
  }

  const double bin_hz = static_cast<double>(sample_rate) / fft_size;
  for (int m = 0; m < num_mels; ++m) {
    const double f_lo = edges_hz[static_cast<std::size_t>(m)];
    const double f_mid = edges_hz[static_cast<std::size_t>(m) + 1];
    const double f_hi = edges_hz[static_cast<std::size_t>(m) + 2];
    const double area_norm = 2.0 / (f_hi - f_lo);
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      double v = 0.0;
      if (f > f_lo && f < f_mid) {
        v = (f - f_lo) / (f_mid - f_lo);
      } else if (f >= f_mid && f < f_hi) {
        v = (f_hi - f) / (f_hi - f_mid);
      }
      fb(m, k) = v * area_norm;
    }
  }
  return fb;
}

MelSpectrogram mel_spectrogram(const Waveform& w, const MelConfig& config) {
  if (w.sample_rate != config.sample_rate) {
    throw InvalidInput("mel_spectrogram: expected " + std::to_string(config.sample_rate) +
                       " Hz input, got " + std::to_string(w.sample_rate));
  }
  const auto n = static_cast<long>(w.samples.size());
  if (n < config.frame_length) {
    throw TooShort("mel_spectrogram: input shorter than one frame (" +
                   std::to_string(n) + " < " + std::to_string(config.frame_length) + ")");
  }
  const long num_frames = (n - config.frame_length) / config.hop_length + 1;

  const std::vector<double> window = hann_window(config.frame_length);
  const Eigen::MatrixXd fb = mel_filterbank(config.num_mels, config.fft_size,
                                            config.sample_rate, config.fmin_hz,
                                            config.fmax_hz);

  MelSpectrogram out;
  out.frames.resize(num_frames, config.num_mels);

  std::vector<double> frame(static_cast<std::size_t>(config.frame_length));
  for (long t = 0; t < num_frames; ++t) {
    const std::size_t offset = static_cast<std::size_t>(t) * config.hop_length;
    for (int i = 0; i < config.frame_length; ++i) {
      frame[static_cast<std::size_t>(i)] =
          w.samples[offset + static_cast<std::size_t>(i)] * window[static_cast<std::size_t>(i)];
    }
    const std::vector<double> power = power_spectrum(frame, config.fft_size);
    const Eigen::Map<const Eigen::VectorXd> pvec(power.data(),
                                                 static_cast<long>(power.size()));
    Eigen::VectorXd mel = fb * pvec;
    for (int m = 0; m < config.num_mels; ++m) {
      out.frames(t, m) = std::log(std::max(mel(m), config.energy_floor));
    }
  }
  return out;
}

NormalizationStats fit_normalization(const std::vector<MelSpectrogram>& mels) {
  if (mels.empty()) throw InvalidInput("fit_normalization: empty collection");
  const long channels = mels.front().frames.cols();

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(channels);
  long total_frames = 0;
  for (const auto& m : mels) {
    if (m.frames.cols() != channels) {
      throw InvalidInput("fit_normalization: inconsistent channel counts");
    }
    sum += m.frames.colwise().sum().transpose();
    total_frames += m.frames.rows();
  }
  if (total_frames == 0) throw InvalidInput("fit_normalization: no frames");

  NormalizationStats stats;
  stats.mean = sum / static_cast<double>(total_frames);

  // two-pass variance; the one-pass formula cancels catastrophically on
  // near-constant channels (e.g. everything at the log floor)
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(channels);
  for (const auto& m : mels) {
    sq += (m.frames.rowwise() - stats.mean.transpose())
              .array()
              .square()
              .colwise()
              .sum()
              .matrix()
              .transpose();
  }
  stats.std.resize(channels);
  for (long c = 0; c < channels; ++c) {
    const double var = sq(c) / static_cast<double>(total_frames);
    // threshold scaled to the channel magnitude so rounding residue on a
    // constant channel still counts as degenerate
    if (var <= 1e-12 * (1.0 + stats.mean(c) * stats.mean(c))) {
      throw DegenerateChannel("fit_normalization: zero variance in channel " +
                              std::to_string(c));
    }
    stats.std(c) = std::sqrt(var);
  }
  return stats;
}

MelSpectrogram apply_normalization(const MelSpectrogram& m, const NormalizationStats& s) {
  if (m.frames.cols() != s.mean.size() || m.frames.cols() != s.std.size()) {
    throw InvalidInput("apply_normalization: shape mismatch");
  }
  MelSpectrogram out;
  out.frames = (m.frames.rowwise() - s.mean.transpose()).array().rowwise() /
               s.std.transpose().array();
  return out;
}

MelSpectrogram invert_normalization(const MelSpectrogram& m, const NormalizationStats& s) {
  if (m.frames.cols() != s.mean.size() || m.frames.cols() != s.std.size()) {
    throw InvalidInput("invert_normalization: shape mismatch");
  }
  MelSpectrogram out;
  out.frames = (m.frames.array().rowwise() * s.std.transpose().array()).matrix();
  out.frames.rowwise() += s.mean.transpose();
  return out;
}

}  // namespace strengthnet::audio
