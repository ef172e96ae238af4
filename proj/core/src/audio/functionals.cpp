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

#include "strengthnet/audio/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "strengthnet/audio/fft.hpp"
#include "strengthnet/audio/mel.hpp"
#include "strengthnet/common/error.hpp"

namespace strengthnet::audio {

namespace {

constexpr int kSampleRate = 16000;
constexpr int kFrameLength = 800;
constexpr int kHopLength = 200;
constexpr int kFftSize = 1024;
constexpr int kMfccMelBands = 26;
constexpr int kNumMfcc = 12;
constexpr double kF0MinHz = 60.0;
constexpr double kF0MaxHz = 400.0;
constexpr double kVoicingThreshold = 0.3;
constexpr double kMinSamples = 1600;  // 100 ms
constexpr double kTwoPi = 6.283185307179586476925286766559;

double frame_zcr(std::span<const double> x) {
  int flips = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if ((x[i - 1] >= 0.0) != (x[i] >= 0.0)) ++flips;
  }
  return static_cast<double>(flips) / static_cast<double>(x.size() - 1);
}

double frame_rms(std::span<const double> x) {
  double acc = 0.0;
  for (const double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

// F0 by the autocorrelation peak in the 60..400 Hz lag range, plus a
// voicing score r[tau*] / r[0]. Unvoiced frames report f0 = 0.
void frame_pitch(std::span<const double> x, double* f0, double* voicing) {
  const int min_lag = static_cast<int>(kSampleRate / kF0MaxHz);          // 40
  const int max_lag = static_cast<int>(std::ceil(kSampleRate / kF0MinHz));  // 267
  const std::vector<double> r = autocorrelation(x, max_lag);
  if (r[0] <= 1e-12) {
    *f0 = 0.0;
    *voicing = 0.0;
    return;
  }
  int best = min_lag;
  for (int tau = min_lag; tau <= max_lag; ++tau) {
    if (r[static_cast<std::size_t>(tau)] > r[static_cast<std::size_t>(best)]) best = tau;
  }
  const double score = std::clamp(r[static_cast<std::size_t>(best)] / r[0], 0.0, 1.0);
  *voicing = score;
  *f0 = score >= kVoicingThreshold ? static_cast<double>(kSampleRate) / best : 0.0;
}

// Orthonormal DCT-II basis, rows 1..kNumMfcc over kMfccMelBands inputs.
Eigen::MatrixXd dct_basis() {
  Eigen::MatrixXd dct(kNumMfcc, kMfccMelBands);
  const double scale = std::sqrt(2.0 / kMfccMelBands);
  for (int i = 1; i <= kNumMfcc; ++i) {
    for (int j = 0; j < kMfccMelBands; ++j) {
      dct(i - 1, j) = scale * std::cos(M_PI * i * (2 * j + 1) / (2.0 * kMfccMelBands));
    }
  }
  return dct;
}

// The 12 summary statistics of one series. See header for the exact order.
void summarize(const Eigen::VectorXd& s, double* out) {
  const long n = s.size();
  const double dn = static_cast<double>(n);
  const double mean = s.mean();
  const double var = (s.array() - mean).square().sum() / dn;
  const double sd = std::sqrt(std::max(var, 0.0));

  double skew = 0.0;
  double kurt = 0.0;
  if (sd > 1e-12) {
    skew = ((s.array() - mean) / sd).cube().sum() / dn;
    kurt = ((s.array() - mean) / sd).pow(4).sum() / dn;
  }

  long imin = 0;
  long imax = 0;
  const double vmin = s.minCoeff(&imin);
  const double vmax = s.maxCoeff(&imax);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;

  // least squares line over time normalized to [0,1]
  double slope = 0.0;
  double offset = s(0);
  double resid_mse = 0.0;
  if (n > 1) {
    double su = 0.0, suu = 0.0, sy = 0.0, suy = 0.0;
    for (long t = 0; t < n; ++t) {
      const double u = static_cast<double>(t) / denom;
      su += u;
      suu += u * u;
      sy += s(t);
      suy += u * s(t);
    }
    const double det = dn * suu - su * su;
    if (std::abs(det) > 1e-12) {
      slope = (dn * suy - su * sy) / det;
      offset = (suu * sy - su * suy) / det;
    } else {
      slope = 0.0;
      offset = sy / dn;
    }
    for (long t = 0; t < n; ++t) {
      const double u = static_cast<double>(t) / denom;
      const double e = s(t) - (slope * u + offset);
      resid_mse += e * e;
    }
    resid_mse /= dn;
  }

  out[0] = mean;
  out[1] = sd;
  out[2] = skew;
  out[3] = kurt;
  out[4] = vmin;
  out[5] = vmax;
  out[6] = vmax - vmin;
  out[7] = static_cast<double>(imin) / denom;
  out[8] = static_cast<double>(imax) / denom;
  out[9] = slope;
  out[10] = offset;
  out[11] = resid_mse;
}

}  // namespace

Eigen::VectorXd functional_features(const Waveform& w) {
  if (w.sample_rate != kSampleRate) {
    throw InvalidInput("functional_features: expected 16 kHz input, got " +
                       std::to_string(w.sample_rate));
  }
  if (static_cast<double>(w.samples.size()) < kMinSamples) {
    throw TooShort("functional_features: input shorter than 100 ms");
  }

  const long num_frames =
      (static_cast<long>(w.samples.size()) - kFrameLength) / kHopLength + 1;

  static const Eigen::MatrixXd mel_fb =
      mel_filterbank(kMfccMelBands, kFftSize, kSampleRate, 0.0, 8000.0);
  static const Eigen::MatrixXd dct = dct_basis();

  std::vector<double> window(kFrameLength);
  for (int i = 0; i < kFrameLength; ++i) {
    window[static_cast<std::size_t>(i)] =
        0.5 - 0.5 * std::cos(kTwoPi * i / (kFrameLength - 1));
  }

  Eigen::MatrixXd lld(num_frames, kNumLlds);
  std::vector<double> frame(kFrameLength);
  std::vector<double> windowed(kFrameLength);
  for (long t = 0; t < num_frames; ++t) {
    const std::size_t offset = static_cast<std::size_t>(t) * kHopLength;
    for (int i = 0; i < kFrameLength; ++i) {
      frame[static_cast<std::size_t>(i)] = w.samples[offset + static_cast<std::size_t>(i)];
      windowed[static_cast<std::size_t>(i)] =
          frame[static_cast<std::size_t>(i)] * window[static_cast<std::size_t>(i)];
    }
    lld(t, 0) = frame_zcr(frame);
    lld(t, 1) = frame_rms(frame);
    double f0 = 0.0, voiced = 0.0;
    frame_pitch(frame, &f0, &voiced);
    lld(t, 2) = f0;
    lld(t, 3) = voiced;

    const std::vector<double> power = power_spectrum(windowed, kFftSize);
    const Eigen::Map<const Eigen::VectorXd> pvec(power.data(),
                                                 static_cast<long>(power.size()));
    Eigen::VectorXd mel = mel_fb * pvec;
    Eigen::VectorXd log_mel(kMfccMelBands);
    for (int m = 0; m < kMfccMelBands; ++m) {
      log_mel(m) = std::log(std::max(mel(m), 1e-10));
    }
    lld.row(t).segment(4, kNumMfcc) = (dct * log_mel).transpose();
  }

  // deltas: central difference with clamped edges
  Eigen::MatrixXd delta(num_frames, kNumLlds);
  for (long t = 0; t < num_frames; ++t) {
    const long prev = std::max<long>(t - 1, 0);
    const long next = std::min<long>(t + 1, num_frames - 1);
    delta.row(t) = 0.5 * (lld.row(next) - lld.row(prev));
  }

  Eigen::VectorXd out(kFunctionalDim);
  for (int s = 0; s < kNumLlds; ++s) {
    summarize(lld.col(s), out.data() + s * kNumFunctionals);
    summarize(delta.col(s), out.data() + (kNumLlds + s) * kNumFunctionals);
  }
  return out;
}

std::string functional_feature_name(int index) {
  if (index < 0 || index >= kFunctionalDim) throw InvalidInput("bad functional index");
  static const char* kFunctionalNames[kNumFunctionals] = {
      "mean", "std",       "skewness",  "kurtosis", "min",   "max",
      "range", "relminpos", "relmaxpos", "slope",    "offset", "residmse"};
  const int series = index / kNumFunctionals;
  const int functional = index % kNumFunctionals;
  const int lld = series % kNumLlds;
  std::string name;
  if (lld == 0) name = "zcr";
  else if (lld == 1) name = "rms";
  else if (lld == 2) name = "f0";
  else if (lld == 3) name = "voiced";
  else name = "mfcc" + std::to_string(lld - 3);
  if (series >= kNumLlds) name += "_de";
  return name + "_" + kFunctionalNames[functional];
}

}  // namespace strengthnet::audio
