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

#ifndef STRENGTHNET_AUDIO_MEL_HPP_
#define STRENGTHNET_AUDIO_MEL_HPP_

#include <Eigen/Core>
#include <vector>

#include "strengthnet/audio/waveform.hpp"

namespace strengthnet::audio {

// Log-mel extraction conventions, frozen for reproducibility:
//   * 16 kHz input, 50 ms frames (800 samples), 12.5 ms hop (200 samples),
//     no end padding: T = floor((N - 800) / 200) + 1
//   * symmetric Hann window, zero-padded to a 1024-point FFT, power spectrum
//   * 80 triangular filters on the HTK mel scale m = 2595 log10(1 + f/700)
//     spanning 0..8000 Hz, area normalized by 2 / (f_right - f_left)
//   * natural log with the energy floored at 1e-10
struct MelConfig {
  int sample_rate = 16000;
  int frame_length = 800;
  int hop_length = 200;
  int fft_size = 1024;
  int num_mels = 80;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;
  double energy_floor = 1e-10;
};

struct MelSpectrogram {
  // T x num_mels, log-mel energies
  Eigen::MatrixXd frames;

  int num_frames() const { return static_cast<int>(frames.rows()); }
  int num_channels() const { return static_cast<int>(frames.cols()); }
};

struct NormalizationStats {
  Eigen::VectorXd mean;  // per channel
  Eigen::VectorXd std;   // per channel, > 0
};

// Triangular mel filterbank, shape num_mels x (fft_size/2 + 1).
Eigen::MatrixXd mel_filterbank(int num_mels, int fft_size, int sample_rate,
                               double fmin_hz, double fmax_hz);

// Throws InvalidInput if w is not at the configured rate, TooShort if it is
// shorter than one frame.
MelSpectrogram mel_spectrogram(const Waveform& w, const MelConfig& config = {});

// Per-channel mean/std over all frames of the given spectrograms.
// Throws DegenerateChannel if any channel has zero variance.
NormalizationStats fit_normalization(const std::vector<MelSpectrogram>& mels);

// out[t,c] = (in[t,c] - mean[c]) / std[c]
MelSpectrogram apply_normalization(const MelSpectrogram& m, const NormalizationStats& s);

// Inverse of apply_normalization.
MelSpectrogram invert_normalization(const MelSpectrogram& m, const NormalizationStats& s);

}  // namespace strengthnet::audio

#endif  // STRENGTHNET_AUDIO_MEL_HPP_
