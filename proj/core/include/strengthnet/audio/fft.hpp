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

#ifndef STRENGTHNET_AUDIO_FFT_HPP_
#define STRENGTHNET_AUDIO_FFT_HPP_

#include <complex>
#include <span>
#include <vector>

namespace strengthnet::audio {

// In-place iterative radix-2 FFT. Length must be a power of two.
// The inverse transform includes the 1/N scaling.
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

// Power spectrum |X[k]|^2 of a real frame zero-padded to fft_size.
// Returns fft_size / 2 + 1 bins.
std::vector<double> power_spectrum(std::span<const double> frame, int fft_size);

// Biased autocorrelation r[tau] = sum_t x[t] * x[t + tau] for
// tau = 0..max_lag, computed with FFTs.
std::vector<double> autocorrelation(std::span<const double> frame, int max_lag);

}  // namespace strengthnet::audio

#endif  // STRENGTHNET_AUDIO_FFT_HPP_
