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

#include "strengthnet/audio/resample.hpp"

#include <cmath>
#include <cstddef>

#include "strengthnet/common/error.hpp"

namespace strengthnet::audio {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr int kHalfTaps = 32;  // sinc taps per side, at the input rate

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

}  // namespace

Waveform resample(const Waveform& w, int target_rate) {
  if (w.empty()) throw InvalidInput("resample: empty input");
  if (w.sample_rate <= 0 || target_rate <= 0) {
    throw InvalidInput("resample: sample rates must be positive");
  }
  if (w.sample_rate == target_rate) return w;

  const double ratio = static_cast<double>(target_rate) / w.sample_rate;
  const std::size_t n_in = w.samples.size();
  const auto n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_in) * ratio));

  // When downsampling, scale the sinc cutoff below the output Nyquist to
  // suppress aliasing; the same factor widens the kernel support.
  const double cutoff = ratio < 1.0 ? ratio : 1.0;
  const int half_width = ratio < 1.0
                             ? static_cast<int>(std::ceil(kHalfTaps / cutoff))
                             : kHalfTaps;

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.resize(n_out);

  for (std::size_t m = 0; m < n_out; ++m) {
    const double center = static_cast<double>(m) / ratio;
    const auto lo = static_cast<long>(std::floor(center)) - half_width + 1;
    const auto hi = static_cast<long>(std::floor(center)) + half_width;
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) {
      if (k < 0 || k >= static_cast<long>(n_in)) continue;
      const double d = center - static_cast<double>(k);
      // Hann-windowed sinc
      const double win = 0.5 + 0.5 * std::cos(kPi * d / half_width);
      acc += w.samples[static_cast<std::size_t>(k)] * cutoff * sinc(cutoff * d) * win;
    }
    out.samples[m] = acc;
  }
  return out;
}

}  // namespace strengthnet::audio
