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

#include "strengthnet/audio/fft.hpp"

#include <cmath>
#include <cstddef>

#include "strengthnet/common/error.hpp"

namespace strengthnet::audio {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw InvalidInput("fft: length must be a power of two");

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv_n;
  }
}

std::vector<double> power_spectrum(std::span<const double> frame, int fft_size) {
  if (fft_size <= 0 || !is_power_of_two(static_cast<std::size_t>(fft_size))) {
    throw InvalidInput("power_spectrum: fft_size must be a power of two");
  }
  if (frame.size() > static_cast<std::size_t>(fft_size)) {
    throw InvalidInput("power_spectrum: frame longer than fft_size");
  }
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(fft_size));
  for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = frame[i];
  fft(buf);
  std::vector<double> out(static_cast<std::size_t>(fft_size) / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(buf[k]);
  return out;
}

std::vector<double> autocorrelation(std::span<const double> frame, int max_lag) {
  const std::size_t n = frame.size();
  if (n == 0) throw InvalidInput("autocorrelation: empty frame");
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
    throw InvalidInput("autocorrelation: max_lag out of range");
  }
  const std::size_t m = next_power_of_two(n + static_cast<std::size_t>(max_lag) + 1);
  std::vector<std::complex<double>> buf(m);
  for (std::size_t i = 0; i < n; ++i) buf[i] = frame[i];
  fft(buf);
  for (auto& x : buf) x = std::norm(x);
  fft(buf, /*inverse=*/true);
  std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
  for (std::size_t tau = 0; tau < out.size(); ++tau) out[tau] = buf[tau].real();
  return out;
}

}  // namespace strengthnet::audio
