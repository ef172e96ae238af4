// Shared oracles and helpers for the test suites. These stay independent of
// the library implementation paths they check.

#ifndef STRENGTHNET_TESTS_TEST_UTIL_HPP_
#define STRENGTHNET_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "strengthnet/audio/waveform.hpp"
#include "strengthnet/common/rng.hpp"

namespace testutil {

inline constexpr double kPi = 3.1415926535897932384626433832795;

inline strengthnet::audio::Waveform make_sine(double freq_hz, double seconds,
                                              int sample_rate, double amplitude = 0.5) {
  strengthnet::audio::Waveform w;
  w.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amplitude * std::sin(2.0 * kPi * freq_hz * static_cast<double>(i) /
                                        sample_rate);
  }
  return w;
}

// Sine plus low-level noise so every mel channel carries variance.
inline strengthnet::audio::Waveform make_noisy_tone(double freq_hz, double seconds,
                                                    int sample_rate, std::uint64_t seed,
                                                    double amplitude = 0.5,
                                                    double noise = 1e-3) {
  strengthnet::audio::Waveform w = make_sine(freq_hz, seconds, sample_rate, amplitude);
  strengthnet::Rng rng(seed);
  for (auto& s : w.samples) s += noise * rng.normal();
  return w;
}

// Naive DFT magnitude scan: dominant frequency among integer-Hz bins in
// [lo_hz, hi_hz]. O(n * bins); independent of the library FFT.
inline double dominant_frequency_hz(const strengthnet::audio::Waveform& w, double lo_hz,
                                    double hi_hz) {
  double best_mag = -1.0;
  double best_freq = 0.0;
  for (double f = lo_hz; f <= hi_hz; f += 1.0) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
      const double phase = 2.0 * kPi * f * static_cast<double>(i) / w.sample_rate;
      re += w.samples[i] * std::cos(phase);
      im -= w.samples[i] * std::sin(phase);
    }
    const double mag = re * re + im * im;
    if (mag > best_mag) {
      best_mag = mag;
      best_freq = f;
    }
  }
  return best_freq;
}

// Spearman rank correlation; average ranks on ties.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  const auto ranks = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&v](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += ra[i];
    mean_b += rb[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (ra[i] - mean_a) * (rb[i] - mean_b);
    va += (ra[i] - mean_a) * (ra[i] - mean_a);
    vb += (rb[i] - mean_b) * (rb[i] - mean_b);
  }
  if (va <= 0.0 || vb <= 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

// Unique scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("strengthnet_test_" + tag + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& child = "") const {
    return child.empty() ? path_.string() : (path_ / child).string();
  }

 private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::filesystem::path path_;
};

}  // namespace testutil

#endif  // STRENGTHNET_TESTS_TEST_UTIL_HPP_
