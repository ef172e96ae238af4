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

#ifndef STRENGTHNET_AUDIO_FUNCTIONALS_HPP_
#define STRENGTHNET_AUDIO_FUNCTIONALS_HPP_

#include <Eigen/Core>
#include <string>

#include "strengthnet/audio/waveform.hpp"

namespace strengthnet::audio {

// Utterance-level 384-dim feature vector: 16 frame-level low-level
// descriptors plus their first-order deltas (32 series), each summarized by
// 12 functionals. Layout index = series * 12 + functional.
//
// LLD order (frames of 50 ms, 12.5 ms hop, same framing as the mel front end):
//    0 zcr       sign-change rate per sample in the frame
//    1 rms       linear RMS energy of the frame
//    2 f0        autocorrelation F0, search range 60..400 Hz, 0 if unvoiced
//    3 voiced    peak normalized autocorrelation in the search range, in [0,1]
//    4..15       MFCC 1..12 (26-filter mel bank 0..8 kHz, log floored at
//                1e-10, orthonormal DCT-II, coefficient 0 dropped)
// Series 16..31 are the deltas of series 0..15 (central difference with
// clamped edges; zero for single-frame inputs).
//
// Functional order within a series:
//    0 mean   1 std (population)   2 skewness   3 kurtosis (m4 / sigma^4)
//    4 min    5 max    6 range     7 relative position of min in [0,1]
//    8 relative position of max    9 linreg slope   10 linreg offset
//   11 linreg residual MSE  (regression over time normalized to [0,1])
// Skewness/kurtosis are 0 when a series is constant; slope is 0 and offset
// the value itself for single-frame inputs.
inline constexpr int kNumLlds = 16;
inline constexpr int kNumSeries = 32;
inline constexpr int kNumFunctionals = 12;
inline constexpr int kFunctionalDim = kNumSeries * kNumFunctionals;  // 384

// Throws InvalidInput if not 16 kHz, TooShort below 100 ms.
Eigen::VectorXd functional_features(const Waveform& w);

// Human-readable name for one slot of the vector, e.g. "mfcc3_de_skewness".
std::string functional_feature_name(int index);

}  // namespace strengthnet::audio

#endif  // STRENGTHNET_AUDIO_FUNCTIONALS_HPP_
