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

#ifndef STRENGTHNET_AUDIO_RESAMPLE_HPP_
#define STRENGTHNET_AUDIO_RESAMPLE_HPP_

#include "strengthnet/audio/waveform.hpp"

namespace strengthnet::audio {

// Windowed-sinc resampling to target_rate. Identity (bit exact) when the
// rates already match. Output length is round(n_in * target / source), so
// duration is preserved within one sample period.
// Throws InvalidInput on empty input or non-positive rates.
Waveform resample(const Waveform& w, int target_rate);

}  // namespace strengthnet::audio

#endif  // STRENGTHNET_AUDIO_RESAMPLE_HPP_
