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

#ifndef STRENGTHNET_AUDIO_WAV_IO_HPP_
#define STRENGTHNET_AUDIO_WAV_IO_HPP_

#include <string>

#include "strengthnet/audio/waveform.hpp"

namespace strengthnet::audio {

// Reads a RIFF/WAVE file. Supported encodings: PCM 16/24/32 bit and IEEE
// float 32/64 bit. Multi-channel input is downmixed by averaging.
// Throws ParseError on malformed files, InvalidInput on unsupported codecs.
Waveform read_wav(const std::string& path);

// Writes mono 16-bit PCM. Samples are clipped to [-1, 1] before quantizing.
void write_wav(const std::string& path, const Waveform& w);

}  // namespace strengthnet::audio

#endif  // STRENGTHNET_AUDIO_WAV_IO_HPP_
