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

#ifndef STRENGTHNET_DATA_SYNTHETIC_HPP_
#define STRENGTHNET_DATA_SYNTHETIC_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "strengthnet/audio/waveform.hpp"
#include "strengthnet/data/manifest.hpp"
#include "strengthnet/data/split.hpp"

namespace strengthnet::data {

// One synthetic utterance: a harmonic tone with an emotion-dependent timbre
// template and strength-dependent modulation. The strength parameter drives
//   vibrato depth          s * 3 semitones (peak deviation, ~5.5 Hz rate)
//   amplitude modulation   depth s * 0.5 (~3 Hz rate)
//   energy scale           0.5 + 0.5 * s
//   timbre                 interpolates neutral -> emotion template with s
// Neutral utterances use s = 0; an emotional utterance at s = 0 is
// indistinguishable from neutral apart from noise, mirroring how weak
// emotion behaves in real speech. A low noise floor (~-80 dB) and 20 ms
// fade ramps keep the spectra non-degenerate without masking the cues.
struct SyntheticUtteranceSpec {
  std::string utterance_id;
  Emotion emotion = Emotion::kNeutral;
  double base_f0_hz = 200.0;
  double strength = 0.0;  // s in [0,1]
  double duration_s = 0.6;
  double vibrato_rate_hz = 5.5;
  double am_rate_hz = 3.0;
  int timbre_voice = 0;  // which per-emotion template set renders this voice
  std::uint64_t rng_seed = 0;
  // corpus-level voice profile
  double spectral_tilt = 0.0;   // extra harmonic rolloff exponent
  double noise_amplitude = 1e-4;
  double gain = 1.0;            // recording gain, applied after everything
  // Rescale the rendered audio to a fixed RMS before the gain, emulating
  // corpora that ship loudness normalized. This removes the absolute energy
  // cue while keeping modulation and timbre cues intact.
  bool loudness_normalize = false;
};

audio::Waveform synthesize_utterance(const SyntheticUtteranceSpec& spec);

// Corpus-level voice profile. Per-utterance tilt and noise are drawn from
// the given ranges, so a wide range acts like speaker and channel
// variability; equal bounds pin the value.
struct SyntheticCorpusParams {
  std::string dataset_id = "synthA";
  int utterances_per_emotion = 20;  // also the neutral group size
  double f0_lo_hz = 120.0;
  double f0_hi_hz = 260.0;
  double duration_lo_s = 0.4;
  double duration_hi_s = 0.8;
  double tilt_lo = 0.0;
  double tilt_hi = 0.0;
  double noise_lo = 1e-4;  // log-uniform draw
  double noise_hi = 1e-4;
  double gain_lo = 1.0;    // log-uniform draw; emulates recording gain spread
  double gain_hi = 1.0;
  bool loudness_normalize = false;
  // Modulation rate ranges, and how strongly the rates track strength.
  // Coupling 1 maps rate = lo + (hi-lo)*s (a corpus "style" where stronger
  // emotion also modulates faster), coupling -1 reverses the convention
  // (stronger emotion modulates slower), 0 draws rates uniformly per
  // utterance. Opposite couplings across corpora create a genuine domain
  // gap for transferred ranking functions.
  double vibrato_rate_lo_hz = 5.0;
  double vibrato_rate_hi_hz = 6.0;
  double am_rate_lo_hz = 2.5;
  double am_rate_hi_hz = 3.5;
  double rate_strength_coupling = 0.0;
  int timbre_voice = 0;
  std::uint64_t seed = 1;
  SplitRatios ratios;
};

struct SyntheticCorpus {
  CorpusManifest manifest;                     // with splits assigned
  std::map<std::string, double> true_strength;  // utterance_id -> s
  std::vector<SyntheticUtteranceSpec> specs;    // row-aligned with manifest
};

// Draws per-utterance specs (strength uniform in [0,1] for the four
// emotional groups, 0 for neutral), deterministic per seed. No files are
// written; pair with write_synthetic_corpus for the on-disk layout.
SyntheticCorpus plan_synthetic_corpus(const SyntheticCorpusParams& params);

// Renders audio to <out_dir>/wav/<id>.wav and writes manifest.csv plus
// truth.csv (header: utterance_id,strength_param).
SyntheticCorpus write_synthetic_corpus(const SyntheticCorpusParams& params,
                                       const std::string& out_dir);

// Ground-truth strength CSV used alongside generated corpora.
void save_truth_csv(const std::string& path, const std::map<std::string, double>& truth);
std::map<std::string, double> load_truth_csv(const std::string& path);

}  // namespace strengthnet::data

#endif  // STRENGTHNET_DATA_SYNTHETIC_HPP_
