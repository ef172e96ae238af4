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

#include "strengthnet/data/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "strengthnet/audio/wav_io.hpp"
#include "strengthnet/common/error.hpp"
#include "strengthnet/common/rng.hpp"

namespace strengthnet::data {

namespace {

constexpr int kSampleRate = 16000;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kMaxHarmonics = 12;
constexpr double kBaseAmplitude = 0.3;

// Per-emotion harmonic amplitude templates. Each emotion gets a distinct
// rolloff and a resonance bump so the timbres separate cleanly in MFCC
// space; neutral sits between them. Two voices are provided: different
// corpora can use different realizations of the same emotion categories,
// the way different speaker pools do.
double emotion_template(Emotion emotion, int voice, int k) {
  if (voice == 0) {
    switch (emotion) {
      case Emotion::kHappy:     // bright, slow rolloff
        return std::pow(k, -0.45);
      case Emotion::kSad:       // dark, fast rolloff
        return std::pow(k, -2.1);
      case Emotion::kAngry:     // tense, odd harmonics emphasized
        return std::pow(k, -0.9) * (k % 2 == 1 ? 2.2 : 0.45);
      case Emotion::kSurprise:  // mid-band resonance
        return std::pow(k, -1.1) * ((k >= 4 && k <= 6) ? 2.8 : 0.7);
      case Emotion::kNeutral:
        return std::pow(k, -1.2);
    }
  }
  switch (emotion) {
    case Emotion::kHappy:     // bright via a high-band plateau instead
      return std::pow(k, -1.0) * (k >= 7 ? 3.2 : 0.9);
    case Emotion::kSad:       // dark with a hollow low-mid
      return std::pow(k, -1.6) * ((k == 2 || k == 3) ? 0.35 : 1.1);
    case Emotion::kAngry:     // even harmonics emphasized here
      return std::pow(k, -0.9) * (k % 2 == 0 ? 2.2 : 0.5);
    case Emotion::kSurprise:  // low resonance
      return std::pow(k, -1.1) * ((k == 2 || k == 3) ? 2.6 : 0.65);
    case Emotion::kNeutral:
      return std::pow(k, -1.2);
  }
  return 0.0;
}

// The timbre interpolates from the neutral template to the emotion template
// with strength, so a weak emotional utterance genuinely sounds close to
// neutral and every neutral/emotional cue grows monotonically with s. The
// sublinear exponent brings the category cue up quickly at low strength
// while leaving the ordering cues (energy, modulation) proportional.
double harmonic_weight(Emotion emotion, int voice, double strength, int k) {
  const double neutral = emotion_template(Emotion::kNeutral, voice, k);
  const double blend = std::pow(strength, 0.6);
  return neutral + blend * (emotion_template(emotion, voice, k) - neutral);
}

}  // namespace

audio::Waveform synthesize_utterance(const SyntheticUtteranceSpec& spec) {
  if (spec.strength < 0.0 || spec.strength > 1.0) {
    throw InvalidInput("synthesize_utterance: strength must be in [0,1]");
  }
  if (spec.base_f0_hz <= 0.0 || spec.duration_s <= 0.0) {
    throw InvalidInput("synthesize_utterance: bad f0 or duration");
  }

  Rng rng(spec.rng_seed);
  const auto n = static_cast<std::size_t>(std::lround(spec.duration_s * kSampleRate));

  const double s = spec.strength;
  const double vibrato_semitones = 3.0 * s;
  const double vibrato_rate = spec.vibrato_rate_hz;
  const double vibrato_phase = rng.uniform(0.0, kTwoPi);
  const double am_depth = 0.5 * s;
  const double am_rate = spec.am_rate_hz;
  const double am_phase = rng.uniform(0.0, kTwoPi);
  const double energy_scale = 0.5 + 0.5 * s;

  const int num_harmonics =
      std::min(kMaxHarmonics, static_cast<int>(7600.0 / (spec.base_f0_hz * 1.2)));
  std::vector<double> weights(static_cast<std::size_t>(num_harmonics));
  std::vector<double> phases(static_cast<std::size_t>(num_harmonics));
  double weight_sum = 0.0;
  for (int k = 1; k <= num_harmonics; ++k) {
    double wgt =
        harmonic_weight(spec.emotion, spec.timbre_voice, s, k) * std::pow(k, -spec.spectral_tilt);
    weights[static_cast<std::size_t>(k - 1)] = wgt;
    phases[static_cast<std::size_t>(k - 1)] = rng.uniform(0.0, kTwoPi);
    weight_sum += wgt;
  }
  for (auto& wgt : weights) wgt /= weight_sum;

  audio::Waveform w;
  w.sample_rate = kSampleRate;
  w.samples.resize(n);

  const double ramp_s = 0.02;
  const auto ramp_n = static_cast<std::size_t>(ramp_s * kSampleRate);
  double cycle = 0.0;  // integrated fundamental phase, in cycles
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / kSampleRate;
    const double vib =
        std::pow(2.0, vibrato_semitones * std::sin(kTwoPi * vibrato_rate * t + vibrato_phase) / 12.0);
    const double f_inst = spec.base_f0_hz * vib;
    double sample = 0.0;
    for (int k = 1; k <= num_harmonics; ++k) {
      sample += weights[static_cast<std::size_t>(k - 1)] *
                std::sin(kTwoPi * k * cycle + phases[static_cast<std::size_t>(k - 1)]);
    }
    cycle += f_inst / kSampleRate;

    const double am = 1.0 + am_depth * std::sin(kTwoPi * am_rate * t + am_phase);
    double env = 1.0;
    if (i < ramp_n) env = static_cast<double>(i) / static_cast<double>(ramp_n);
    const std::size_t from_end = n - 1 - i;
    if (from_end < ramp_n) env = std::min(env, static_cast<double>(from_end) / ramp_n);

    sample = kBaseAmplitude * energy_scale * am * env * sample +
             spec.noise_amplitude * rng.normal();
    w.samples[i] = sample;
  }
  if (spec.loudness_normalize) {
    double acc = 0.0;
    for (const double v : w.samples) acc += v * v;
    const double rms = std::sqrt(acc / static_cast<double>(n));
    if (rms > 1e-9) {
      const double target = 0.12;
      for (double& v : w.samples) v *= target / rms;
    }
  }
  for (double& v : w.samples) v *= spec.gain;
  return w;
}

SyntheticCorpus plan_synthetic_corpus(const SyntheticCorpusParams& params) {
  if (params.utterances_per_emotion < 3) {
    throw InvalidInput("plan_synthetic_corpus: need >= 3 utterances per emotion");
  }
  SyntheticCorpus corpus;
  Rng rng(params.seed);

  const Emotion emotions[5] = {Emotion::kNeutral, Emotion::kHappy, Emotion::kSad,
                               Emotion::kAngry, Emotion::kSurprise};
  std::uint64_t utt_counter = 0;
  for (const Emotion emotion : emotions) {
    for (int i = 0; i < params.utterances_per_emotion; ++i) {
      SyntheticUtteranceSpec spec;
      std::ostringstream id;
      id << params.dataset_id << "_" << emotion_name(emotion) << "_"
         << std::setw(4) << std::setfill('0') << i;
      spec.utterance_id = id.str();
      spec.emotion = emotion;
      spec.base_f0_hz = rng.uniform(params.f0_lo_hz, params.f0_hi_hz);
      spec.strength = emotion == Emotion::kNeutral ? 0.0 : rng.uniform();
      spec.duration_s = rng.uniform(params.duration_lo_s, params.duration_hi_s);
      spec.rng_seed = Rng::mix(params.seed, ++utt_counter);
      spec.spectral_tilt = rng.uniform(params.tilt_lo, params.tilt_hi);
      spec.noise_amplitude =
          std::exp(rng.uniform(std::log(params.noise_lo), std::log(params.noise_hi)));
      spec.gain = std::exp(rng.uniform(std::log(params.gain_lo), std::log(params.gain_hi)));
      spec.loudness_normalize = params.loudness_normalize;
      spec.timbre_voice = params.timbre_voice;
      const double c = params.rate_strength_coupling;
      const double tracked = c >= 0.0 ? spec.strength : 1.0 - spec.strength;
      const double vib_mix = std::abs(c) * tracked + (1.0 - std::abs(c)) * rng.uniform();
      spec.vibrato_rate_hz = params.vibrato_rate_lo_hz +
          (params.vibrato_rate_hi_hz - params.vibrato_rate_lo_hz) * vib_mix;
      const double am_mix = std::abs(c) * tracked + (1.0 - std::abs(c)) * rng.uniform();
      spec.am_rate_hz =
          params.am_rate_lo_hz + (params.am_rate_hi_hz - params.am_rate_lo_hz) * am_mix;

      ManifestRow row;
      row.utterance_id = spec.utterance_id;
      row.audio_path = "";  // set when rendered
      row.dataset_id = params.dataset_id;
      row.emotion = emotion;
      row.speaker_id = params.dataset_id + "_voice";
      row.split = Split::kUnassigned;

      corpus.manifest.rows.push_back(row);
      corpus.true_strength[spec.utterance_id] = spec.strength;
      corpus.specs.push_back(std::move(spec));
    }
  }
  corpus.manifest =
      split_manifest(corpus.manifest, params.ratios, Rng::mix(params.seed, 0x5eed));
  return corpus;
}

SyntheticCorpus write_synthetic_corpus(const SyntheticCorpusParams& params,
                                       const std::string& out_dir) {
  SyntheticCorpus corpus = plan_synthetic_corpus(params);
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  fs::create_directories(root / "wav");

  for (std::size_t i = 0; i < corpus.specs.size(); ++i) {
    const auto& spec = corpus.specs[i];
    const fs::path wav_path = root / "wav" / (spec.utterance_id + ".wav");
    audio::write_wav(wav_path.string(), synthesize_utterance(spec));
    corpus.manifest.rows[i].audio_path = wav_path.string();
  }
  save_manifest((root / "manifest.csv").string(), corpus.manifest);
  save_truth_csv((root / "truth.csv").string(), corpus.true_strength);
  return corpus;
}

void save_truth_csv(const std::string& path, const std::map<std::string, double>& truth) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open for writing: " + path);
  out << "utterance_id,strength_param\n";
  out.precision(17);
  for (const auto& [id, s] : truth) out << id << ',' << s << "\n";
}

std::map<std::string, double> load_truth_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open truth csv: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  std::map<std::string, double> truth;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 2 fields");
    }
    truth[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
  }
  return truth;
}

}  // namespace strengthnet::data
