// mix/synth.cc

// Copyright 2026  Tasenet Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mix/synth.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "base/common.h"

namespace tase {
namespace mix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxHarmonicHz = 7000.0;

// Raised-cosine on/off gate with syllabic pauses.
std::vector<double> VoicingGate(size_t n, Rng &rng) {
  std::vector<double> gate(n, 0.0);
  const double fs = dsp::kSampleRateHz;
  const size_t ramp = static_cast<size_t>(0.008 * fs);
  size_t pos = 0;
  bool voiced = true;
  while (pos < n) {
    const double dur_s = voiced ? UniformReal(rng, 0.18, 0.45)
                                : UniformReal(rng, 0.06, 0.16);
    size_t seg = static_cast<size_t>(dur_s * fs);
    seg = std::min(seg, n - pos);
    if (voiced) {
      const double level = UniformReal(rng, 0.75, 1.0);
      for (size_t i = 0; i < seg; ++i) {
        double g = 1.0;
        if (i < ramp) g = 0.5 - 0.5 * std::cos(std::numbers::pi * i / ramp);
        if (seg - i <= ramp)
          g = std::min(g, 0.5 - 0.5 * std::cos(std::numbers::pi *
                                               (seg - i) / double(ramp)));
        gate[pos + i] = level * g;
      }
    }
    pos += seg;
    voiced = !voiced;
  }
  return gate;
}

double FormantEnvelope(const VoiceProfile &voice, double f) {
  double env = 0.15;  // broadband floor so high harmonics never vanish
  for (const auto &fmt : voice.formants) {
    const double d = (f - fmt.freq_hz) / fmt.bandwidth_hz;
    env += fmt.gain / (1.0 + d * d);
  }
  const double t = f / voice.tilt_hz;
  return env / std::sqrt(1.0 + t * t);
}

}  // namespace

VoiceProfile SampleVoice(Rng &rng) {
  VoiceProfile v;
  v.f0_hz = std::exp(UniformReal(rng, std::log(95.0), std::log(260.0)));
  v.formants[0] = {UniformReal(rng, 300.0, 850.0), UniformReal(rng, 60.0, 120.0),
                   UniformReal(rng, 0.8, 1.2)};
  v.formants[1] = {UniformReal(rng, 950.0, 2100.0),
                   UniformReal(rng, 90.0, 180.0), UniformReal(rng, 0.5, 0.9)};
  v.formants[2] = {UniformReal(rng, 2300.0, 3400.0),
                   UniformReal(rng, 120.0, 250.0), UniformReal(rng, 0.25, 0.6)};
  v.tilt_hz = UniformReal(rng, 1800.0, 3200.0);
  return v;
}

dsp::Waveform SynthUtterance(const VoiceProfile &voice, double duration_s,
                             Rng &rng) {
  TASE_CHECK(duration_s > 0.0, "SynthUtterance: nonpositive duration");
  const double fs = dsp::kSampleRateHz;
  const size_t n = static_cast<size_t>(duration_s * fs);

  const int num_harmonics =
      std::max(3, static_cast<int>(kMaxHarmonicHz / voice.f0_hz));
  std::vector<double> amp(num_harmonics), phase(num_harmonics);
  for (int k = 0; k < num_harmonics; ++k) {
    amp[k] = FormantEnvelope(voice, (k + 1) * voice.f0_hz);
    phase[k] = UniformReal(rng, 0.0, kTwoPi);
  }

  // Vibrato plus slow drift keeps repeated utterances of one voice similar
  // but not identical.
  const double vib_hz = UniformReal(rng, 4.0, 6.5);
  const double vib_phase = UniformReal(rng, 0.0, kTwoPi);
  const double drift_hz = UniformReal(rng, 0.3, 0.8);
  const double drift_phase = UniformReal(rng, 0.0, kTwoPi);
  const double am_hz = UniformReal(rng, 3.5, 6.0);
  const double am_phase = UniformReal(rng, 0.0, kTwoPi);

  std::vector<double> gate = VoicingGate(n, rng);
  std::normal_distribution<double> breath(0.0, 1.0);

  dsp::Waveform w;
  w.samples.resize(n);
  double acc = 0.0;
  size_t voiced_count = 0;
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    const double f0 = voice.f0_hz *
                      (1.0 + 0.025 * std::sin(kTwoPi * vib_hz * t + vib_phase) +
                       0.035 * std::sin(kTwoPi * drift_hz * t + drift_phase));
    double s = 0.0;
    for (int k = 0; k < num_harmonics; ++k) {
      phase[k] += kTwoPi * (k + 1) * f0 / fs;
      if (phase[k] > kTwoPi) phase[k] -= kTwoPi * std::floor(phase[k] / kTwoPi);
      s += amp[k] * std::sin(phase[k]);
    }
    const double am = 1.0 + 0.15 * std::sin(kTwoPi * am_hz * t + am_phase);
    double out = gate[i] * (am * s + 0.02 * breath(rng));
    w.samples[i] = out;
    if (gate[i] > 0.1f) {
      acc += out * out;
      ++voiced_count;
    }
  }
  // Normalize voiced RMS to a nominal speech level.
  const double rms = std::sqrt(acc / std::max<size_t>(voiced_count, 1));
  const double gain = rms > 0 ? 0.1 / rms : 1.0;
  for (double &s : w.samples) s *= gain;
  return w;
}

dsp::Waveform SynthNoise(size_t length, Rng &rng) {
  TASE_CHECK(length >= 1, "SynthNoise: length must be >= 1");
  std::normal_distribution<double> white(0.0, 1.0);

  // Pink noise (Paul Kellet's economy filter).
  std::vector<double> pink(length);
  double b0 = 0, b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0;
  for (size_t i = 0; i < length; ++i) {
    const double wht = white(rng);
    b0 = 0.99886 * b0 + wht * 0.0555179;
    b1 = 0.99332 * b1 + wht * 0.0750759;
    b2 = 0.96900 * b2 + wht * 0.1538520;
    b3 = 0.86650 * b3 + wht * 0.3104856;
    b4 = 0.55000 * b4 + wht * 0.5329522;
    b5 = -0.7616 * b5 - wht * 0.0168980;
    pink[i] = b0 + b1 + b2 + b3 + b4 + b5 + b6 + wht * 0.5362;
    b6 = wht * 0.115926;
  }

  // Babble bed: a couple of random voices summed.
  const double dur_s = static_cast<double>(length) / dsp::kSampleRateHz;
  std::vector<double> babble(length, 0.0);
  for (int v = 0; v < 2; ++v) {
    VoiceProfile voice = SampleVoice(rng);
    dsp::Waveform u = SynthUtterance(voice, dur_s + 0.01, rng);
    for (size_t i = 0; i < length; ++i) babble[i] += u.samples[i];
  }

  auto rms = [](const std::vector<double> &x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
  };
  const double pink_rms = rms(pink);
  const double babble_rms = rms(babble);

  dsp::Waveform w;
  w.samples.resize(length);
  for (size_t i = 0; i < length; ++i) {
    double s = 0.6 * pink[i] / (pink_rms > 0 ? pink_rms : 1.0) +
               0.4 * babble[i] / (babble_rms > 0 ? babble_rms : 1.0);
    w.samples[i] = 0.05 * s;
  }
  return w;
}

}  // namespace mix
}  // namespace tase
