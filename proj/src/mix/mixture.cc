// mix/mixture.cc

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

#include "mix/mixture.h"

#include <algorithm>
#include <cmath>

#include "base/common.h"

namespace tase {
namespace mix {

namespace {

double MaskedMeanSquare(const double *x, const std::vector<uint8_t> &mask) {
  double acc = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    acc += static_cast<double>(x[i]) * x[i];
    ++n;
  }
  return n > 0 ? acc / static_cast<double>(n) : 0.0;
}

bool Contains(const std::vector<double> &grid, double v) {
  for (double g : grid) {
    if (std::isinf(g) && std::isinf(v)) return true;
    if (g == v) return true;
  }
  return false;
}

}  // namespace

void MixtureSpec::Validate() const {
  TASE_CHECK(n_speakers >= 1 && n_speakers <= 3,
             "MixtureSpec: n_speakers must be in [1,3], got ", n_speakers);
  TASE_CHECK(Contains(kSirGridDb, sir_db),
             "MixtureSpec: sir_db not on the {0,6,12,inf} grid: ", sir_db);
  TASE_CHECK(Contains(kSnrGridDb, snr_db),
             "MixtureSpec: snr_db not on the {6,12,18,24,30} grid: ", snr_db);
}

MixtureSpec SampleMixtureSpec(Rng &rng) {
  MixtureSpec spec;
  spec.n_speakers = PickOne(rng, kSpeakerCounts);
  spec.sir_db = PickOne(rng, kSirGridDb);
  spec.snr_db = PickOne(rng, kSnrGridDb);
  return spec;
}

double MixtureResult::MeasuredSirDb() const {
  const double p_ref = MaskedMeanSquare(reference.data(), overlap);
  const double p_int = MaskedMeanSquare(interference.data(), overlap);
  if (p_int == 0.0) return kInfDb;
  return 10.0 * std::log10(p_ref / p_int);
}

double MixtureResult::MeasuredSnrDb() const {
  dsp::Waveform speech;
  speech.samples.resize(reference.size());
  for (size_t i = 0; i < speech.size(); ++i)
    speech.samples[i] = reference.samples[i] + interference.samples[i];
  const double p_speech = dsp::MeanSquare(speech);
  const double p_noise = dsp::MeanSquare(noise);
  if (p_noise == 0.0) return kInfDb;
  return 10.0 * std::log10(p_speech / p_noise);
}

MixtureResult MakeMixture(const MixtureSpec &spec, const dsp::Waveform &target,
                          const std::vector<dsp::Waveform> &interferers,
                          const dsp::Waveform &noise, Rng &rng) {
  spec.Validate();
  dsp::ValidateWaveform(target, "MakeMixture target");
  dsp::ValidateWaveform(noise, "MakeMixture noise");
  TASE_CHECK(static_cast<int>(interferers.size()) == spec.n_speakers - 1,
             "MakeMixture: expected ", spec.n_speakers - 1,
             " interferers, got ", interferers.size());

  const size_t len = target.size();
  MixtureResult result;
  result.reference = target;
  result.interference.samples.assign(len, 0.0f);
  result.noise.samples.assign(len, 0.0f);
  result.overlap.assign(len, 0);

  // Place interferers: longer ones are cropped from a random source offset,
  // shorter ones land at a random destination offset.
  std::vector<double> summed(len, 0.0);
  for (const dsp::Waveform &interferer : interferers) {
    dsp::ValidateWaveform(interferer, "MakeMixture interferer");
    if (interferer.size() >= len) {
      const size_t src = static_cast<size_t>(
          UniformInt(rng, 0, static_cast<int64_t>(interferer.size() - len)));
      for (size_t i = 0; i < len; ++i) {
        summed[i] += interferer.samples[src + i];
        result.overlap[i] = 1;
      }
    } else {
      const size_t dst = static_cast<size_t>(
          UniformInt(rng, 0, static_cast<int64_t>(len - interferer.size())));
      for (size_t i = 0; i < interferer.size(); ++i) {
        summed[dst + i] += interferer.samples[i];
        result.overlap[dst + i] = 1;
      }
    }
  }

  if (spec.n_speakers > 1 && !(std::isinf(spec.sir_db) && spec.sir_db > 0)) {
    const double p_target = MaskedMeanSquare(target.data(), result.overlap);
    const double p_interf = MaskedMeanSquare(summed.data(), result.overlap);
    TASE_CHECK(p_target > 0.0, "MakeMixture: target silent over the overlap");
    TASE_CHECK(p_interf > 0.0,
               "MakeMixture: zero-power interference with finite SIR");
    const double gain =
        std::sqrt(p_target / (p_interf * std::pow(10.0, spec.sir_db / 10.0)));
    for (size_t i = 0; i < len; ++i)
      result.interference.samples[i] = summed[i] * gain;
  }

  // Noise gain against the speech mixture, full length.
  dsp::Waveform speech;
  speech.samples.resize(len);
  for (size_t i = 0; i < len; ++i)
    speech.samples[i] = target.samples[i] + result.interference.samples[i];
  const size_t noise_src = static_cast<size_t>(UniformInt(
      rng, 0, static_cast<int64_t>(noise.size()) - 1));
  std::vector<double> looped(len);
  for (size_t i = 0; i < len; ++i)
    looped[i] = noise.samples[(noise_src + i) % noise.size()];
  const double p_speech = dsp::MeanSquare(speech);
  const double p_noise = dsp::MeanSquare(looped.data(), len);
  TASE_CHECK(p_speech > 0.0, "MakeMixture: silent speech mixture");
  TASE_CHECK(p_noise > 0.0, "MakeMixture: zero-power noise");
  const double noise_gain =
      std::sqrt(p_speech / (p_noise * std::pow(10.0, spec.snr_db / 10.0)));
  for (size_t i = 0; i < len; ++i)
    result.noise.samples[i] = looped[i] * noise_gain;

  result.mixture.samples.resize(len);
  for (size_t i = 0; i < len; ++i)
    result.mixture.samples[i] =
        speech.samples[i] + result.noise.samples[i];
  return result;
}

dsp::Waveform NullReference(size_t length, Rng &rng) {
  TASE_CHECK(length >= 1, "NullReference: length must be >= 1");
  dsp::Waveform w;
  w.samples.resize(length);
  std::normal_distribution<double> d(0.0, kNullSigma);
  for (size_t i = 0; i < length; ++i)
    w.samples[i] = d(rng);
  return w;
}

}  // namespace mix
}  // namespace tase
