// mix/gain.cc

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

#include "mix/gain.h"

#include <algorithm>
#include <cmath>

#include "base/common.h"

namespace tase {
namespace mix {

double MeasureRatioDb(const dsp::Waveform &a, const dsp::Waveform &b) {
  TASE_CHECK(!a.empty() && !b.empty(), "MeasureRatioDb: empty input");
  const size_t n = std::min(a.size(), b.size());
  const double pa = dsp::MeanSquare(a.data(), n);
  const double pb = dsp::MeanSquare(b.data(), n);
  if (pb == 0.0) return kInfDb;
  return 10.0 * std::log10(pa / pb);
}

dsp::Waveform ScaleToSir(const dsp::Waveform &target,
                         const dsp::Waveform &interferer, double sir_db) {
  TASE_CHECK(!target.empty() && !interferer.empty(), "ScaleToSir: empty input");
  dsp::Waveform out;
  out.sample_rate_hz = interferer.sample_rate_hz;
  if (std::isinf(sir_db) && sir_db > 0) {
    out.samples.assign(interferer.size(), 0.0f);
    return out;
  }
  const size_t n = std::min(target.size(), interferer.size());
  const double p_target = dsp::MeanSquare(target.data(), n);
  const double p_interf = dsp::MeanSquare(interferer.data(), n);
  TASE_CHECK(p_target > 0.0, "ScaleToSir: zero-power target");
  TASE_CHECK(p_interf > 0.0,
             "ScaleToSir: zero-power interferer with finite SIR");
  const double gain = std::sqrt(p_target / (p_interf * std::pow(10.0, sir_db / 10.0)));
  out.samples.resize(interferer.size());
  for (size_t i = 0; i < interferer.size(); ++i)
    out.samples[i] = interferer.samples[i] * gain;
  return out;
}

dsp::Waveform AddNoiseAtSnr(const dsp::Waveform &speech,
                            const dsp::Waveform &noise, double snr_db) {
  TASE_CHECK(!speech.empty() && !noise.empty(), "AddNoiseAtSnr: empty input");
  const size_t n = speech.size();
  std::vector<double> looped(n);
  for (size_t i = 0; i < n; ++i) looped[i] = noise.samples[i % noise.size()];

  const double p_speech = dsp::MeanSquare(speech);
  const double p_noise = dsp::MeanSquare(looped.data(), n);
  TASE_CHECK(p_speech > 0.0, "AddNoiseAtSnr: zero-power speech");
  TASE_CHECK(p_noise > 0.0, "AddNoiseAtSnr: zero-power noise");
  const double gain = std::sqrt(p_speech / (p_noise * std::pow(10.0, snr_db / 10.0)));

  dsp::Waveform out;
  out.sample_rate_hz = speech.sample_rate_hz;
  out.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    out.samples[i] = speech.samples[i] + gain * looped[i];
  return out;
}

}  // namespace mix
}  // namespace tase
