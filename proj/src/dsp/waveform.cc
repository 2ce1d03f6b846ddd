// dsp/waveform.cc

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

#include "dsp/waveform.h"

#include <cmath>

#include "base/common.h"

namespace tase {
namespace dsp {

void ValidateWaveform(const Waveform &w, const char *what) {
  TASE_CHECK(!w.empty(), what, ": empty waveform");
  TASE_CHECK(w.sample_rate_hz == kSampleRateHz, what,
             ": sample rate must be 16000, got ", w.sample_rate_hz);
  for (double s : w.samples)
    TASE_CHECK(std::isfinite(s), what, ": non-finite sample");
}

Waveform ZeroMeanNormalize(const Waveform &w) {
  TASE_CHECK(!w.empty(), "ZeroMeanNormalize: empty waveform");
  double mean = SampleMean(w);
  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.samples.resize(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    out.samples[i] = w.samples[i] - mean;
  return out;
}

double MeanSquare(const double *x, size_t n) {
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * x[i];
  return acc / static_cast<double>(n);
}

double MeanSquare(const Waveform &w) { return MeanSquare(w.data(), w.size()); }

double SampleMean(const Waveform &w) {
  if (w.empty()) return 0.0;
  double acc = 0.0;
  for (double s : w.samples) acc += s;
  return acc / static_cast<double>(w.size());
}

}  // namespace dsp
}  // namespace tase
