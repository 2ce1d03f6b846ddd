// dsp/waveform.h

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

#ifndef TASE_DSP_WAVEFORM_H_
#define TASE_DSP_WAVEFORM_H_

#include <cstdint>
#include <vector>

namespace tase {
namespace dsp {

constexpr int kSampleRateHz = 16000;

// Mono time-domain signal. Samples are dimensionless amplitudes with a
// nominal range of [-1, 1]; the project runs at a fixed 16 kHz rate.
// Double precision end to end so normalization and power measurements hold
// tight tolerances; networks convert at their own boundary.
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = kSampleRateHz;

  Waveform() = default;
  explicit Waveform(std::vector<double> s) : samples(std::move(s)) {}

  size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double *data() { return samples.data(); }
  const double *data() const { return samples.data(); }
  double &operator[](size_t i) { return samples[i]; }
  double operator[](size_t i) const { return samples[i]; }
};

// Throws std::invalid_argument if the waveform is empty or contains a
// non-finite sample.
void ValidateWaveform(const Waveform &w, const char *what = "waveform");

// Subtracts the sample mean (computed in double precision). Length is
// preserved; applying twice equals applying once up to rounding.
Waveform ZeroMeanNormalize(const Waveform &w);

// Mean squared amplitude over the first n samples.
double MeanSquare(const double *x, size_t n);
double MeanSquare(const Waveform &w);

double SampleMean(const Waveform &w);

}  // namespace dsp
}  // namespace tase

#endif  // TASE_DSP_WAVEFORM_H_
