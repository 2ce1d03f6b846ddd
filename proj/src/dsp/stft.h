// dsp/stft.h

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

#ifndef TASE_DSP_STFT_H_
#define TASE_DSP_STFT_H_

#include <complex>
#include <vector>

#include "dsp/waveform.h"

namespace tase {
namespace dsp {

// 32 ms windows with a 16 ms shift at 16 kHz: 512-point frames, hop 256,
// one-sided spectrum of 257 magnitude bins.
constexpr int kWindowSamples = 512;
constexpr int kHopSamples = 256;
constexpr int kNumBins = 257;
constexpr int kWindowMs = 32;
constexpr int kFrameShiftMs = 16;

// T x 257 matrix of nonnegative STFT magnitudes, row-major.
struct FeatureMatrix {
  int frames = 0;
  std::vector<float> data;  // frames * kNumBins

  FeatureMatrix() = default;
  FeatureMatrix(int t, float fill = 0.0f)
      : frames(t), data(static_cast<size_t>(t) * kNumBins, fill) {}

  float &at(int t, int k) { return data[static_cast<size_t>(t) * kNumBins + k]; }
  float at(int t, int k) const {
    return data[static_cast<size_t>(t) * kNumBins + k];
  }
  const float *row(int t) const {
    return data.data() + static_cast<size_t>(t) * kNumBins;
  }
  float *row(int t) { return data.data() + static_cast<size_t>(t) * kNumBins; }
};

enum class Window { kHann, kRectangular };

// In-place iterative radix-2 FFT; size must be a power of two.
void Fft(std::vector<std::complex<double>> *buf);

// Magnitude STFT. The default analysis window is Hann; it is fixed so that
// features are bit-stable across runs. Inputs shorter than one window are
// rejected. Frame count is floor((len - 512) / 256) + 1.
FeatureMatrix StftFeatures(const Waveform &w, Window window = Window::kHann);

int NumStftFrames(size_t num_samples);

}  // namespace dsp
}  // namespace tase

#endif  // TASE_DSP_STFT_H_
