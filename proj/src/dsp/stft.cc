// dsp/stft.cc

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

#include "dsp/stft.h"

#include <cmath>
#include <numbers>

#include "base/common.h"

namespace tase {
namespace dsp {

void Fft(std::vector<std::complex<double>> *buf) {
  auto &a = *buf;
  const size_t n = a.size();
  TASE_CHECK(n > 0 && (n & (n - 1)) == 0, "Fft: size must be a power of two");

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

int NumStftFrames(size_t num_samples) {
  if (num_samples < static_cast<size_t>(kWindowSamples)) return 0;
  return static_cast<int>((num_samples - kWindowSamples) / kHopSamples) + 1;
}

FeatureMatrix StftFeatures(const Waveform &w, Window window) {
  TASE_CHECK(w.size() >= static_cast<size_t>(kWindowSamples),
             "StftFeatures: input shorter than one 32 ms window (",
             w.size(), " < ", kWindowSamples, " samples)");

  std::vector<double> win(kWindowSamples, 1.0);
  if (window == Window::kHann) {
    for (int i = 0; i < kWindowSamples; ++i)
      win[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i /
                                    static_cast<double>(kWindowSamples));
  }

  const int frames = NumStftFrames(w.size());
  FeatureMatrix feat(frames);
  std::vector<std::complex<double>> buf(kWindowSamples);
  for (int t = 0; t < frames; ++t) {
    const double *x = w.data() + static_cast<size_t>(t) * kHopSamples;
    for (int i = 0; i < kWindowSamples; ++i)
      buf[i] = std::complex<double>(win[i] * x[i], 0.0);
    Fft(&buf);
    float *out = feat.row(t);
    for (int k = 0; k < kNumBins; ++k)
      out[k] = static_cast<float>(std::abs(buf[k]));
  }
  return feat;
}

}  // namespace dsp
}  // namespace tase
