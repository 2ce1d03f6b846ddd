// dsp/vad.cc

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

#include "dsp/vad.h"

#include <algorithm>
#include <cmath>

#include "base/common.h"

namespace tase {
namespace dsp {

namespace {

constexpr double kLogFloor = 1e-10;

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Bin edges of `num_bands` mel-spaced groups over the 257 one-sided bins.
std::vector<int> MelBandEdges(int num_bands) {
  const double nyquist = kSampleRateHz / 2.0;
  const double mel_max = HzToMel(nyquist);
  std::vector<int> edges(num_bands + 1);
  edges[0] = 0;
  edges[num_bands] = kNumBins;
  for (int b = 1; b < num_bands; ++b) {
    double hz = MelToHz(mel_max * b / num_bands);
    int bin = static_cast<int>(std::lround(hz / nyquist * (kNumBins - 1)));
    edges[b] = std::max(bin, edges[b - 1] + 1);  // keep every band nonempty
  }
  return edges;
}

double Percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  double idx = p * static_cast<double>(values.size() - 1);
  size_t lo = static_cast<size_t>(idx);
  size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = idx - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

int VadMask::CountVoiced() const {
  int n = 0;
  for (uint8_t v : voiced) n += (v != 0);
  return n;
}

VadMask ComputeVadMask(const FeatureMatrix &feat, const VadOptions &opts) {
  TASE_CHECK(feat.frames > 0, "ComputeVadMask: empty feature matrix");
  TASE_CHECK(opts.num_bands >= 2 && opts.num_bands <= kNumBins,
             "ComputeVadMask: bad band count ", opts.num_bands);
  const std::vector<int> edges = MelBandEdges(opts.num_bands);

  std::vector<double> score(feat.frames);
  std::vector<double> log_power(opts.num_bands);
  for (int t = 0; t < feat.frames; ++t) {
    const float *row = feat.row(t);
    for (int b = 0; b < opts.num_bands; ++b) {
      double p = 0.0;
      for (int k = edges[b]; k < edges[b + 1]; ++k)
        p += static_cast<double>(row[k]) * row[k];
      log_power[b] = std::log(p + kLogFloor);
    }
    double mean = 0.0;
    for (double lp : log_power) mean += lp;
    mean /= opts.num_bands;
    double var = 0.0;
    for (double lp : log_power) var += (lp - mean) * (lp - mean);
    score[t] = var / opts.num_bands;
  }

  double noise_floor =
      std::min(Percentile(score, opts.floor_percentile), opts.floor_cap);
  double threshold = noise_floor + opts.margin;

  std::vector<uint8_t> raw(feat.frames);
  for (int t = 0; t < feat.frames; ++t) raw[t] = score[t] > threshold ? 1 : 0;

  // Median smoothing == majority vote over the (odd) window.
  VadMask mask;
  mask.voiced.resize(feat.frames);
  const int half = std::max(opts.median_window, 1) / 2;
  for (int t = 0; t < feat.frames; ++t) {
    int votes = 0, total = 0;
    for (int u = t - half; u <= t + half; ++u) {
      if (u < 0 || u >= feat.frames) continue;
      votes += raw[u];
      ++total;
    }
    mask.voiced[t] = (2 * votes > total) ? 1 : 0;
  }
  return mask;
}

FeatureMatrix SelectVoicedFrames(const FeatureMatrix &feat,
                                 const VadMask &mask) {
  TASE_CHECK(mask.frames() == feat.frames,
             "SelectVoicedFrames: mask length ", mask.frames(),
             " != feature frames ", feat.frames);
  FeatureMatrix out(mask.CountVoiced());
  int j = 0;
  for (int t = 0; t < feat.frames; ++t) {
    if (!mask.at(t)) continue;
    std::copy(feat.row(t), feat.row(t) + kNumBins, out.row(j));
    ++j;
  }
  return out;
}

}  // namespace dsp
}  // namespace tase
