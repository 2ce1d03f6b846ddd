// dsp/vad.h

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

#ifndef TASE_DSP_VAD_H_
#define TASE_DSP_VAD_H_

#include <cstdint>
#include <vector>

#include "dsp/stft.h"

namespace tase {
namespace dsp {

// Per-frame speech/non-speech decision, same length as the feature matrix.
struct VadMask {
  std::vector<uint8_t> voiced;

  int frames() const { return static_cast<int>(voiced.size()); }
  bool at(int t) const { return voiced[t] != 0; }
  int CountVoiced() const;
};

struct VadOptions {
  int num_bands = 20;       // mel-spaced groupings of the 257 bins
  double floor_cap = 0.3;   // ceiling on the estimated noise-floor variance
  double margin = 0.5;      // added to the noise-floor estimate
  double floor_percentile = 0.10;
  int median_window = 5;    // odd; frames of median smoothing
};

// Band-power variance detector. Each frame's score is the variance across
// mel-spaced bands of the log band power; flat spectra (silence, white noise)
// score near zero while spectra with formant structure score high. The
// threshold is a capped noise-floor estimate plus a fixed margin, and the raw
// decisions are median-smoothed. Deterministic: a pure function of the input.
VadMask ComputeVadMask(const FeatureMatrix &feat,
                       const VadOptions &opts = VadOptions());

// Rows of `feat` whose mask bit is set, in order.
FeatureMatrix SelectVoicedFrames(const FeatureMatrix &feat, const VadMask &mask);

}  // namespace dsp
}  // namespace tase

#endif  // TASE_DSP_VAD_H_
