// dsp/segment.cc

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

#include "dsp/segment.h"

#include <algorithm>

#include "base/common.h"

namespace tase {
namespace dsp {

FeatureMatrix RandomSegment(const FeatureMatrix &feat, Rng &rng) {
  TASE_CHECK(feat.frames >= 1, "RandomSegment: empty feature matrix");
  const int len = static_cast<int>(
      UniformInt(rng, kMinSegmentFrames, kMaxSegmentFrames));
  FeatureMatrix out(len);
  if (feat.frames >= len) {
    const int start = static_cast<int>(UniformInt(rng, 0, feat.frames - len));
    std::copy(feat.row(start), feat.row(start) + static_cast<size_t>(len) * kNumBins,
              out.row(0));
  } else {
    // Wraparound padding: slice the input tiled end-to-start.
    const int start = static_cast<int>(UniformInt(rng, 0, feat.frames - 1));
    for (int i = 0; i < len; ++i) {
      const int src = (start + i) % feat.frames;
      std::copy(feat.row(src), feat.row(src) + kNumBins, out.row(i));
    }
  }
  return out;
}

}  // namespace dsp
}  // namespace tase
