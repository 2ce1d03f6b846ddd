// dsp/segment.h

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

#ifndef TASE_DSP_SEGMENT_H_
#define TASE_DSP_SEGMENT_H_

#include "base/rng.h"
#include "dsp/stft.h"

namespace tase {
namespace dsp {

constexpr int kMinSegmentFrames = 100;
constexpr int kMaxSegmentFrames = 200;

// Training segmenter: draws a length uniformly in [100, 200] frames and cuts
// a contiguous slice at a uniform start. Inputs shorter than the drawn length
// are extended by wraparound (the slice is taken from the input tiled
// end-to-start), so short utterances remain usable.
FeatureMatrix RandomSegment(const FeatureMatrix &feat, Rng &rng);

}  // namespace dsp
}  // namespace tase

#endif  // TASE_DSP_SEGMENT_H_
