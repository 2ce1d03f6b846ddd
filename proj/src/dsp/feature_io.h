// dsp/feature_io.h

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

#ifndef TASE_DSP_FEATURE_IO_H_
#define TASE_DSP_FEATURE_IO_H_

#include <string>

#include "dsp/stft.h"

namespace tase {
namespace dsp {

// Binary feature container: magic "TASEFEAT", u32 frame count, u32 column
// count (always 257), then row-major little-endian float32 payload.
void WriteFeatures(const std::string &path, const FeatureMatrix &feat);
FeatureMatrix ReadFeatures(const std::string &path);

}  // namespace dsp
}  // namespace tase

#endif  // TASE_DSP_FEATURE_IO_H_
