// mix/gain.h

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

#ifndef TASE_MIX_GAIN_H_
#define TASE_MIX_GAIN_H_

#include <limits>

#include "dsp/waveform.h"

namespace tase {
namespace mix {

constexpr double kInfDb = std::numeric_limits<double>::infinity();

// 10*log10(P_a / P_b) with powers measured over the first min(len_a, len_b)
// samples. +inf when b has zero power.
double MeasureRatioDb(const dsp::Waveform &a, const dsp::Waveform &b);

// Returns the interferer scaled so that the target-to-interferer power ratio
// over the shared region equals sir_db. sir_db = +inf yields an all-zero
// signal of the interferer's length.
dsp::Waveform ScaleToSir(const dsp::Waveform &target,
                         const dsp::Waveform &interferer, double sir_db);

// Adds noise at the requested SNR (measured pre-mix over the speech length).
// Noise shorter than the speech is looped. Returns speech + scaled noise.
dsp::Waveform AddNoiseAtSnr(const dsp::Waveform &speech,
                            const dsp::Waveform &noise, double snr_db);

}  // namespace mix
}  // namespace tase

#endif  // TASE_MIX_GAIN_H_
