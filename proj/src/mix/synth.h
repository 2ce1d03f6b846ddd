// mix/synth.h

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

#ifndef TASE_MIX_SYNTH_H_
#define TASE_MIX_SYNTH_H_

#include <array>

#include "base/rng.h"
#include "dsp/waveform.h"

namespace tase {
namespace mix {

// Desk-scale stand-in for a speech corpus: harmonic voices with per-speaker
// fundamental and formant structure, syllabic gating and pauses. Two voices
// drawn independently differ in pitch and spectral envelope, which is what
// the embedding nets have to learn to separate.
struct VoiceProfile {
  struct Formant {
    double freq_hz;
    double bandwidth_hz;
    double gain;
  };
  double f0_hz = 140.0;
  std::array<Formant, 3> formants{};
  double tilt_hz = 2500.0;  // -6 dB/oct style rolloff corner
};

VoiceProfile SampleVoice(Rng &rng);

// One utterance of the given voice: voiced stretches with raised-cosine
// gates and pauses, vibrato and slow pitch drift, light breath noise.
dsp::Waveform SynthUtterance(const VoiceProfile &voice, double duration_s,
                             Rng &rng);

// Environmental noise: pink noise plus babble from a few random voices.
dsp::Waveform SynthNoise(size_t length, Rng &rng);

}  // namespace mix
}  // namespace tase

#endif  // TASE_MIX_SYNTH_H_
