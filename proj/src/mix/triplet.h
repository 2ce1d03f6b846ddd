// mix/triplet.h

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

#ifndef TASE_MIX_TRIPLET_H_
#define TASE_MIX_TRIPLET_H_

#include <string>
#include <vector>

#include "base/rng.h"
#include "dsp/waveform.h"
#include "mix/mixture.h"

namespace tase {
namespace mix {

struct SpeakerUtterances {
  std::string speaker_id;
  std::vector<dsp::Waveform> utterances;
  std::vector<std::string> utterance_ids;  // file paths when disk-backed
};

struct SpeakerCorpus {
  std::vector<SpeakerUtterances> speakers;

  int NumSpeakers() const { return static_cast<int>(speakers.size()); }
};

// Loads <dir>/<speaker>/<utt>.wav into memory. Speaker ids are the directory
// names; utterance ids are paths relative to `dir`.
SpeakerCorpus LoadSpeakerCorpus(const std::string &dir);

enum class TripletLabel { kTarget, kNontarget };

// The unit of enhancer training. A target triplet carries the clean source of
// the enrolled speaker as reference; a nontarget triplet has an absent
// enrolled speaker and no reference (the NULL reference is drawn at loss
// evaluation time).
struct TrainingTriplet {
  std::vector<dsp::Waveform> enrollment;
  dsp::Waveform test_mixture;
  dsp::Waveform reference;  // empty iff label == kNontarget
  TripletLabel label = TripletLabel::kTarget;
  MixtureSpec spec;

  int enrolled_speaker = -1;          // corpus speaker index
  std::vector<int> mixture_speakers;  // speaker indices present in the mix
  std::vector<int> enrollment_utts;   // utterance indices of the enrollment
  int base_utt = -1;                  // utterance index behind the mixture
  MixtureResult parts;                // components for re-measurement
};

struct TripletSamplerOptions {
  double nontarget_ratio = 11.0;  // target:nontarget; 11 means P(non) = 1/12;
                                  // +inf disables nontarget triplets
  int num_enrollment = 3;
  size_t mix_samples = 0;  // crop mixtures to this many samples; 0 = full
};

// The audio-free part of a triplet draw: label, speakers, utterances and the
// mixture spec. Splitting the plan from audio realization keeps the
// sampler's distributional behavior testable at scale.
struct TripletPlan {
  TripletLabel label = TripletLabel::kTarget;
  MixtureSpec spec;
  int enrolled_speaker = -1;
  int base_speaker = -1;
  int base_utt = -1;
  std::vector<int> enrollment_utts;
  std::vector<int> interferer_speakers;
};

TripletPlan SampleTripletPlan(const SpeakerCorpus &corpus, Rng &rng,
                              const TripletSamplerOptions &opts = {});

TrainingTriplet RealizeTriplet(const SpeakerCorpus &corpus,
                               const TripletPlan &plan, Rng &rng,
                               const TripletSamplerOptions &opts = {});

// Draws one training triplet. Nontarget triplets exclude the enrolled
// speaker from the mixture entirely. Speaker count, SIR and SNR are drawn
// uniformly from their grids (speaker count capped by corpus size).
TrainingTriplet SampleTriplet(const SpeakerCorpus &corpus, Rng &rng,
                              const TripletSamplerOptions &opts = {});

}  // namespace mix
}  // namespace tase

#endif  // TASE_MIX_TRIPLET_H_
