// mix/mixture.h

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

#ifndef TASE_MIX_MIXTURE_H_
#define TASE_MIX_MIXTURE_H_

#include <cstdint>
#include <vector>

#include "base/rng.h"
#include "dsp/waveform.h"
#include "mix/gain.h"

namespace tase {
namespace mix {

// Legal grids for simulated test mixtures.
inline const std::vector<int> kSpeakerCounts = {1, 2, 3};
inline const std::vector<double> kSirGridDb = {0.0, 6.0, 12.0, kInfDb};
inline const std::vector<double> kSnrGridDb = {6.0, 12.0, 18.0, 24.0, 30.0};

struct MixtureSpec {
  int n_speakers = 1;     // speakers present in the mixture, 1..3
  double sir_db = kInfDb; // target vs. summed interference
  double snr_db = 30.0;   // speech mixture vs. environmental noise

  void Validate() const;
};

MixtureSpec SampleMixtureSpec(Rng &rng);

// A generated mixture plus its components, kept separate so that SIR/SNR can
// be re-measured after the fact.
struct MixtureResult {
  dsp::Waveform mixture;       // reference + interference + noise
  dsp::Waveform reference;     // clean target, defines the length
  dsp::Waveform interference;  // scaled sum of placed interferers
  dsp::Waveform noise;         // scaled environmental noise
  std::vector<uint8_t> overlap;  // union of interferer placements

  double MeasuredSirDb() const;  // over the overlap region
  double MeasuredSnrDb() const;  // speech mixture vs. noise, full length
};

// Builds mixture = target + scaled interferers + scaled noise. Interferers
// longer than the target are cropped from a random offset; shorter ones are
// placed at a random offset. SIR is set against the sum of the placed
// interferers with power measured over the union of their placements; SNR is
// set against the full speech mixture. Deterministic given the generator.
MixtureResult MakeMixture(const MixtureSpec &spec, const dsp::Waveform &target,
                          const std::vector<dsp::Waveform> &interferers,
                          const dsp::Waveform &noise, Rng &rng);

// I.i.d. Gaussian NULL-reference signal: mean 0, standard deviation 1e-6.
constexpr double kNullSigma = 1e-6;
dsp::Waveform NullReference(size_t length, Rng &rng);

}  // namespace mix
}  // namespace tase

#endif  // TASE_MIX_MIXTURE_H_
