// losses/si_snr.h

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

#ifndef TASE_LOSSES_SI_SNR_H_
#define TASE_LOSSES_SI_SNR_H_

#include <span>

#include "base/rng.h"
#include "dsp/waveform.h"
#include "losses/loss_output.h"
#include "mix/triplet.h"

namespace tase {
namespace loss {

// Two algebraic routes to SI-SNR, both with the optimal scale
// alpha = <e,t> / <t,t> over zero-mean-normalized signals:
//
//   kStandard: 20*log10(||alpha*t|| / ||e - alpha*t||). The conventional
//     projection form; invariant to rescaling of the estimate.
//   kLiteral:  20*log10(||alpha*e|| / ||t - alpha*e||). Scales alpha onto the
//     estimate instead; NOT scale-invariant (its maximum over the estimate's
//     scale sits where alpha*e matches the target's energy).
//
// kStandard is the default training objective; kLiteral stays available
// behind this switch.
enum class SiSnrMode { kStandard, kLiteral };

struct SiSnrOptions {
  SiSnrMode mode = SiSnrMode::kStandard;
  double clamp_db = 60.0;    // value clamped to [-clamp, +clamp]
  double epsilon = 1e-8;     // floor on the residual norm
};

// SI-SNR in dB; the training loss is the negated value. Both signals are
// zero-mean normalized internally and the gradients account for it. Inside a
// floored or clamped region the gradient is zero. Throws on unequal lengths
// or a zero-power target.
LossOutput SiSnr(std::span<const double> estimate,
                 std::span<const double> target,
                 const SiSnrOptions &opts = {});
LossOutput SiSnr(const dsp::Waveform &estimate, const dsp::Waveform &target,
                 const SiSnrOptions &opts = {});

struct NullBranchOptions {
  SiSnrOptions target_branch;  // scores (estimate, clean reference)
  SiSnrOptions null_branch;    // scores (estimate, NULL draw)
};

// Triplet-aware SI-SNR: target triplets score against the clean reference;
// nontarget triplets score against a fresh NULL draw (zero-mean Gaussian,
// sigma = 1e-6) so the gradient never vanishes the way an all-zero reference
// would make it. The draw is resampled on every call. `drawn_null`, when
// non-null, receives the drawn reference (for tests).
LossOutput SiSnrWithNull(const dsp::Waveform &estimate,
                         mix::TripletLabel label,
                         const dsp::Waveform *reference, Rng &rng,
                         const NullBranchOptions &opts = {},
                         dsp::Waveform *drawn_null = nullptr);

}  // namespace loss
}  // namespace tase

#endif  // TASE_LOSSES_SI_SNR_H_
