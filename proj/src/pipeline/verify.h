// pipeline/verify.h

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

#ifndef TASE_PIPELINE_VERIFY_H_
#define TASE_PIPELINE_VERIFY_H_

#include "models/profile.h"

namespace tase {
namespace pipeline {

// Two-pass verification scores (cosines in [-1, 1]). Pass 1 enhances the
// test utterance with the raw-enrollment bias; pass 2 redoes it with the
// enhanced-enrollment bias and scores against the enhanced-enrollment
// embedding. The default fusion is the arithmetic mean.
struct VerificationResult {
  double pass1 = 0.0;
  double pass2 = 0.0;
  double fused = 0.0;
};

VerificationResult VerifyTwoPass(const models::SpeakerProfile &profile,
                                 const dsp::Waveform &test,
                                 const models::Enhancer<float> &enhancer,
                                 const nnet::Network<float> &net2);

// Pass-1 only (for profiles without precomputed second-pass biases).
double VerifySinglePass(const models::SpeakerProfile &profile,
                        const dsp::Waveform &test,
                        const models::Enhancer<float> &enhancer,
                        const nnet::Network<float> &net2);

// Enhancement-free cosine baseline: embed the raw test utterance with net 2
// and score against the raw enrollment embedding.
double VerifyEmbeddingOnly(const models::SpeakerProfile &profile,
                           const dsp::Waveform &test,
                           const nnet::Network<float> &net2);

}  // namespace pipeline
}  // namespace tase

#endif  // TASE_PIPELINE_VERIFY_H_
