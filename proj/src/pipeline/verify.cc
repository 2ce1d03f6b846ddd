// pipeline/verify.cc

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

#include "pipeline/verify.h"

#include "base/common.h"

namespace tase {
namespace pipeline {

double VerifySinglePass(const models::SpeakerProfile &profile,
                        const dsp::Waveform &test,
                        const models::Enhancer<float> &enhancer,
                        const nnet::Network<float> &net2) {
  TASE_CHECK(profile.bias.size() > 0 && profile.score_raw.size() > 0,
             "VerifySinglePass: profile lacks first-pass embeddings");
  const dsp::Waveform enhanced = enhancer.Enhance(test, profile.bias);
  const nnet::Tensor<float> emb = models::Embed(net2, enhanced);
  return models::CosineSimilarity(profile.score_raw, emb);
}

VerificationResult VerifyTwoPass(const models::SpeakerProfile &profile,
                                 const dsp::Waveform &test,
                                 const models::Enhancer<float> &enhancer,
                                 const nnet::Network<float> &net2) {
  TASE_CHECK(profile.HasSecondPass(),
             "VerifyTwoPass: profile has no enhanced-enrollment biases; "
             "re-enroll with the second pass enabled");
  VerificationResult result;
  result.pass1 = VerifySinglePass(profile, test, enhancer, net2);

  const dsp::Waveform re_enhanced =
      enhancer.Enhance(test, profile.bias_enhanced);
  const nnet::Tensor<float> emb2 = models::Embed(net2, re_enhanced);
  result.pass2 = models::CosineSimilarity(profile.score_enhanced, emb2);
  result.fused = (result.pass1 + result.pass2) / 2.0;
  return result;
}

double VerifyEmbeddingOnly(const models::SpeakerProfile &profile,
                           const dsp::Waveform &test,
                           const nnet::Network<float> &net2) {
  TASE_CHECK(profile.score_raw.size() > 0,
             "VerifyEmbeddingOnly: profile lacks scoring embeddings");
  return models::CosineSimilarity(profile.score_raw,
                                  models::Embed(net2, test));
}

}  // namespace pipeline
}  // namespace tase
