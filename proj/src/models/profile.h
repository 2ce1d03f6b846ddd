// models/profile.h

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

#ifndef TASE_MODELS_PROFILE_H_
#define TASE_MODELS_PROFILE_H_

#include <string>
#include <vector>

#include "models/enhancer.h"

namespace tase {
namespace models {

// Everything verification needs to know about one enrolled speaker. The
// anchor biases come from the joint-trained embedder (net 1) and condition
// the enhancer; the scoring embeddings come from the verification embedder
// (net 2). The *_enhanced fields support the second inference pass: each
// enrollment utterance is enhanced with the raw bias as its own anchor, and
// the biases are recomputed from the enhanced audio.
struct SpeakerProfile {
  std::string speaker_id;
  std::vector<std::string> enrollment_paths;

  nnet::Tensor<float> bias;            // net 1, raw enrollments (unit norm)
  nnet::Tensor<float> bias_enhanced;   // net 1, enhanced enrollments
  nnet::Tensor<float> score_raw;       // net 2, raw enrollments
  nnet::Tensor<float> score_enhanced;  // net 2, enhanced enrollments

  bool HasSecondPass() const { return bias_enhanced.size() > 0; }
};

// Builds a profile from enrollment audio. With `two_pass` set, the
// enhanced-enrollment biases are precomputed as well.
SpeakerProfile BuildProfile(const std::string &speaker_id,
                            const std::vector<dsp::Waveform> &enrollments,
                            const std::vector<std::string> &paths,
                            const nnet::Network<float> &net1,
                            const nnet::Network<float> &net2,
                            const Enhancer<float> &enhancer, bool two_pass);

void WriteProfile(const std::string &path, const SpeakerProfile &profile);
SpeakerProfile ReadProfile(const std::string &path);

}  // namespace models
}  // namespace tase

#endif  // TASE_MODELS_PROFILE_H_
