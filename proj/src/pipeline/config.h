// pipeline/config.h

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

#ifndef TASE_PIPELINE_CONFIG_H_
#define TASE_PIPELINE_CONFIG_H_

#include <string>

#include "losses/si_snr.h"
#include "losses/sv_losses.h"
#include "models/enhancer.h"

namespace tase {
namespace pipeline {

// One training stage, fully described. Serialized as a flat key-value text
// file; unknown keys are rejected. The finetune stage defaults to learning
// rate 1e-6 with exactly one epoch.
struct StageConfig {
  std::string stage;  // pretrain | distill | joint_train | finetune
  int epochs = 4;
  double learning_rate = 1e-3;
  int batch = 16;          // utterances per embedder step (P speakers x K)
  int speakers_per_batch = 8;
  int joint_batch = 2;     // triplets per joint-training step
  uint64_t seed = 0;

  double nontarget_ratio = 11.0;  // target:nontarget in triplet sampling
  loss::SiSnrMode si_snr_mode = loss::SiSnrMode::kStandard;
  loss::SiSnrMode null_mode = loss::SiSnrMode::kStandard;
  std::string fusion = "mean";
  double enhancement_weight = 1.0;  // L_TASE term weights
  double sv_weight = 1.0;

  loss::SvLossWeights sv_weights;   // omega1 = 0.2, omega2 = 0.001
  loss::LmclOptions lmcl;           // margin 0.2, scale 30
  double triplet_margin = 0.2;

  int student_channels = 64;
  int teacher_channels = 256;
  models::EnhancerConfig enhancer;

  int steps_per_epoch = 0;   // 0: derived from the corpus size
  size_t mix_samples = 2 * dsp::kSampleRateHz;
  int num_enrollment = 3;
  bool allow_undistilled = false;
  bool end_to_end = false;   // train net 1 from scratch in the joint stage

  std::string speakers_dir, corpus_dir, model_dir;
};

// Applies stage-specific defaults (finetune: lr 1e-6, 1 epoch). Runs when
// the `stage` key is parsed, so keys on later lines still override.
void ApplyStageDefaults(StageConfig *config);

// Flat "key value" lines; '#' comments. Later keys win. "11:1"-style ratios
// are accepted for nontarget_ratio.
StageConfig LoadConfig(const std::string &path);
void ParseConfigLine(const std::string &line, StageConfig *config);

double ParseRatio(const std::string &text);  // "11:1" -> 11.0, "inf" ok

}  // namespace pipeline
}  // namespace tase

#endif  // TASE_PIPELINE_CONFIG_H_
