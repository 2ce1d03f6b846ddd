// pipeline/config.cc

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

#include "pipeline/config.h"

#include <fstream>
#include <sstream>

#include "base/common.h"
#include "mix/manifest.h"

namespace tase {
namespace pipeline {

double ParseRatio(const std::string &text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) return mix::ParseDb(text);  // plain number
  const double lhs = std::stod(text.substr(0, colon));
  const double rhs = std::stod(text.substr(colon + 1));
  TASE_CHECK(rhs > 0.0, "ParseRatio: bad ratio '", text, "'");
  return lhs / rhs;
}

void ApplyStageDefaults(StageConfig *config) {
  if (config->stage == "finetune") {
    config->learning_rate = 1e-6;
    config->epochs = 1;
  }
}

namespace {

loss::SiSnrMode ParseMode(const std::string &v) {
  if (v == "standard") return loss::SiSnrMode::kStandard;
  if (v == "literal") return loss::SiSnrMode::kLiteral;
  throw std::invalid_argument(StrCat("config: bad si-snr mode '", v, "'"));
}

}  // namespace

void ParseConfigLine(const std::string &line, StageConfig *config) {
  std::istringstream ss(line);
  std::string key, value;
  ss >> key;
  if (key.empty() || key[0] == '#') return;
  ss >> value;
  TASE_CHECK(!value.empty(), "config: key '", key, "' has no value");

  if (key == "stage") {
    config->stage = value;
    // Stage defaults kick in here; keys on later lines still override them.
    ApplyStageDefaults(config);
  }
  else if (key == "epochs") config->epochs = std::stoi(value);
  else if (key == "lr") config->learning_rate = std::stod(value);
  else if (key == "batch") config->batch = std::stoi(value);
  else if (key == "speakers_per_batch") config->speakers_per_batch = std::stoi(value);
  else if (key == "joint_batch") config->joint_batch = std::stoi(value);
  else if (key == "seed") config->seed = std::stoull(value);
  else if (key == "nontarget_ratio") config->nontarget_ratio = ParseRatio(value);
  else if (key == "si_snr_mode") config->si_snr_mode = ParseMode(value);
  else if (key == "null_mode") config->null_mode = ParseMode(value);
  else if (key == "fusion") config->fusion = value;
  else if (key == "enhancement_weight") config->enhancement_weight = std::stod(value);
  else if (key == "sv_weight") config->sv_weight = std::stod(value);
  else if (key == "omega1") config->sv_weights.omega1 = std::stod(value);
  else if (key == "omega2") config->sv_weights.omega2 = std::stod(value);
  else if (key == "lmcl_margin") config->lmcl.margin = std::stod(value);
  else if (key == "lmcl_scale") config->lmcl.scale = std::stod(value);
  else if (key == "triplet_margin") config->triplet_margin = std::stod(value);
  else if (key == "student_channels") config->student_channels = std::stoi(value);
  else if (key == "teacher_channels") config->teacher_channels = std::stoi(value);
  else if (key == "encoder_channels") config->enhancer.encoder_channels = std::stoi(value);
  else if (key == "bottleneck_channels") config->enhancer.bottleneck_channels = std::stoi(value);
  else if (key == "mask_blocks") config->enhancer.mask_blocks = std::stoi(value);
  else if (key == "steps_per_epoch") config->steps_per_epoch = std::stoi(value);
  else if (key == "mix_samples") config->mix_samples = std::stoull(value);
  else if (key == "num_enrollment") config->num_enrollment = std::stoi(value);
  else if (key == "allow_undistilled") config->allow_undistilled = value != "0";
  else if (key == "end_to_end") config->end_to_end = value != "0";
  else if (key == "speakers_dir") config->speakers_dir = value;
  else if (key == "corpus_dir") config->corpus_dir = value;
  else if (key == "model_dir") config->model_dir = value;
  else throw std::invalid_argument(StrCat("config: unknown key '", key, "'"));
}

StageConfig LoadConfig(const std::string &path) {
  std::ifstream in(path);
  TASE_CHECK(in.good(), "LoadConfig: cannot open ", path);
  StageConfig config;
  std::string line;
  while (std::getline(in, line)) ParseConfigLine(line, &config);
  return config;
}

}  // namespace pipeline
}  // namespace tase
