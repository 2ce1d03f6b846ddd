// pipeline/stages.h

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

#ifndef TASE_PIPELINE_STAGES_H_
#define TASE_PIPELINE_STAGES_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mix/triplet.h"
#include "models/enhancer.h"
#include "models/meta.h"
#include "nnet/optimizer.h"
#include "pipeline/config.h"

namespace tase {
namespace pipeline {

// An embedder under (or after) supervised training: the network, its
// classifier head, and the per-step loss trail. Each training step is a
// pure function of (parameters, seed, step index), so fixed seeds reproduce
// loss trails and resumed runs rejoin the same stream.
struct TrainedEmbedder {
  nnet::Network<float> net;
  nnet::Parameter<float> class_weights;  // raw rows; normalized inside steps
  bool distilled = false;
  std::vector<double> step_losses;
  std::vector<double> epoch_losses;
};

// One L_SV (+ optional distillation) step over a random P x K batch.
// Returns the batch loss value; gradients are applied and cleared.
struct EmbedderStepStats {
  double sv = 0.0;
  double mse = 0.0;
  double total = 0.0;
};

class EmbedderTrainer {
 public:
  EmbedderTrainer(TrainedEmbedder *target, const StageConfig &config,
                  int num_classes, uint64_t stream_tag);

  // `teacher`: when non-null, adds the embedding-regression term
  // (L_S = L_SV + L_MSE) with the teacher frozen.
  EmbedderStepStats Step(const mix::SpeakerCorpus &corpus, int step,
                         const nnet::Network<float> *teacher);

  // Loss of the upcoming step without applying it (for resume checks).
  EmbedderStepStats PeekStep(const mix::SpeakerCorpus &corpus, int step,
                             const nnet::Network<float> *teacher);

 private:
  EmbedderStepStats RunStep(const mix::SpeakerCorpus &corpus, int step,
                            const nnet::Network<float> *teacher, bool apply);

  TrainedEmbedder *target_;
  StageConfig config_;
  uint64_t stream_tag_;
  nnet::Optimizer<float> optimizer_;
};

struct Stage1Result {
  TrainedEmbedder student;
  TrainedEmbedder teacher;
};

// Stage 1a: supervised pretraining of the student and teacher embedders
// with L_SV on clean labeled speech. Throws when the corpus has fewer than
// two speakers.
Stage1Result Stage1Pretrain(const mix::SpeakerCorpus &corpus,
                            const StageConfig &config);

// Also usable stand-alone (e.g. to train a single embedder).
TrainedEmbedder PretrainEmbedder(const mix::SpeakerCorpus &corpus,
                                 const StageConfig &config, int channels,
                                 const std::string &name, uint64_t stream_tag);

// Stage 1b: teacher/student distillation; the student trains with
// L_S = L_SV + L_MSE against frozen teacher embeddings and is marked
// distilled. Embedding dimensions must match. A teacher whose embeddings
// barely vary across utterances is flagged as degenerate (the student would
// be regressed onto a constant).
struct DistillResult {
  bool degenerate_teacher = false;
  double teacher_first_batch_cosine = 0.0;
};

DistillResult TsDistill(const nnet::Network<float> &teacher,
                        TrainedEmbedder *student,
                        const mix::SpeakerCorpus &corpus,
                        const StageConfig &config);

// Stage 2: joint training of the enhancer (from scratch) and net 1
// (initialized from the distilled student) on target/nontarget triplets with
// L_TASE. Refuses a non-distilled net 1 unless allow_undistilled is set.
// A pregenerated corpus without nontarget triplets only warns.
struct JointTrainResult {
  std::vector<double> step_losses;
  std::vector<double> step_enhancement_losses;
  double first_step_enhancer_grad_norm = 0.0;
  double first_step_embedder_grad_norm = 0.0;
};

JointTrainResult Stage2JointTrain(models::Enhancer<float> *enhancer,
                                  TrainedEmbedder *net1,
                                  const mix::SpeakerCorpus &corpus,
                                  const StageConfig &config);

// Stage 3: the enhancer and net 1 are frozen; net 2 fine-tunes with the
// triplet loss only, on a 50/50 stream of enhanced and raw utterances.
struct FinetuneResult {
  std::vector<double> step_losses;
  double max_grad_abs = 0.0;  // largest per-element gradient seen
};

FinetuneResult Stage3Finetune(nnet::Network<float> *net2,
                              const models::Enhancer<float> &enhancer,
                              const nnet::Network<float> &net1,
                              const mix::SpeakerCorpus &corpus,
                              const StageConfig &config);

// Model directory layout helpers (checkpoint + sidecar meta).
void SaveEmbedder(const std::string &dir, const std::string &name,
                  const TrainedEmbedder &embedder, int channels);
TrainedEmbedder LoadEmbedder(const std::string &dir, const std::string &name,
                             const StageConfig &config);

}  // namespace pipeline
}  // namespace tase

#endif  // TASE_PIPELINE_STAGES_H_
