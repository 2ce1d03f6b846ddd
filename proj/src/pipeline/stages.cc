// pipeline/stages.cc

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

#include "pipeline/stages.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "losses/si_snr.h"
#include "mix/manifest.h"
#include "nnet/checkpoint.h"

namespace tase {
namespace pipeline {

namespace {

// Distinct per-stage rng stream tags.
constexpr uint64_t kStudentStream = 0x574;
constexpr uint64_t kTeacherStream = 0x7ea;
constexpr uint64_t kDistillStream = 0xd15;
constexpr uint64_t kJointStream = 0x301;
constexpr uint64_t kFinetuneStream = 0xf17;

struct BatchItem {
  int speaker;
  int utterance;
};

// P speakers x K utterances, speakers without replacement.
std::vector<BatchItem> AssembleBatch(const mix::SpeakerCorpus &corpus,
                                     int speakers_per_batch, int batch,
                                     Rng &rng) {
  const int n_speakers = corpus.NumSpeakers();
  const int p = std::min(speakers_per_batch, n_speakers);
  const int k = std::max(2, batch / std::max(p, 1));

  std::vector<int> pool(n_speakers);
  for (int i = 0; i < n_speakers; ++i) pool[i] = i;
  std::vector<BatchItem> items;
  for (int i = 0; i < p; ++i) {
    const size_t j = static_cast<size_t>(
        UniformInt(rng, i, static_cast<int64_t>(n_speakers) - 1));
    std::swap(pool[i], pool[j]);
    const int spk = pool[i];
    const int n_utts =
        static_cast<int>(corpus.speakers[spk].utterances.size());
    for (int u = 0; u < k; ++u)
      items.push_back(
          {spk, static_cast<int>(UniformInt(rng, 0, n_utts - 1))});
  }
  return items;
}

loss::Matrix RowNormalized(const nnet::Tensor<float> &raw,
                           std::vector<double> *norms) {
  loss::Matrix out(raw.rows, raw.cols);
  norms->resize(raw.rows);
  for (int r = 0; r < raw.rows; ++r) {
    double norm_sq = 0.0;
    for (int c = 0; c < raw.cols; ++c)
      norm_sq += static_cast<double>(raw.at(r, c)) * raw.at(r, c);
    const double norm = std::sqrt(std::max(norm_sq, 1e-24));
    (*norms)[r] = norm;
    for (int c = 0; c < raw.cols; ++c) out.at(r, c) = raw.at(r, c) / norm;
  }
  return out;
}

// Gradient of row normalization: g_raw = (g - wn * <wn, g>) / norm.
void RowNormalizedBackward(const loss::Matrix &normalized,
                           const std::vector<double> &norms,
                           const loss::Matrix &grads, double scale,
                           nnet::Parameter<float> *raw) {
  for (size_t r = 0; r < normalized.rows; ++r) {
    double dot = 0.0;
    for (size_t c = 0; c < normalized.cols; ++c)
      dot += normalized.at(r, c) * grads.at(r, c);
    for (size_t c = 0; c < normalized.cols; ++c) {
      const double g =
          (grads.at(r, c) - normalized.at(r, c) * dot) / norms[r];
      raw->grad.at(static_cast<int>(r), static_cast<int>(c)) +=
          static_cast<float>(scale * g);
    }
  }
}

nnet::Tensor<float> WaveTensor(const dsp::Waveform &w) {
  nnet::Tensor<float> t(1, static_cast<int>(w.size()));
  for (size_t i = 0; i < w.size(); ++i)
    t.v[i] = static_cast<float>(w.samples[i]);
  return t;
}

std::vector<double> TensorToVector(const nnet::Tensor<float> &t) {
  return std::vector<double>(t.v.begin(), t.v.end());
}

loss::Matrix EmbeddingsMatrix(const std::vector<nnet::Tensor<float>> &embs) {
  loss::Matrix m(embs.size(), embs.empty() ? 0 : embs[0].size());
  for (size_t i = 0; i < embs.size(); ++i)
    for (size_t j = 0; j < embs[i].size(); ++j)
      m.at(i, j) = embs[i].v[j];
  return m;
}

nnet::Tensor<float> RowGrad(const loss::Matrix &grads, size_t row, int dim,
                            double scale) {
  nnet::Tensor<float> g(dim, 1);
  for (int j = 0; j < dim; ++j)
    g.v[j] = static_cast<float>(scale * grads.at(row, j));
  return g;
}

double GradNormSq(const std::vector<nnet::Parameter<float> *> &params) {
  double acc = 0.0;
  for (const auto *p : params)
    for (float g : p->grad.v) acc += static_cast<double>(g) * g;
  return acc;
}

}  // namespace

EmbedderTrainer::EmbedderTrainer(TrainedEmbedder *target,
                                 const StageConfig &config, int num_classes,
                                 uint64_t stream_tag)
    : target_(target),
      config_(config),
      stream_tag_(stream_tag),
      optimizer_(nnet::OptimizerOptions::Adam(config.learning_rate)) {
  if (target_->class_weights.value.rows != num_classes) {
    target_->class_weights.name = target_->net.name() + ".class_weights";
    target_->class_weights.value =
        nnet::Tensor<float>(num_classes, models::kEmbeddingDim);
    Rng rng = MakeRng(config.seed, stream_tag ^ 0xc1a55);
    nnet::UniformInit(&target_->class_weights.value, 0.1, rng);
    target_->class_weights.EnsureGradShape();
  }
}

EmbedderStepStats EmbedderTrainer::Step(const mix::SpeakerCorpus &corpus,
                                        int step,
                                        const nnet::Network<float> *teacher) {
  return RunStep(corpus, step, teacher, /*apply=*/true);
}

EmbedderStepStats EmbedderTrainer::PeekStep(
    const mix::SpeakerCorpus &corpus, int step,
    const nnet::Network<float> *teacher) {
  return RunStep(corpus, step, teacher, /*apply=*/false);
}

EmbedderStepStats EmbedderTrainer::RunStep(const mix::SpeakerCorpus &corpus,
                                           int step,
                                           const nnet::Network<float> *teacher,
                                           bool apply) {
  Rng rng = MakeRng(MixSeed(config_.seed, stream_tag_), step);
  const std::vector<BatchItem> batch =
      AssembleBatch(corpus, config_.speakers_per_batch, config_.batch, rng);

  std::vector<nnet::Trace<float>> traces(batch.size());
  std::vector<nnet::Tensor<float>> embeddings;
  std::vector<nnet::Tensor<float>> teacher_embeddings;
  std::vector<int> labels;
  for (size_t i = 0; i < batch.size(); ++i) {
    const dsp::Waveform &utt =
        corpus.speakers[batch[i].speaker].utterances[batch[i].utterance];
    const dsp::FeatureMatrix feats = models::EmbedderFrontendSegment(utt, rng);
    const nnet::Tensor<float> x = models::FeatureInput<float>(feats);
    embeddings.push_back(target_->net.Forward(x, apply ? &traces[i] : nullptr));
    if (teacher != nullptr) teacher_embeddings.push_back(teacher->Forward(x));
    labels.push_back(batch[i].speaker);
  }

  const loss::Matrix emb = EmbeddingsMatrix(embeddings);
  std::vector<double> weight_norms;
  const loss::Matrix weights =
      RowNormalized(target_->class_weights.value, &weight_norms);

  const loss::LossOutput lmcl = loss::Lmcl(emb, labels, weights, config_.lmcl);
  const loss::LossOutput triplet =
      loss::MinedTripletLoss(emb, labels, config_.triplet_margin);
  loss::LossOutput l2;
  l2.value = target_->net.L2Penalty(0.0, false);
  loss::LossOutput sv = loss::SvLoss(triplet, lmcl, l2, config_.sv_weights);

  EmbedderStepStats stats;
  stats.sv = sv.value;
  loss::LossOutput mse;
  if (teacher != nullptr) {
    mse = loss::TsMse(EmbeddingsMatrix(teacher_embeddings), emb);
    stats.mse = mse.value;
  }
  stats.total = stats.sv + stats.mse;

  if (apply) {
    const loss::Matrix &emb_grads = sv.gradients.at("embeddings");
    const int dim = static_cast<int>(emb.cols);
    for (size_t i = 0; i < batch.size(); ++i) {
      nnet::Tensor<float> g = RowGrad(emb_grads, i, dim, 1.0);
      if (teacher != nullptr) {
        const loss::Matrix &mse_grads = mse.gradients.at("student");
        for (int j = 0; j < dim; ++j)
          g.v[j] += static_cast<float>(mse_grads.at(i, j));
      }
      target_->net.Backward(traces[i], g);
    }
    RowNormalizedBackward(weights, weight_norms,
                          sv.gradients.at("class_weights"), 1.0,
                          &target_->class_weights);
    target_->net.L2Penalty(config_.sv_weights.omega2, true);

    std::vector<nnet::Parameter<float> *> params = target_->net.Parameters();
    params.push_back(&target_->class_weights);
    optimizer_.Step(params);
    target_->net.BumpVersion();
  }
  return stats;
}

TrainedEmbedder PretrainEmbedder(const mix::SpeakerCorpus &corpus,
                                 const StageConfig &config, int channels,
                                 const std::string &name,
                                 uint64_t stream_tag) {
  TASE_CHECK(corpus.NumSpeakers() >= 2,
             "PretrainEmbedder: need >= 2 speaker classes, got ",
             corpus.NumSpeakers());
  models::EmbedderConfig emb_cfg;
  emb_cfg.channels = channels;
  TrainedEmbedder trained{
      models::MakeTdnnEmbedder<float>(emb_cfg, MixSeed(config.seed, stream_tag),
                                      name),
      {}, false, {}, {}};
  EmbedderTrainer trainer(&trained, config, corpus.NumSpeakers(), stream_tag);

  size_t total_utts = 0;
  for (const auto &spk : corpus.speakers) total_utts += spk.utterances.size();
  const int steps_per_epoch =
      config.steps_per_epoch > 0
          ? config.steps_per_epoch
          : std::max<int>(1, static_cast<int>(total_utts) / config.batch);

  int step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (int s = 0; s < steps_per_epoch; ++s, ++step) {
      const EmbedderStepStats stats = trainer.Step(corpus, step, nullptr);
      trained.step_losses.push_back(stats.total);
      epoch_loss += stats.total;
    }
    trained.epoch_losses.push_back(epoch_loss / steps_per_epoch);
  }
  return trained;
}

Stage1Result Stage1Pretrain(const mix::SpeakerCorpus &corpus,
                            const StageConfig &config) {
  Stage1Result result{
      PretrainEmbedder(corpus, config, config.student_channels, "student",
                       kStudentStream),
      PretrainEmbedder(corpus, config, config.teacher_channels, "teacher",
                       kTeacherStream)};
  return result;
}

DistillResult TsDistill(const nnet::Network<float> &teacher,
                        TrainedEmbedder *student,
                        const mix::SpeakerCorpus &corpus,
                        const StageConfig &config) {
  // Probe the output dimensions once; a mismatch invalidates the MSE term.
  {
    const dsp::Waveform &utt = corpus.speakers[0].utterances[0];
    const nnet::Tensor<float> x =
        models::FeatureInput<float>(models::EmbedderFrontend(utt));
    const nnet::Tensor<float> ts = teacher.Forward(x);
    const nnet::Tensor<float> ss = student->net.Forward(x);
    TASE_CHECK(ts.rows == ss.rows,
               "TsDistill: embedding dimension mismatch (teacher ", ts.rows,
               " vs student ", ss.rows, ")");
  }

  // Degenerate-teacher detector: a constant-output teacher has pairwise
  // cosine ~1 across distinct utterances and would regress the student onto
  // a single point.
  DistillResult result;
  {
    std::vector<nnet::Tensor<float>> probes;
    for (const auto &spk : corpus.speakers) {
      probes.push_back(models::Embed(teacher, spk.utterances[0]));
      if (probes.size() >= 6) break;
    }
    double acc = 0.0;
    int n = 0;
    for (size_t i = 0; i < probes.size(); ++i)
      for (size_t j = i + 1; j < probes.size(); ++j, ++n)
        acc += models::CosineSimilarity(probes[i], probes[j]);
    result.teacher_first_batch_cosine = n > 0 ? acc / n : 1.0;
    if (result.teacher_first_batch_cosine > 0.999) {
      result.degenerate_teacher = true;
      std::fprintf(stderr,
                   "TsDistill: warning: teacher embeddings look degenerate "
                   "(mean pairwise cosine %.4f); the student would collapse "
                   "toward a constant output\n",
                   result.teacher_first_batch_cosine);
    }
  }

  EmbedderTrainer trainer(student, config, corpus.NumSpeakers(),
                          kDistillStream);
  size_t total_utts = 0;
  for (const auto &spk : corpus.speakers) total_utts += spk.utterances.size();
  const int steps_per_epoch =
      config.steps_per_epoch > 0
          ? config.steps_per_epoch
          : std::max<int>(1, static_cast<int>(total_utts) / config.batch);

  int step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (int s = 0; s < steps_per_epoch; ++s, ++step) {
      const EmbedderStepStats stats = trainer.Step(corpus, step, &teacher);
      student->step_losses.push_back(stats.total);
      epoch_loss += stats.total;
    }
    student->epoch_losses.push_back(epoch_loss / steps_per_epoch);
  }
  student->distilled = true;
  return result;
}

JointTrainResult Stage2JointTrain(models::Enhancer<float> *enhancer,
                                  TrainedEmbedder *net1,
                                  const mix::SpeakerCorpus &corpus,
                                  const StageConfig &config) {
  TASE_CHECK(net1->distilled || config.allow_undistilled || config.end_to_end,
             "Stage2JointTrain: net 1 checkpoint is not tagged as distilled; "
             "set allow_undistilled to proceed anyway");

  mix::TripletSamplerOptions sampler;
  sampler.nontarget_ratio = config.nontarget_ratio;
  sampler.num_enrollment = config.num_enrollment;
  sampler.mix_samples = config.mix_samples;

  EmbedderTrainer head_holder(net1, config, corpus.NumSpeakers(),
                              kJointStream ^ 0x77);  // ensures class weights
  nnet::Optimizer<float> optimizer(
      nnet::OptimizerOptions::Adam(config.learning_rate));

  const int steps = config.steps_per_epoch > 0 ? config.steps_per_epoch * config.epochs
                                               : 1000 * config.epochs;
  const int batch = std::max(1, config.joint_batch);

  loss::NullBranchOptions null_opts;
  null_opts.target_branch.mode = config.si_snr_mode;
  null_opts.null_branch.mode = config.null_mode;

  JointTrainResult result;
  int nontargets_seen = 0;
  for (int step = 0; step < steps; ++step) {
    Rng rng = MakeRng(MixSeed(config.seed, kJointStream), step);

    struct Item {
      mix::TrainingTriplet triplet;
      std::vector<nnet::Trace<float>> enroll_traces;
      std::vector<nnet::Tensor<float>> enroll_embs;
      nnet::Tensor<float> bias;
      double mean_norm = 0.0;
      models::Enhancer<float>::ForwardTrace etrace;
      loss::LossOutput si;
    };
    std::vector<Item> items(batch);
    std::vector<nnet::Tensor<float>> all_embs;
    std::vector<int> all_labels;

    double enh_loss_sum = 0.0;
    for (int b = 0; b < batch; ++b) {
      Item &item = items[b];
      item.triplet = mix::SampleTriplet(corpus, rng, sampler);
      nontargets_seen +=
          item.triplet.label == mix::TripletLabel::kNontarget;

      item.enroll_traces.resize(item.triplet.enrollment.size());
      for (size_t e = 0; e < item.triplet.enrollment.size(); ++e) {
        const nnet::Tensor<float> x = models::FeatureInput<float>(
            models::EmbedderFrontend(item.triplet.enrollment[e]));
        item.enroll_embs.push_back(
            net1->net.Forward(x, &item.enroll_traces[e]));
        all_embs.push_back(item.enroll_embs.back());
        all_labels.push_back(item.triplet.enrolled_speaker);
      }
      item.bias = models::NormalizedMean(item.enroll_embs, &item.mean_norm);

      const nnet::Tensor<float> est = enhancer->Forward(
          WaveTensor(item.triplet.test_mixture), item.bias, &item.etrace);
      const std::vector<double> est_d = TensorToVector(est);
      if (item.triplet.label == mix::TripletLabel::kTarget) {
        item.si = loss::SiSnr(std::span<const double>(est_d),
                              std::span<const double>(item.triplet.reference.samples),
                              null_opts.target_branch);
      } else {
        dsp::Waveform null_ref =
            mix::NullReference(est_d.size(), rng);
        item.si = loss::SiSnr(std::span<const double>(est_d),
                              std::span<const double>(null_ref.samples),
                              null_opts.null_branch);
        item.si.gradients.erase("target");
      }
      enh_loss_sum += -item.si.value;
    }

    // Speaker-verification terms over the batch's enrollment embeddings.
    const loss::Matrix emb = EmbeddingsMatrix(all_embs);
    std::vector<double> weight_norms;
    const loss::Matrix weights =
        RowNormalized(net1->class_weights.value, &weight_norms);
    const loss::LossOutput lmcl =
        loss::Lmcl(emb, all_labels, weights, config.lmcl);
    const loss::LossOutput mined =
        loss::MinedTripletLoss(emb, all_labels, config.triplet_margin);
    loss::LossOutput l2;
    l2.value = net1->net.L2Penalty(0.0, false);
    const loss::LossOutput sv = loss::SvLoss(mined, lmcl, l2, config.sv_weights);

    const double enh_loss = enh_loss_sum / batch;
    const double total =
        config.enhancement_weight * enh_loss + config.sv_weight * sv.value;
    result.step_losses.push_back(total);
    result.step_enhancement_losses.push_back(enh_loss);

    // Backward. Enhancement branch: dTotal/d est = -w_e/B * dSI/d est.
    const loss::Matrix &sv_grads = sv.gradients.at("embeddings");
    const int dim = models::kEmbeddingDim;
    size_t row = 0;
    for (Item &item : items) {
      const loss::Matrix &gsi = item.si.gradients.at("estimate");
      nnet::Tensor<float> gout(1, static_cast<int>(gsi.size()));
      const double scale = -config.enhancement_weight / batch;
      for (size_t i = 0; i < gsi.size(); ++i)
        gout.v[i] = static_cast<float>(scale * gsi.v[i]);
      const auto back = enhancer->Backward(item.etrace, gout);

      const std::vector<nnet::Tensor<float>> bias_grads =
          models::NormalizedMeanBackward(item.bias, item.mean_norm,
                                         item.enroll_embs.size(),
                                         back.bias_grad);
      for (size_t e = 0; e < item.enroll_traces.size(); ++e, ++row) {
        nnet::Tensor<float> g = bias_grads[e];
        for (int j = 0; j < dim; ++j)
          g.v[j] += static_cast<float>(config.sv_weight * sv_grads.at(row, j));
        net1->net.Backward(item.enroll_traces[e], g);
      }
    }
    RowNormalizedBackward(weights, weight_norms,
                          sv.gradients.at("class_weights"), config.sv_weight,
                          &net1->class_weights);
    net1->net.L2Penalty(config.sv_weight * config.sv_weights.omega2, true);

    std::vector<nnet::Parameter<float> *> params = enhancer->Parameters();
    if (step == 0) {
      result.first_step_enhancer_grad_norm = std::sqrt(GradNormSq(params));
      result.first_step_embedder_grad_norm =
          std::sqrt(GradNormSq(net1->net.Parameters()));
    }
    for (auto *p : net1->net.Parameters()) params.push_back(p);
    params.push_back(&net1->class_weights);
    optimizer.Step(params);
    enhancer->BumpVersion();
    net1->net.BumpVersion();
  }
  if (config.nontarget_ratio > 0.0 && !std::isinf(config.nontarget_ratio) &&
      nontargets_seen == 0) {
    std::fprintf(stderr,
                 "Stage2JointTrain: warning: no nontarget triplets were seen "
                 "although nontarget_ratio is %g\n",
                 config.nontarget_ratio);
  }
  return result;
}

FinetuneResult Stage3Finetune(nnet::Network<float> *net2,
                              const models::Enhancer<float> &enhancer,
                              const nnet::Network<float> &net1,
                              const mix::SpeakerCorpus &corpus,
                              const StageConfig &config) {
  // Per-speaker anchor biases from the (frozen) net 1.
  std::vector<nnet::Tensor<float>> biases;
  for (const auto &spk : corpus.speakers) {
    std::vector<dsp::Waveform> enroll(
        spk.utterances.begin(),
        spk.utterances.begin() +
            std::min<size_t>(spk.utterances.size(), 3));
    biases.push_back(models::EnrollBias(net1, enroll));
  }

  nnet::Optimizer<float> optimizer(
      nnet::OptimizerOptions::Sgd(config.learning_rate));

  size_t total_utts = 0;
  for (const auto &spk : corpus.speakers) total_utts += spk.utterances.size();
  const int steps_per_epoch =
      config.steps_per_epoch > 0
          ? config.steps_per_epoch
          : std::max<int>(1, static_cast<int>(total_utts) / config.batch);

  FinetuneResult result;
  int step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (int s = 0; s < steps_per_epoch; ++s, ++step) {
      Rng rng = MakeRng(MixSeed(config.seed, kFinetuneStream), step);
      const std::vector<BatchItem> batch = AssembleBatch(
          corpus, config.speakers_per_batch, config.batch, rng);

      std::vector<nnet::Trace<float>> traces(batch.size());
      std::vector<nnet::Tensor<float>> embeddings;
      std::vector<int> labels;
      for (size_t i = 0; i < batch.size(); ++i) {
        const auto &spk = corpus.speakers[batch[i].speaker];
        dsp::Waveform utt = spk.utterances[batch[i].utterance];
        if (UniformReal(rng, 0.0, 1.0) < 0.5)  // 50/50 enhanced vs raw
          utt = enhancer.Enhance(utt, biases[batch[i].speaker]);
        const dsp::FeatureMatrix feats =
            models::EmbedderFrontendSegment(utt, rng);
        embeddings.push_back(
            net2->Forward(models::FeatureInput<float>(feats), &traces[i]));
        labels.push_back(batch[i].speaker);
      }

      const loss::Matrix emb = EmbeddingsMatrix(embeddings);
      const loss::LossOutput mined =
          loss::MinedTripletLoss(emb, labels, config.triplet_margin);
      result.step_losses.push_back(mined.value);

      const loss::Matrix &grads = mined.gradients.at("embeddings");
      for (size_t i = 0; i < batch.size(); ++i)
        net2->Backward(traces[i],
                       RowGrad(grads, i, static_cast<int>(emb.cols), 1.0));
      for (const auto *p : std::as_const(*net2).Parameters())
        for (float g : p->grad.v)
          result.max_grad_abs =
              std::max(result.max_grad_abs, std::abs(static_cast<double>(g)));
      optimizer.Step(net2->Parameters());
      net2->BumpVersion();
    }
  }
  return result;
}

void SaveEmbedder(const std::string &dir, const std::string &name,
                  const TrainedEmbedder &embedder, int channels) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<nnet::CheckpointRecord> records =
      nnet::SnapshotNetwork(embedder.net);
  if (embedder.class_weights.value.size() > 0) {
    nnet::CheckpointRecord w;
    w.name = embedder.class_weights.name;
    w.shape = {static_cast<uint32_t>(embedder.class_weights.value.rows),
               static_cast<uint32_t>(embedder.class_weights.value.cols)};
    w.data.assign(embedder.class_weights.value.v.begin(),
                  embedder.class_weights.value.v.end());
    records.push_back(std::move(w));
  }
  nnet::WriteCheckpoint((fs::path(dir) / (name + ".ckpt")).string(), records);

  models::ModelMeta meta;
  meta.kind = "tdnn_embedder";
  meta.channels = channels;
  meta.distilled = embedder.distilled;
  models::WriteModelMeta((fs::path(dir) / (name + ".meta")).string(), meta);
}

TrainedEmbedder LoadEmbedder(const std::string &dir, const std::string &name,
                             const StageConfig &config) {
  namespace fs = std::filesystem;
  const models::ModelMeta meta =
      models::ReadModelMeta((fs::path(dir) / (name + ".meta")).string());
  TASE_CHECK(meta.kind == "tdnn_embedder", "LoadEmbedder: '", name,
             "' is not an embedder checkpoint");
  TrainedEmbedder embedder{
      models::MakeTdnnEmbedder<float>(meta.AsEmbedderConfig(), config.seed,
                                      name),
      {}, meta.distilled, {}, {}};

  const std::string weights_name = name + ".class_weights";
  std::vector<nnet::CheckpointRecord> net_records;
  for (auto &rec :
       nnet::ReadCheckpoint((fs::path(dir) / (name + ".ckpt")).string())) {
    if (rec.name == weights_name) {
      embedder.class_weights.name = rec.name;
      embedder.class_weights.value = nnet::Tensor<float>(
          static_cast<int>(rec.shape[0]), static_cast<int>(rec.shape[1]));
      embedder.class_weights.value.v.assign(rec.data.begin(), rec.data.end());
      embedder.class_weights.EnsureGradShape();
    } else {
      net_records.push_back(std::move(rec));
    }
  }
  nnet::RestoreNetwork(net_records, &embedder.net);
  return embedder;
}

}  // namespace pipeline
}  // namespace tase
