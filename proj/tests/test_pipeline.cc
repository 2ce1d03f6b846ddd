// tests/test_pipeline.cc

#include <cmath>
#include <filesystem>
#include <fstream>

#include "base/rng.h"
#include "doctest.h"
#include "mix/synth.h"
#include "nnet/checkpoint.h"
#include "pipeline/config.h"
#include "pipeline/stages.h"
#include "pipeline/verify.h"

using namespace tase;
using pipeline::StageConfig;

namespace {

mix::SpeakerCorpus ToyCorpus(int speakers, int utts, double dur_s,
                             uint64_t seed) {
  mix::SpeakerCorpus corpus;
  for (int s = 0; s < speakers; ++s) {
    Rng rng = MakeRng(seed, s);
    mix::SpeakerUtterances spk;
    spk.speaker_id = "spk" + std::to_string(s);
    mix::VoiceProfile voice = mix::SampleVoice(rng);
    for (int u = 0; u < utts; ++u) {
      spk.utterances.push_back(mix::SynthUtterance(voice, dur_s, rng));
      spk.utterance_ids.push_back(spk.speaker_id + "/u" + std::to_string(u));
    }
    corpus.speakers.push_back(std::move(spk));
  }
  return corpus;
}

// Small-but-trainable settings for smoke runs.
StageConfig TinyConfig(uint64_t seed) {
  StageConfig cfg;
  cfg.seed = seed;
  cfg.epochs = 1;
  cfg.batch = 8;
  cfg.speakers_per_batch = 4;
  cfg.steps_per_epoch = 4;
  cfg.student_channels = 16;
  cfg.teacher_channels = 32;
  cfg.enhancer.encoder_channels = 16;
  cfg.enhancer.bottleneck_channels = 8;
  cfg.enhancer.mask_blocks = 2;
  cfg.mix_samples = 8000;
  return cfg;
}

std::vector<float> FlattenParams(
    const std::vector<const nnet::Parameter<float> *> &params) {
  std::vector<float> out;
  for (const auto *p : params)
    out.insert(out.end(), p->value.v.begin(), p->value.v.end());
  return out;
}

}  // namespace

TEST_CASE("config: ratios, stage defaults, unknown keys") {
  CHECK(pipeline::ParseRatio("11:1") == doctest::Approx(11.0));
  CHECK(pipeline::ParseRatio("3:2") == doctest::Approx(1.5));
  CHECK(pipeline::ParseRatio("7") == doctest::Approx(7.0));
  CHECK(std::isinf(pipeline::ParseRatio("inf")));

  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "tase_cfg.txt").string();
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "stage finetune\n"
        << "seed 9\n"
        << "nontarget_ratio 11:1\n";
  }
  StageConfig cfg = pipeline::LoadConfig(path);
  CHECK(cfg.stage == "finetune");
  CHECK(cfg.learning_rate == doctest::Approx(1e-6));  // stage default
  CHECK(cfg.epochs == 1);
  CHECK(cfg.seed == 9);
  CHECK(cfg.nontarget_ratio == doctest::Approx(11.0));

  {
    std::ofstream out(path);
    out << "stage finetune\nlr 0.5\n";  // later keys override defaults
  }
  CHECK(pipeline::LoadConfig(path).learning_rate == doctest::Approx(0.5));

  {
    std::ofstream out(path);
    out << "bogus_key 1\n";
  }
  CHECK_THROWS_AS(pipeline::LoadConfig(path), std::invalid_argument);
  fs::remove(path);
}

TEST_CASE("pretrain: losses drop, fixed seeds reproduce them bit-exactly") {
  mix::SpeakerCorpus corpus = ToyCorpus(4, 3, 1.0, 100);
  StageConfig cfg = TinyConfig(5);
  cfg.epochs = 3;
  cfg.steps_per_epoch = 6;

  pipeline::TrainedEmbedder a = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.student_channels, "student", 1);
  REQUIRE(a.epoch_losses.size() == 3);
  for (double l : a.step_losses) CHECK(std::isfinite(l));
  CHECK(a.epoch_losses.back() < a.epoch_losses.front());

  pipeline::TrainedEmbedder b = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.student_channels, "student", 1);
  CHECK(a.step_losses == b.step_losses);  // bit-identical loss trail
  CHECK(FlattenParams(std::as_const(a.net).Parameters()) ==
        FlattenParams(std::as_const(b.net).Parameters()));
}

TEST_CASE("pretrain: rejects single-class corpora") {
  mix::SpeakerCorpus corpus = ToyCorpus(1, 3, 1.0, 101);
  StageConfig cfg = TinyConfig(6);
  CHECK_THROWS_AS(
      pipeline::PretrainEmbedder(corpus, cfg, 16, "student", 1),
      std::invalid_argument);
}

TEST_CASE("pretrain: checkpoint resume reproduces the next-step loss") {
  namespace fs = std::filesystem;
  mix::SpeakerCorpus corpus = ToyCorpus(4, 3, 1.0, 102);
  StageConfig cfg = TinyConfig(7);

  models::EmbedderConfig emb_cfg;
  emb_cfg.channels = 16;
  pipeline::TrainedEmbedder live{
      models::MakeTdnnEmbedder<float>(emb_cfg, MixSeed(cfg.seed, 1), "net"),
      {}, false, {}, {}};
  pipeline::EmbedderTrainer trainer(&live, cfg, corpus.NumSpeakers(), 1);
  for (int step = 0; step < 3; ++step) trainer.Step(corpus, step, nullptr);

  const std::string dir = (fs::temp_directory_path() / "tase_resume").string();
  pipeline::SaveEmbedder(dir, "net", live, 16);
  const double expected = trainer.PeekStep(corpus, 3, nullptr).total;

  pipeline::TrainedEmbedder restored = pipeline::LoadEmbedder(dir, "net", cfg);
  pipeline::EmbedderTrainer resumed(&restored, cfg, corpus.NumSpeakers(), 1);
  const double resumed_loss = resumed.PeekStep(corpus, 3, nullptr).total;
  CHECK(std::abs(resumed_loss - expected) < 1e-6);
  fs::remove_all(dir);
}

TEST_CASE("distill: twin-topology student starts at zero MSE") {
  mix::SpeakerCorpus corpus = ToyCorpus(4, 3, 1.0, 103);
  StageConfig cfg = TinyConfig(8);
  cfg.teacher_channels = cfg.student_channels;  // twin topology

  pipeline::TrainedEmbedder teacher = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.teacher_channels, "net", 2);
  pipeline::TrainedEmbedder student{
      models::MakeTdnnEmbedder<float>({257, cfg.student_channels, 128},
                                      99, "net"),
      {}, false, {}, {}};
  nnet::RestoreNetwork(nnet::SnapshotNetwork(teacher.net), &student.net);

  pipeline::EmbedderTrainer probe(&student, cfg, corpus.NumSpeakers(), 3);
  const pipeline::EmbedderStepStats first =
      probe.PeekStep(corpus, 0, &teacher.net);
  CHECK(first.mse == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("distill: embedding-dimension mismatch is rejected") {
  mix::SpeakerCorpus corpus = ToyCorpus(3, 2, 1.0, 104);
  StageConfig cfg = TinyConfig(9);
  pipeline::TrainedEmbedder teacher{
      models::MakeTdnnEmbedder<float>({257, 16, 64}, 1, "teacher"),
      {}, false, {}, {}};
  pipeline::TrainedEmbedder student{
      models::MakeTdnnEmbedder<float>({257, 16, 128}, 2, "student"),
      {}, false, {}, {}};
  CHECK_THROWS_AS(
      pipeline::TsDistill(teacher.net, &student, corpus, cfg),
      std::invalid_argument);
}

TEST_CASE("distill: a constant-output teacher trips the degeneracy detector") {
  mix::SpeakerCorpus corpus = ToyCorpus(4, 3, 1.0, 105);
  StageConfig cfg = TinyConfig(10);
  cfg.steps_per_epoch = 8;

  // Sabotaged teacher: zero final weights, constant bias -> constant
  // embedding for every input.
  pipeline::TrainedEmbedder teacher{
      models::MakeTdnnEmbedder<float>({257, cfg.teacher_channels, 128}, 3,
                                      "teacher"),
      {}, false, {}, {}};
  auto &layers = teacher.net.mutable_layers();
  auto &proj = layers[layers.size() - 2];  // final pointwise linear
  proj.weight.value.SetZero();
  Rng brng = MakeRng(70);
  for (float &b : proj.bias.value.v)
    b = static_cast<float>(UniformReal(brng, -1.0, 1.0));
  const nnet::Tensor<float> constant =
      models::Embed(teacher.net, corpus.speakers[0].utterances[0]);

  pipeline::TrainedEmbedder student{
      models::MakeTdnnEmbedder<float>({257, cfg.student_channels, 128}, 4,
                                      "student"),
      {}, false, {}, {}};

  // The MSE pull drags student embeddings toward the teacher's constant.
  auto mean_cos_to_constant = [&]() {
    double acc = 0.0;
    int n = 0;
    for (const auto &spk : corpus.speakers)
      for (const auto &utt : spk.utterances) {
        acc += models::CosineSimilarity(models::Embed(student.net, utt),
                                        constant);
        ++n;
      }
    return acc / n;
  };

  const double before = mean_cos_to_constant();
  pipeline::DistillResult r =
      pipeline::TsDistill(teacher.net, &student, corpus, cfg);
  CHECK(r.degenerate_teacher);  // the harness flags the sabotage
  CHECK(r.teacher_first_batch_cosine > 0.999);
  CHECK(student.distilled);
  CHECK(mean_cos_to_constant() > before);

  // A genuinely trained teacher does not trip the detector.
  pipeline::TrainedEmbedder good = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.teacher_channels, "teacher", 7);
  pipeline::TrainedEmbedder student2{
      models::MakeTdnnEmbedder<float>({257, cfg.student_channels, 128}, 5,
                                      "student"),
      {}, false, {}, {}};
  CHECK_FALSE(
      pipeline::TsDistill(good.net, &student2, corpus, cfg).degenerate_teacher);
}

TEST_CASE("joint training: gradients reach both networks; losses finite") {
  mix::SpeakerCorpus corpus = ToyCorpus(5, 4, 1.0, 106);
  StageConfig cfg = TinyConfig(11);
  cfg.steps_per_epoch = 5;
  cfg.joint_batch = 2;
  cfg.nontarget_ratio = 3.0;  // force some nontargets quickly

  pipeline::TrainedEmbedder net1 = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.student_channels, "net1", 4);
  net1.distilled = true;
  models::Enhancer<float> enhancer(cfg.enhancer, 77);
  pipeline::JointTrainResult result =
      pipeline::Stage2JointTrain(&enhancer, &net1, corpus, cfg);
  REQUIRE(result.step_losses.size() == 5);
  for (double l : result.step_losses) CHECK(std::isfinite(l));
  CHECK(result.first_step_enhancer_grad_norm > 0.0);
  CHECK(result.first_step_embedder_grad_norm > 0.0);
}

TEST_CASE("joint training: refuses an undistilled net 1 unless allowed") {
  mix::SpeakerCorpus corpus = ToyCorpus(3, 3, 1.0, 107);
  StageConfig cfg = TinyConfig(12);
  cfg.steps_per_epoch = 1;
  pipeline::TrainedEmbedder net1 = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.student_channels, "net1", 5);
  CHECK_FALSE(net1.distilled);
  models::Enhancer<float> enhancer(cfg.enhancer, 78);
  CHECK_THROWS_WITH_AS(
      pipeline::Stage2JointTrain(&enhancer, &net1, corpus, cfg),
      doctest::Contains("allow_undistilled"), std::invalid_argument);
  cfg.allow_undistilled = true;
  CHECK_NOTHROW(pipeline::Stage2JointTrain(&enhancer, &net1, corpus, cfg));
}

TEST_CASE("finetune: frozen enhancer, bounded sgd updates") {
  mix::SpeakerCorpus corpus = ToyCorpus(4, 3, 1.0, 108);
  StageConfig cfg = TinyConfig(13);
  cfg.stage = "finetune";
  pipeline::ApplyStageDefaults(&cfg);
  cfg.steps_per_epoch = 3;

  pipeline::TrainedEmbedder net1 = pipeline::PretrainEmbedder(
      corpus, cfg, cfg.student_channels, "net1", 6);
  models::Enhancer<float> enhancer(cfg.enhancer, 79);
  nnet::Network<float> net2 = models::MakeTdnnEmbedder<float>(
      {257, cfg.student_channels, 128}, 80, "net2");

  const std::vector<float> enhancer_before =
      FlattenParams(std::as_const(enhancer).encoder().Parameters());
  const std::vector<float> net2_before =
      FlattenParams(std::as_const(net2).Parameters());

  pipeline::FinetuneResult result =
      pipeline::Stage3Finetune(&net2, enhancer, net1.net, corpus, cfg);

  // Enhancer untouched, bit for bit.
  CHECK(FlattenParams(std::as_const(enhancer).encoder().Parameters()) ==
        enhancer_before);

  // Per-element change bounded by steps * lr * max |gradient|.
  const std::vector<float> net2_after =
      FlattenParams(std::as_const(net2).Parameters());
  const double bound =
      3.0 * cfg.learning_rate * result.max_grad_abs + 1e-12;
  double max_change = 0.0;
  for (size_t i = 0; i < net2_after.size(); ++i)
    max_change = std::max(
        max_change, std::abs(double(net2_after[i]) - net2_before[i]));
  CHECK(max_change <= bound);
  CHECK(max_change > 0.0);  // it did learn something
}

TEST_CASE("two-pass verification: ranges, exact fusion, immutability") {
  mix::SpeakerCorpus corpus = ToyCorpus(3, 4, 1.0, 109);
  StageConfig cfg = TinyConfig(14);
  nnet::Network<float> net1 = models::MakeTdnnEmbedder<float>(
      {257, 16, 128}, 81, "net1");
  nnet::Network<float> net2 = models::MakeTdnnEmbedder<float>(
      {257, 16, 128}, 82, "net2");
  models::Enhancer<float> enhancer(cfg.enhancer, 83);

  const auto &spk = corpus.speakers[0];
  std::vector<dsp::Waveform> enroll(spk.utterances.begin(),
                                    spk.utterances.begin() + 3);
  models::SpeakerProfile profile = models::BuildProfile(
      spk.speaker_id, enroll, {}, net1, net2, enhancer, true);

  const std::vector<float> net2_params =
      FlattenParams(std::as_const(net2).Parameters());
  const std::vector<float> enh_params =
      FlattenParams(std::as_const(enhancer).mask_net().Parameters());

  pipeline::VerificationResult r = pipeline::VerifyTwoPass(
      profile, spk.utterances[3], enhancer, net2);
  CHECK(r.pass1 >= -1.0);
  CHECK(r.pass1 <= 1.0);
  CHECK(r.pass2 >= -1.0);
  CHECK(r.pass2 <= 1.0);
  CHECK(r.fused == (r.pass1 + r.pass2) / 2.0);  // exact under default fusion

  // Inference never mutates parameters.
  CHECK(FlattenParams(std::as_const(net2).Parameters()) == net2_params);
  CHECK(FlattenParams(std::as_const(enhancer).mask_net().Parameters()) ==
        enh_params);

  // Profiles without the second pass refuse two-pass scoring.
  models::SpeakerProfile single = models::BuildProfile(
      spk.speaker_id, enroll, {}, net1, net2, enhancer, false);
  CHECK_THROWS_AS(
      pipeline::VerifyTwoPass(single, spk.utterances[3], enhancer, net2),
      std::invalid_argument);
  CHECK_NOTHROW(
      pipeline::VerifySinglePass(single, spk.utterances[3], enhancer, net2));
}
