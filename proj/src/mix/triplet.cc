// mix/triplet.cc

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

#include "mix/triplet.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "base/common.h"
#include "dsp/wav_io.h"
#include "mix/synth.h"

namespace tase {
namespace mix {

namespace fs = std::filesystem;

SpeakerCorpus LoadSpeakerCorpus(const std::string &dir) {
  TASE_CHECK(fs::is_directory(dir), "LoadSpeakerCorpus: not a directory: ", dir);
  SpeakerCorpus corpus;
  std::vector<fs::path> speaker_dirs;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_directory()) speaker_dirs.push_back(entry.path());
  std::sort(speaker_dirs.begin(), speaker_dirs.end());
  for (const auto &spk_dir : speaker_dirs) {
    SpeakerUtterances spk;
    spk.speaker_id = spk_dir.filename().string();
    std::vector<fs::path> wavs;
    for (const auto &entry : fs::directory_iterator(spk_dir))
      if (entry.path().extension() == ".wav") wavs.push_back(entry.path());
    std::sort(wavs.begin(), wavs.end());
    for (const auto &wav : wavs) {
      spk.utterances.push_back(dsp::ReadWav(wav.string()));
      spk.utterance_ids.push_back(
          fs::relative(wav, dir).generic_string());
    }
    if (!spk.utterances.empty()) corpus.speakers.push_back(std::move(spk));
  }
  TASE_CHECK(!corpus.speakers.empty(),
             "LoadSpeakerCorpus: no speaker subdirectories with WAVs in ", dir);
  return corpus;
}

namespace {

// Random crop to `want` samples (whole utterance when shorter).
dsp::Waveform CropUtterance(const dsp::Waveform &utt, size_t want, Rng &rng) {
  if (want == 0 || utt.size() <= want) return utt;
  const size_t start = static_cast<size_t>(
      UniformInt(rng, 0, static_cast<int64_t>(utt.size() - want)));
  dsp::Waveform out;
  out.samples.assign(utt.samples.begin() + start,
                     utt.samples.begin() + start + want);
  return out;
}

// Distinct speaker indices != base and not in `excluded`.
std::vector<int> PickInterfererSpeakers(int num, int base, int excluded,
                                        int n_speakers, Rng &rng) {
  std::vector<int> pool;
  for (int s = 0; s < n_speakers; ++s)
    if (s != base && s != excluded) pool.push_back(s);
  std::vector<int> picked;
  for (int i = 0; i < num && !pool.empty(); ++i) {
    const size_t j =
        static_cast<size_t>(UniformInt(rng, 0, static_cast<int64_t>(pool.size()) - 1));
    picked.push_back(pool[j]);
    pool.erase(pool.begin() + j);
  }
  return picked;
}

}  // namespace

TripletPlan SampleTripletPlan(const SpeakerCorpus &corpus, Rng &rng,
                              const TripletSamplerOptions &opts) {
  TASE_CHECK(corpus.NumSpeakers() >= 2,
             "SampleTripletPlan: need at least 2 speakers, got ",
             corpus.NumSpeakers());
  TASE_CHECK(opts.nontarget_ratio > 0.0,
             "SampleTripletPlan: nontarget_ratio must be positive");

  TripletPlan plan;
  const double p_nontarget =
      std::isinf(opts.nontarget_ratio) ? 0.0 : 1.0 / (1.0 + opts.nontarget_ratio);
  plan.label = UniformReal(rng, 0.0, 1.0) < p_nontarget
                   ? TripletLabel::kNontarget
                   : TripletLabel::kTarget;

  const int n_speakers = corpus.NumSpeakers();
  plan.enrolled_speaker = static_cast<int>(UniformInt(rng, 0, n_speakers - 1));
  const SpeakerUtterances &enrolled = corpus.speakers[plan.enrolled_speaker];

  // Base utterance of the mixture: the enrolled speaker for target triplets,
  // any other speaker for nontarget ones.
  if (plan.label == TripletLabel::kTarget) {
    plan.base_speaker = plan.enrolled_speaker;
  } else {
    plan.base_speaker = static_cast<int>(UniformInt(rng, 0, n_speakers - 2));
    if (plan.base_speaker >= plan.enrolled_speaker) ++plan.base_speaker;
  }
  const SpeakerUtterances &base = corpus.speakers[plan.base_speaker];
  plan.base_utt = static_cast<int>(
      UniformInt(rng, 0, static_cast<int64_t>(base.utterances.size()) - 1));

  // Enrollment utterances, avoiding the mixture's source utterance.
  std::vector<int> pool;
  for (int u = 0; u < static_cast<int>(enrolled.utterances.size()); ++u) {
    if (plan.label == TripletLabel::kTarget && u == plan.base_utt) continue;
    pool.push_back(u);
  }
  TASE_CHECK(!pool.empty(), "SampleTripletPlan: speaker ", enrolled.speaker_id,
             " has no utterance left for enrollment");
  for (int i = 0; i < opts.num_enrollment; ++i) {
    const size_t j = static_cast<size_t>(
        UniformInt(rng, 0, static_cast<int64_t>(pool.size()) - 1));
    plan.enrollment_utts.push_back(pool[j]);
    if (pool.size() > 1) pool.erase(pool.begin() + j);  // distinct if we can
  }

  plan.spec = SampleMixtureSpec(rng);
  const int excluded =
      plan.label == TripletLabel::kNontarget ? plan.enrolled_speaker : -1;
  const int max_interferers =
      n_speakers - 1 - (excluded >= 0 && excluded != plan.base_speaker ? 1 : 0);
  plan.spec.n_speakers = std::min(plan.spec.n_speakers, 1 + max_interferers);
  plan.interferer_speakers = PickInterfererSpeakers(
      plan.spec.n_speakers - 1, plan.base_speaker, excluded, n_speakers, rng);
  return plan;
}

TrainingTriplet RealizeTriplet(const SpeakerCorpus &corpus,
                               const TripletPlan &plan, Rng &rng,
                               const TripletSamplerOptions &opts) {
  TrainingTriplet triplet;
  triplet.label = plan.label;
  triplet.spec = plan.spec;
  triplet.enrolled_speaker = plan.enrolled_speaker;
  triplet.base_utt = plan.base_utt;
  triplet.enrollment_utts = plan.enrollment_utts;
  triplet.mixture_speakers.push_back(plan.base_speaker);
  for (int s : plan.interferer_speakers) triplet.mixture_speakers.push_back(s);

  const SpeakerUtterances &enrolled = corpus.speakers[plan.enrolled_speaker];
  for (int u : plan.enrollment_utts)
    triplet.enrollment.push_back(enrolled.utterances[u]);

  const SpeakerUtterances &base = corpus.speakers[plan.base_speaker];
  // The base crop can land on a pause; redraw a few times before giving up.
  for (int attempt = 0;; ++attempt) {
    dsp::Waveform target =
        CropUtterance(base.utterances[plan.base_utt], opts.mix_samples, rng);
    std::vector<dsp::Waveform> interferers;
    for (int s : plan.interferer_speakers) {
      const SpeakerUtterances &other = corpus.speakers[s];
      const int utt = static_cast<int>(UniformInt(
          rng, 0, static_cast<int64_t>(other.utterances.size()) - 1));
      interferers.push_back(other.utterances[utt]);
    }
    dsp::Waveform noise = SynthNoise(target.size(), rng);
    try {
      triplet.parts = MakeMixture(plan.spec, target, interferers, noise, rng);
      break;
    } catch (const std::invalid_argument &) {
      TASE_CHECK(attempt < 8,
                 "RealizeTriplet: could not build a mixture after 8 attempts");
    }
  }
  triplet.test_mixture = triplet.parts.mixture;
  if (triplet.label == TripletLabel::kTarget)
    triplet.reference = triplet.parts.reference;
  return triplet;
}

TrainingTriplet SampleTriplet(const SpeakerCorpus &corpus, Rng &rng,
                              const TripletSamplerOptions &opts) {
  const TripletPlan plan = SampleTripletPlan(corpus, rng, opts);
  return RealizeTriplet(corpus, plan, rng, opts);
}

}  // namespace mix
}  // namespace tase
