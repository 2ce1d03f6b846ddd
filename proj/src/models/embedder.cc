// models/embedder.cc

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

#include "models/embedder.h"

namespace tase {
namespace models {

using nnet::LayerSpec;

std::vector<LayerSpec> TdnnEmbedderSpecs(const EmbedderConfig &cfg) {
  TASE_CHECK(cfg.in_dim > 0 && cfg.channels > 0 && cfg.emb_dim > 0,
             "TdnnEmbedderSpecs: sizes must be positive");
  const int c = cfg.channels;
  return {
      LayerSpec::Conv1d(cfg.in_dim, c, 5, 1), LayerSpec::Relu(),
      LayerSpec::LayerNorm(c),
      LayerSpec::Conv1d(c, c, 3, 2), LayerSpec::Relu(),
      LayerSpec::LayerNorm(c),
      LayerSpec::Conv1d(c, c, 3, 3), LayerSpec::Relu(),
      LayerSpec::LayerNorm(c),
      LayerSpec::Conv1d(c, c, 1, 1), LayerSpec::Relu(),
      LayerSpec::LayerNorm(c),
      LayerSpec::Conv1d(c, c, 1, 1), LayerSpec::Relu(),
      LayerSpec::StatsPoolTime(),
      LayerSpec::PointwiseLinear(2 * c, cfg.emb_dim),
      LayerSpec::L2Normalize(),
  };
}

namespace {

dsp::FeatureMatrix PadToMinFrames(dsp::FeatureMatrix feat) {
  if (feat.frames >= kMinEmbedFrames) return feat;
  dsp::FeatureMatrix padded(kMinEmbedFrames);
  for (int t = 0; t < kMinEmbedFrames; ++t)
    std::copy(feat.row(t % feat.frames), feat.row(t % feat.frames) + dsp::kNumBins,
              padded.row(t));
  return padded;
}

}  // namespace

dsp::FeatureMatrix EmbedderFrontend(const dsp::Waveform &utt) {
  const dsp::FeatureMatrix feat = dsp::StftFeatures(utt);
  const dsp::VadMask mask = dsp::ComputeVadMask(feat);
  TASE_CHECK(mask.CountVoiced() > 0, "EmbedderFrontend: no voiced frames");
  return PadToMinFrames(dsp::SelectVoicedFrames(feat, mask));
}

dsp::FeatureMatrix EmbedderFrontendSegment(const dsp::Waveform &utt, Rng &rng) {
  return PadToMinFrames(dsp::RandomSegment(EmbedderFrontend(utt), rng));
}

double CosineSimilarity(const nnet::Tensor<float> &a,
                        const nnet::Tensor<float> &b) {
  TASE_CHECK(a.size() == b.size() && !a.v.empty(),
             "CosineSimilarity: shape mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a.v[i]) * b.v[i];
    na += static_cast<double>(a.v[i]) * a.v[i];
    nb += static_cast<double>(b.v[i]) * b.v[i];
  }
  TASE_CHECK(na > 0.0 && nb > 0.0, "CosineSimilarity: zero vector");
  return dot / std::sqrt(na * nb);
}

}  // namespace models
}  // namespace tase
