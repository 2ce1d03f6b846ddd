// models/embedder.h

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

#ifndef TASE_MODELS_EMBEDDER_H_
#define TASE_MODELS_EMBEDDER_H_

#include <vector>

#include "dsp/segment.h"
#include "dsp/stft.h"
#include "dsp/vad.h"
#include "dsp/waveform.h"
#include "nnet/network.h"

namespace tase {
namespace models {

constexpr int kEmbeddingDim = 128;

// Dilated-conv context embedder over 257-d STFT magnitude frames:
// five context layers (dilations 1,2,3,1,1) -> stats pooling -> 128-d linear
// projection -> l2 normalization. The teacher uses the same topology at 4x
// the channel width.
struct EmbedderConfig {
  int in_dim = dsp::kNumBins;
  int channels = 64;
  int emb_dim = kEmbeddingDim;
};

std::vector<nnet::LayerSpec> TdnnEmbedderSpecs(const EmbedderConfig &cfg);

// Frames a TDNN needs to produce at least one pooled output.
constexpr int kMinEmbedFrames = 20;

template <typename Real>
nnet::Network<Real> MakeTdnnEmbedder(const EmbedderConfig &cfg, uint64_t seed,
                                     const std::string &name) {
  return nnet::Network<Real>(TdnnEmbedderSpecs(cfg), seed, name);
}

// STFT -> VAD -> voiced-frame selection, wraparound-padded up to the
// network's minimum length. Throws "no voiced frames" when the VAD rejects
// the whole utterance.
dsp::FeatureMatrix EmbedderFrontend(const dsp::Waveform &utt);

// Training variant: additionally crops a random 100-200 frame segment.
dsp::FeatureMatrix EmbedderFrontendSegment(const dsp::Waveform &utt, Rng &rng);

template <typename Real>
nnet::Tensor<Real> FeatureInput(const dsp::FeatureMatrix &feat) {
  nnet::Tensor<Real> x(dsp::kNumBins, feat.frames);
  for (int t = 0; t < feat.frames; ++t)
    for (int b = 0; b < dsp::kNumBins; ++b)
      x.at(b, t) = static_cast<Real>(feat.at(t, b));
  return x;
}

// Full inference path; deterministic, output unit-norm [emb_dim, 1].
template <typename Real>
nnet::Tensor<Real> Embed(const nnet::Network<Real> &net,
                         const dsp::Waveform &utt) {
  return net.Forward(FeatureInput<Real>(EmbedderFrontend(utt)));
}

// L2-normalized arithmetic mean; the enhancement anchor ("speaker bias").
// Invariant to utterance order. Throws on an empty list or a degenerate
// (zero) mean. `mean_norm` (when given) receives the pre-normalization norm,
// which the backward pass needs.
template <typename Real>
nnet::Tensor<Real> NormalizedMean(const std::vector<nnet::Tensor<Real>> &vecs,
                                  double *mean_norm = nullptr);

// Backward of NormalizedMean: maps the gradient at the normalized output to
// per-input gradients. `mean_norm` and `bias` come from the forward pass.
template <typename Real>
std::vector<nnet::Tensor<Real>> NormalizedMeanBackward(
    const nnet::Tensor<Real> &bias, double mean_norm, size_t count,
    const nnet::Tensor<Real> &output_grad);

template <typename Real>
nnet::Tensor<Real> EnrollBias(const nnet::Network<Real> &net,
                              const std::vector<dsp::Waveform> &utterances) {
  TASE_CHECK(!utterances.empty(), "EnrollBias: empty enrollment list");
  std::vector<nnet::Tensor<Real>> embeddings;
  embeddings.reserve(utterances.size());
  for (const dsp::Waveform &utt : utterances)
    embeddings.push_back(Embed(net, utt));
  return NormalizedMean(embeddings);
}

double CosineSimilarity(const nnet::Tensor<float> &a,
                        const nnet::Tensor<float> &b);

// ---------------------------------------------------------------------------

template <typename Real>
nnet::Tensor<Real> NormalizedMean(const std::vector<nnet::Tensor<Real>> &vecs,
                                  double *mean_norm) {
  TASE_CHECK(!vecs.empty(), "NormalizedMean: empty input");
  nnet::Tensor<Real> mean(vecs[0].rows, vecs[0].cols);
  for (const nnet::Tensor<Real> &v : vecs) {
    TASE_CHECK(v.SameShape(mean), "NormalizedMean: shape mismatch");
    for (size_t i = 0; i < v.size(); ++i) mean.v[i] += v.v[i];
  }
  double norm_sq = 0.0;
  for (size_t i = 0; i < mean.size(); ++i) {
    mean.v[i] /= static_cast<Real>(vecs.size());
    norm_sq += static_cast<double>(mean.v[i]) * mean.v[i];
  }
  const double norm = std::sqrt(norm_sq);
  TASE_CHECK(norm > 1e-12, "NormalizedMean: degenerate (zero) mean");
  for (Real &v : mean.v) v = static_cast<Real>(v / norm);
  if (mean_norm != nullptr) *mean_norm = norm;
  return mean;
}

template <typename Real>
std::vector<nnet::Tensor<Real>> NormalizedMeanBackward(
    const nnet::Tensor<Real> &bias, double mean_norm, size_t count,
    const nnet::Tensor<Real> &output_grad) {
  double bdotg = 0.0;
  for (size_t i = 0; i < bias.size(); ++i)
    bdotg += static_cast<double>(bias.v[i]) * output_grad.v[i];
  nnet::Tensor<Real> gmean(bias.rows, bias.cols);
  for (size_t i = 0; i < bias.size(); ++i)
    gmean.v[i] = static_cast<Real>(
        (output_grad.v[i] - bias.v[i] * bdotg) / mean_norm);
  std::vector<nnet::Tensor<Real>> grads(count, gmean);
  for (nnet::Tensor<Real> &g : grads)
    for (Real &v : g.v) v = static_cast<Real>(v / static_cast<double>(count));
  return grads;
}

}  // namespace models
}  // namespace tase

#endif  // TASE_MODELS_EMBEDDER_H_
