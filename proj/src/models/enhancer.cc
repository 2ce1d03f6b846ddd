// models/enhancer.cc

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

#include "models/enhancer.h"

#include <cmath>

namespace tase {
namespace models {

using nnet::LayerSpec;
using nnet::Padding;

namespace {

std::vector<LayerSpec> EncoderSpecs(const EnhancerConfig &cfg) {
  return {LayerSpec::Conv1d(1, cfg.encoder_channels, cfg.encoder_kernel, 1,
                            cfg.encoder_stride)};
}

std::vector<LayerSpec> MaskNetSpecs(const EnhancerConfig &cfg) {
  const int b = cfg.bottleneck_channels;
  std::vector<LayerSpec> specs;
  specs.push_back(
      LayerSpec::PointwiseLinear(cfg.encoder_channels + cfg.emb_dim, b));
  specs.push_back(LayerSpec::Prelu(b));
  specs.push_back(LayerSpec::LayerNorm(b));
  int dilation = 1;
  for (int block = 0; block < cfg.mask_blocks; ++block) {
    specs.push_back(LayerSpec::Conv1d(b, b, 3, dilation, 1, Padding::kReplicate));
    specs.push_back(LayerSpec::Prelu(b));
    specs.push_back(LayerSpec::LayerNorm(b));
    dilation *= 2;
  }
  specs.push_back(LayerSpec::PointwiseLinear(b, cfg.encoder_channels));
  specs.push_back(LayerSpec::SigmoidMask());
  return specs;
}

std::vector<LayerSpec> DecoderSpecs(const EnhancerConfig &cfg) {
  return {LayerSpec::TransposedConv1d(cfg.encoder_channels, 1,
                                      cfg.encoder_kernel, cfg.encoder_stride)};
}

}  // namespace

template <typename Real>
Enhancer<Real>::Enhancer(const EnhancerConfig &cfg, uint64_t seed)
    : cfg_(cfg),
      encoder_(EncoderSpecs(cfg), MixSeed(seed, 1), "enhancer.encoder"),
      mask_net_(MaskNetSpecs(cfg), MixSeed(seed, 2), "enhancer.mask_net"),
      decoder_(DecoderSpecs(cfg), MixSeed(seed, 3), "enhancer.decoder") {
  TASE_CHECK(cfg.encoder_kernel % cfg.encoder_stride == 0,
             "Enhancer: kernel must be a multiple of the stride");
}

template <typename Real>
nnet::Tensor<Real> Enhancer<Real>::PadWave(
    const nnet::Tensor<Real> &wave) const {
  TASE_CHECK(wave.rows == 1, "Enhancer: waveform tensor must be [1, L]");
  const int k = cfg_.encoder_kernel, s = cfg_.encoder_stride;
  TASE_CHECK(wave.cols >= k, "Enhancer: input of ", wave.cols,
             " samples is shorter than the encoder kernel (", k, ")");
  const int tail = (wave.cols - k) % s;
  if (tail == 0) return wave;
  nnet::Tensor<Real> padded(1, wave.cols + (s - tail));
  std::copy(wave.v.begin(), wave.v.end(), padded.v.begin());
  return padded;
}

template <typename Real>
nnet::Tensor<Real> Enhancer<Real>::Forward(const nnet::Tensor<Real> &wave,
                                           const nnet::Tensor<Real> &bias,
                                           ForwardTrace *trace) const {
  TASE_CHECK(bias.rows == cfg_.emb_dim && bias.cols == 1,
             "Enhancer: bias must be [", cfg_.emb_dim, ", 1]");
  ForwardTrace local;
  ForwardTrace *tr = trace ? trace : &local;
  tr->original_length = wave.v.size();

  const nnet::Tensor<Real> padded = PadWave(wave);
  const nnet::Tensor<Real> enc = encoder_.Forward(padded, &tr->encoder);
  const int frames = enc.cols;

  // Broadcast-concatenate the speaker bias under the encoding.
  nnet::Tensor<Real> joint(cfg_.encoder_channels + cfg_.emb_dim, frames);
  for (int c = 0; c < cfg_.encoder_channels; ++c)
    std::copy(enc.row(c), enc.row(c) + frames, joint.row(c));
  for (int e = 0; e < cfg_.emb_dim; ++e) {
    Real *row = joint.row(cfg_.encoder_channels + e);
    for (int t = 0; t < frames; ++t) row[t] = bias.v[e];
  }

  const nnet::Tensor<Real> mask = mask_net_.Forward(joint, &tr->mask_net);
  nnet::Tensor<Real> masked(enc.rows, enc.cols);
  for (size_t i = 0; i < masked.size(); ++i)
    masked.v[i] = enc.v[i] * mask.v[i];

  nnet::Tensor<Real> out = decoder_.Forward(masked, &tr->decoder);
  TASE_ASSERT(out.cols == padded.cols,
              "Enhancer: decoder length mismatch (", out.cols, " vs ",
              padded.cols, ")");
  tr->encoding = enc;
  tr->mask = mask;

  nnet::Tensor<Real> trimmed(1, static_cast<int>(tr->original_length));
  std::copy(out.v.begin(), out.v.begin() + tr->original_length,
            trimmed.v.begin());
  return trimmed;
}

template <typename Real>
typename Enhancer<Real>::BackwardResult Enhancer<Real>::Backward(
    const ForwardTrace &trace, const nnet::Tensor<Real> &output_grad) {
  TASE_CHECK(output_grad.rows == 1 &&
                 output_grad.v.size() == trace.original_length,
             "Enhancer::Backward: output gradient shape mismatch");

  // Undo the trim: padded samples received zero gradient.
  const int padded_len = trace.decoder.output.cols;
  nnet::Tensor<Real> gout(1, padded_len);
  std::copy(output_grad.v.begin(), output_grad.v.end(), gout.v.begin());

  const nnet::Tensor<Real> gmasked = decoder_.Backward(trace.decoder, gout);

  // Product rule through masked = encoding * mask.
  nnet::Tensor<Real> gmask(gmasked.rows, gmasked.cols);
  nnet::Tensor<Real> genc(gmasked.rows, gmasked.cols);
  for (size_t i = 0; i < gmasked.size(); ++i) {
    gmask.v[i] = gmasked.v[i] * trace.encoding.v[i];
    genc.v[i] = gmasked.v[i] * trace.mask.v[i];
  }

  const nnet::Tensor<Real> gjoint = mask_net_.Backward(trace.mask_net, gmask);

  // Split the concatenation: encoder rows flow back into the encoder, bias
  // rows sum over time (the bias was broadcast to every frame).
  const int frames = gjoint.cols;
  for (int c = 0; c < cfg_.encoder_channels; ++c) {
    const Real *src = gjoint.row(c);
    Real *dst = genc.row(c);
    for (int t = 0; t < frames; ++t) dst[t] += src[t];
  }
  BackwardResult result;
  result.bias_grad = nnet::Tensor<Real>(cfg_.emb_dim, 1);
  for (int e = 0; e < cfg_.emb_dim; ++e) {
    double acc = 0.0;
    const Real *src = gjoint.row(cfg_.encoder_channels + e);
    for (int t = 0; t < frames; ++t) acc += src[t];
    result.bias_grad.v[e] = static_cast<Real>(acc);
  }

  const nnet::Tensor<Real> gpadded = encoder_.Backward(trace.encoder, genc);
  result.wave_grad = nnet::Tensor<Real>(1, static_cast<int>(trace.original_length));
  std::copy(gpadded.v.begin(), gpadded.v.begin() + trace.original_length,
            result.wave_grad.v.begin());
  return result;
}

template <typename Real>
dsp::Waveform Enhancer<Real>::Enhance(const dsp::Waveform &mixture,
                                      const nnet::Tensor<Real> &bias) const {
  dsp::ValidateWaveform(mixture, "Enhance");
  nnet::Tensor<Real> wave(1, static_cast<int>(mixture.size()));
  for (size_t i = 0; i < mixture.size(); ++i)
    wave.v[i] = static_cast<Real>(mixture.samples[i]);
  const nnet::Tensor<Real> out = Forward(wave, bias, nullptr);

  dsp::Waveform enhanced;
  enhanced.samples.resize(mixture.size());
  for (size_t i = 0; i < mixture.size(); ++i)
    enhanced.samples[i] = static_cast<double>(out.v[i]);
  TASE_ASSERT(enhanced.size() == mixture.size(),
              "Enhance: output length mismatch");
  for (double s : enhanced.samples)
    TASE_ASSERT(std::isfinite(s), "Enhance: non-finite output sample");
  return enhanced;
}

template <typename Real>
std::vector<nnet::Parameter<Real> *> Enhancer<Real>::Parameters() {
  std::vector<nnet::Parameter<Real> *> params = encoder_.Parameters();
  for (auto *p : mask_net_.Parameters()) params.push_back(p);
  for (auto *p : decoder_.Parameters()) params.push_back(p);
  return params;
}

template <typename Real>
void Enhancer<Real>::ZeroGrad() {
  encoder_.ZeroGrad();
  mask_net_.ZeroGrad();
  decoder_.ZeroGrad();
}

template <typename Real>
void Enhancer<Real>::BumpVersion() {
  encoder_.BumpVersion();
  mask_net_.BumpVersion();
  decoder_.BumpVersion();
}

template <typename Real>
void Enhancer<Real>::Save(const std::string &path) const {
  std::vector<nnet::CheckpointRecord> records = nnet::SnapshotNetwork(encoder_);
  for (auto &rec : nnet::SnapshotNetwork(mask_net_)) records.push_back(rec);
  for (auto &rec : nnet::SnapshotNetwork(decoder_)) records.push_back(rec);
  nnet::WriteCheckpoint(path, records);
}

template <typename Real>
void Enhancer<Real>::Load(const std::string &path) {
  const std::vector<nnet::CheckpointRecord> records = nnet::ReadCheckpoint(path);
  auto subset = [&](const std::string &prefix) {
    std::vector<nnet::CheckpointRecord> out;
    for (const auto &rec : records)
      if (rec.name.rfind(prefix, 0) == 0) out.push_back(rec);
    return out;
  };
  nnet::RestoreNetwork(subset("enhancer.encoder."), &encoder_);
  nnet::RestoreNetwork(subset("enhancer.mask_net."), &mask_net_);
  nnet::RestoreNetwork(subset("enhancer.decoder."), &decoder_);
}

template class Enhancer<float>;
template class Enhancer<double>;

}  // namespace models
}  // namespace tase
