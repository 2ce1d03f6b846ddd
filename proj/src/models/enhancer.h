// models/enhancer.h

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

#ifndef TASE_MODELS_ENHANCER_H_
#define TASE_MODELS_ENHANCER_H_

#include <string>
#include <vector>

#include "dsp/waveform.h"
#include "models/embedder.h"
#include "nnet/checkpoint.h"
#include "nnet/network.h"

namespace tase {
namespace models {

// Time-domain speaker-conditioned enhancer: a learned 1-D basis encoder
// (stride 8, 128 channels), a dilated-conv mask network that sees the 128-d
// speaker bias broadcast-concatenated onto every encoder frame, a sigmoid
// mask applied to the encoding, and a transposed-conv decoder back to the
// waveform. Output length always equals input length.
struct EnhancerConfig {
  int encoder_channels = 128;
  int encoder_kernel = 16;
  int encoder_stride = 8;
  int bottleneck_channels = 64;
  int mask_blocks = 4;  // dilations 1, 2, 4, 8
  int emb_dim = kEmbeddingDim;
};

template <typename Real>
class Enhancer {
 public:
  Enhancer(const EnhancerConfig &cfg, uint64_t seed);

  const EnhancerConfig &config() const { return cfg_; }

  // Inference: pads internally, trims to the input length. The bias must be
  // a unit-norm [emb_dim, 1] tensor.
  dsp::Waveform Enhance(const dsp::Waveform &mixture,
                        const nnet::Tensor<Real> &bias) const;

  struct ForwardTrace {
    nnet::Trace<Real> encoder, mask_net, decoder;
    nnet::Tensor<Real> encoding;   // [N, F]
    nnet::Tensor<Real> mask;       // [N, F]
    size_t original_length = 0;    // before padding
  };

  // Training path over tensors: input [1, L] (unpadded); returns the
  // same-length output [1, L].
  nnet::Tensor<Real> Forward(const nnet::Tensor<Real> &wave,
                             const nnet::Tensor<Real> &bias,
                             ForwardTrace *trace) const;

  struct BackwardResult {
    nnet::Tensor<Real> wave_grad;  // [1, L]
    nnet::Tensor<Real> bias_grad;  // [emb_dim, 1]
  };
  BackwardResult Backward(const ForwardTrace &trace,
                          const nnet::Tensor<Real> &output_grad);

  std::vector<nnet::Parameter<Real> *> Parameters();
  void ZeroGrad();
  void BumpVersion();

  void Save(const std::string &path) const;
  void Load(const std::string &path);

  const nnet::Network<Real> &encoder() const { return encoder_; }
  const nnet::Network<Real> &mask_net() const { return mask_net_; }
  const nnet::Network<Real> &decoder() const { return decoder_; }

 private:
  EnhancerConfig cfg_;
  nnet::Network<Real> encoder_, mask_net_, decoder_;

  nnet::Tensor<Real> PadWave(const nnet::Tensor<Real> &wave) const;
};

}  // namespace models
}  // namespace tase

#endif  // TASE_MODELS_ENHANCER_H_
