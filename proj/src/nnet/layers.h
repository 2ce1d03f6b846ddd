// nnet/layers.h

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

#ifndef TASE_NNET_LAYERS_H_
#define TASE_NNET_LAYERS_H_

#include <string>

namespace tase {
namespace nnet {

enum class LayerKind {
  kConv1d,
  kPointwiseLinear,
  kRelu,
  kPrelu,
  kLayerNorm,
  kMeanPoolTime,
  kStatsPoolTime,
  kL2Normalize,
  kSigmoidMask,
  kTransposedConv1d,
};

enum class Padding { kValid, kReplicate };

const char *LayerKindName(LayerKind kind);
LayerKind LayerKindFromName(const std::string &name);

// Declarative layer description; sizes are validated when a network is
// assembled. Convolutions over [channels, time] activations; pooling
// collapses time; l2-normalize acts on the whole (vector) activation.
struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  int in_channels = 0;
  int out_channels = 0;
  int kernel = 1;
  int dilation = 1;
  int stride = 1;
  Padding padding = Padding::kValid;

  static LayerSpec Conv1d(int in, int out, int kernel, int dilation = 1,
                          int stride = 1, Padding padding = Padding::kValid) {
    return {LayerKind::kConv1d, in, out, kernel, dilation, stride, padding};
  }
  static LayerSpec PointwiseLinear(int in, int out) {
    return {LayerKind::kPointwiseLinear, in, out, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec Relu() { return {LayerKind::kRelu, 0, 0, 1, 1, 1, Padding::kValid}; }
  static LayerSpec Prelu(int channels) {
    return {LayerKind::kPrelu, channels, channels, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec LayerNorm(int channels) {
    return {LayerKind::kLayerNorm, channels, channels, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec MeanPoolTime() {
    return {LayerKind::kMeanPoolTime, 0, 0, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec StatsPoolTime() {
    return {LayerKind::kStatsPoolTime, 0, 0, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec L2Normalize() {
    return {LayerKind::kL2Normalize, 0, 0, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec SigmoidMask() {
    return {LayerKind::kSigmoidMask, 0, 0, 1, 1, 1, Padding::kValid};
  }
  static LayerSpec TransposedConv1d(int in, int out, int kernel, int stride) {
    return {LayerKind::kTransposedConv1d, in, out, kernel, 1, stride,
            Padding::kValid};
  }
};

}  // namespace nnet
}  // namespace tase

#endif  // TASE_NNET_LAYERS_H_
