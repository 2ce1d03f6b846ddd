// nnet/layers.cc

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

#include "nnet/layers.h"

#include "base/common.h"

namespace tase {
namespace nnet {

const char *LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv1d: return "conv1d";
    case LayerKind::kPointwiseLinear: return "pointwise_linear";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kPrelu: return "prelu";
    case LayerKind::kLayerNorm: return "layernorm";
    case LayerKind::kMeanPoolTime: return "mean_pool_time";
    case LayerKind::kStatsPoolTime: return "stats_pool_time";
    case LayerKind::kL2Normalize: return "l2_normalize";
    case LayerKind::kSigmoidMask: return "sigmoid_mask";
    case LayerKind::kTransposedConv1d: return "transposed_conv1d";
  }
  return "unknown";
}

LayerKind LayerKindFromName(const std::string &name) {
  for (LayerKind k :
       {LayerKind::kConv1d, LayerKind::kPointwiseLinear, LayerKind::kRelu,
        LayerKind::kPrelu, LayerKind::kLayerNorm, LayerKind::kMeanPoolTime,
        LayerKind::kStatsPoolTime, LayerKind::kL2Normalize,
        LayerKind::kSigmoidMask, LayerKind::kTransposedConv1d}) {
    if (name == LayerKindName(k)) return k;
  }
  throw std::invalid_argument(StrCat("unknown layer kind '", name, "'"));
}

}  // namespace nnet
}  // namespace tase
