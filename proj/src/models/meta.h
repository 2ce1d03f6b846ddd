// models/meta.h

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

#ifndef TASE_MODELS_META_H_
#define TASE_MODELS_META_H_

#include <string>

#include "models/embedder.h"
#include "models/enhancer.h"

namespace tase {
namespace models {

// Sidecar text manifest next to each checkpoint; records the topology so
// checkpoints are self-describing, plus training provenance flags.
struct ModelMeta {
  std::string kind;  // "tdnn_embedder" or "enhancer"

  // tdnn_embedder
  int in_dim = dsp::kNumBins;
  int channels = 64;
  int emb_dim = kEmbeddingDim;
  bool distilled = false;

  // enhancer
  EnhancerConfig enhancer;

  EmbedderConfig AsEmbedderConfig() const { return {in_dim, channels, emb_dim}; }
};

void WriteModelMeta(const std::string &path, const ModelMeta &meta);
ModelMeta ReadModelMeta(const std::string &path);

}  // namespace models
}  // namespace tase

#endif  // TASE_MODELS_META_H_
