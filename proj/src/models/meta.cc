// models/meta.cc

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

#include "models/meta.h"

#include <fstream>
#include <sstream>

#include "base/common.h"

namespace tase {
namespace models {

void WriteModelMeta(const std::string &path, const ModelMeta &meta) {
  std::ofstream out(path, std::ios::trunc);
  TASE_CHECK(out.good(), "WriteModelMeta: cannot open ", path);
  out << "kind " << meta.kind << "\n";
  if (meta.kind == "tdnn_embedder") {
    out << "in_dim " << meta.in_dim << "\n"
        << "channels " << meta.channels << "\n"
        << "emb_dim " << meta.emb_dim << "\n"
        << "distilled " << (meta.distilled ? 1 : 0) << "\n";
  } else if (meta.kind == "enhancer") {
    out << "encoder_channels " << meta.enhancer.encoder_channels << "\n"
        << "encoder_kernel " << meta.enhancer.encoder_kernel << "\n"
        << "encoder_stride " << meta.enhancer.encoder_stride << "\n"
        << "bottleneck_channels " << meta.enhancer.bottleneck_channels << "\n"
        << "mask_blocks " << meta.enhancer.mask_blocks << "\n"
        << "emb_dim " << meta.enhancer.emb_dim << "\n";
  } else {
    throw std::invalid_argument(StrCat("WriteModelMeta: unknown kind '",
                                       meta.kind, "'"));
  }
  TASE_CHECK(out.good(), "WriteModelMeta: write failed for ", path);
}

ModelMeta ReadModelMeta(const std::string &path) {
  std::ifstream in(path);
  TASE_CHECK(in.good(), "ReadModelMeta: cannot open ", path);
  ModelMeta meta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "kind") ss >> meta.kind;
    else if (key == "in_dim") ss >> meta.in_dim;
    else if (key == "channels") ss >> meta.channels;
    else if (key == "emb_dim") { ss >> meta.emb_dim; meta.enhancer.emb_dim = meta.emb_dim; }
    else if (key == "distilled") { int v; ss >> v; meta.distilled = v != 0; }
    else if (key == "encoder_channels") ss >> meta.enhancer.encoder_channels;
    else if (key == "encoder_kernel") ss >> meta.enhancer.encoder_kernel;
    else if (key == "encoder_stride") ss >> meta.enhancer.encoder_stride;
    else if (key == "bottleneck_channels") ss >> meta.enhancer.bottleneck_channels;
    else if (key == "mask_blocks") ss >> meta.enhancer.mask_blocks;
    else throw std::invalid_argument(StrCat("ReadModelMeta: unknown key '",
                                            key, "' in ", path));
  }
  TASE_CHECK(!meta.kind.empty(), "ReadModelMeta: missing kind in ", path);
  return meta;
}

}  // namespace models
}  // namespace tase
