// dsp/feature_io.cc

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

#include "dsp/feature_io.h"

#include <cstring>
#include <fstream>

#include "base/common.h"

namespace tase {
namespace dsp {

namespace {
constexpr char kMagic[8] = {'T', 'A', 'S', 'E', 'F', 'E', 'A', 'T'};
}

void WriteFeatures(const std::string &path, const FeatureMatrix &feat) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  TASE_CHECK(out.good(), "WriteFeatures: cannot open ", path);
  out.write(kMagic, sizeof(kMagic));
  uint32_t t = static_cast<uint32_t>(feat.frames);
  uint32_t c = kNumBins;
  out.write(reinterpret_cast<const char *>(&t), 4);
  out.write(reinterpret_cast<const char *>(&c), 4);
  out.write(reinterpret_cast<const char *>(feat.data.data()),
            static_cast<std::streamsize>(feat.data.size() * sizeof(float)));
  TASE_CHECK(out.good(), "WriteFeatures: write failed for ", path);
}

FeatureMatrix ReadFeatures(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  TASE_CHECK(in.good(), "ReadFeatures: cannot open ", path);
  char magic[8];
  in.read(magic, 8);
  TASE_CHECK(in.good() && std::memcmp(magic, kMagic, 8) == 0,
             "ReadFeatures: bad magic in ", path);
  uint32_t t = 0, c = 0;
  in.read(reinterpret_cast<char *>(&t), 4);
  in.read(reinterpret_cast<char *>(&c), 4);
  TASE_CHECK(in.good() && c == kNumBins, "ReadFeatures: bad header in ", path);
  FeatureMatrix feat(static_cast<int>(t));
  in.read(reinterpret_cast<char *>(feat.data.data()),
          static_cast<std::streamsize>(feat.data.size() * sizeof(float)));
  TASE_CHECK(in.good(), "ReadFeatures: truncated payload in ", path);
  return feat;
}

}  // namespace dsp
}  // namespace tase
