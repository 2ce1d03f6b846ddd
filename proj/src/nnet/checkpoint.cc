// nnet/checkpoint.cc

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

#include "nnet/checkpoint.h"

#include <cstring>
#include <fstream>

namespace tase {
namespace nnet {

namespace {
constexpr char kMagic[8] = {'T', 'A', 'S', 'E', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

void PutU32(std::ofstream &out, uint32_t v) {
  out.write(reinterpret_cast<const char *>(&v), 4);
}

uint32_t GetU32(std::ifstream &in) {
  uint32_t v = 0;
  in.read(reinterpret_cast<char *>(&v), 4);
  return v;
}
}  // namespace

void WriteCheckpoint(const std::string &path,
                     const std::vector<CheckpointRecord> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  TASE_CHECK(out.good(), "WriteCheckpoint: cannot open ", path);
  out.write(kMagic, sizeof(kMagic));
  PutU32(out, kVersion);
  PutU32(out, static_cast<uint32_t>(records.size()));
  for (const CheckpointRecord &rec : records) {
    PutU32(out, static_cast<uint32_t>(rec.name.size()));
    out.write(rec.name.data(), static_cast<std::streamsize>(rec.name.size()));
    PutU32(out, static_cast<uint32_t>(rec.shape.size()));
    size_t numel = 1;
    for (uint32_t d : rec.shape) {
      PutU32(out, d);
      numel *= d;
    }
    TASE_CHECK(numel == rec.data.size(), "WriteCheckpoint: record '", rec.name,
               "' shape does not match payload");
    out.write(reinterpret_cast<const char *>(rec.data.data()),
              static_cast<std::streamsize>(rec.data.size() * sizeof(float)));
  }
  TASE_CHECK(out.good(), "WriteCheckpoint: write failed for ", path);
}

std::vector<CheckpointRecord> ReadCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  TASE_CHECK(in.good(), "ReadCheckpoint: cannot open ", path);
  char magic[8];
  in.read(magic, 8);
  TASE_CHECK(in.good() && std::memcmp(magic, kMagic, 8) == 0,
             "ReadCheckpoint: bad magic in ", path);
  const uint32_t version = GetU32(in);
  TASE_CHECK(version == kVersion, "ReadCheckpoint: unsupported version ",
             version, " in ", path);
  const uint32_t count = GetU32(in);
  std::vector<CheckpointRecord> records(count);
  for (CheckpointRecord &rec : records) {
    const uint32_t name_len = GetU32(in);
    rec.name.resize(name_len);
    in.read(rec.name.data(), name_len);
    const uint32_t rank = GetU32(in);
    rec.shape.resize(rank);
    size_t numel = 1;
    for (uint32_t &d : rec.shape) {
      d = GetU32(in);
      numel *= d;
    }
    rec.data.resize(numel);
    in.read(reinterpret_cast<char *>(rec.data.data()),
            static_cast<std::streamsize>(numel * sizeof(float)));
    TASE_CHECK(in.good(), "ReadCheckpoint: truncated record in ", path);
  }
  return records;
}

}  // namespace nnet
}  // namespace tase
