// nnet/checkpoint.h

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

#ifndef TASE_NNET_CHECKPOINT_H_
#define TASE_NNET_CHECKPOINT_H_

#include <string>
#include <vector>

#include "nnet/network.h"

namespace tase {
namespace nnet {

// Checkpoint container: magic "TASECKPT", u32 version, u32 record count,
// then (name, shape, float32 payload) records, little-endian. Round-trips
// are bit-exact on the float32 payload.
struct CheckpointRecord {
  std::string name;
  std::vector<uint32_t> shape;
  std::vector<float> data;
};

void WriteCheckpoint(const std::string &path,
                     const std::vector<CheckpointRecord> &records);
std::vector<CheckpointRecord> ReadCheckpoint(const std::string &path);

template <typename Real>
std::vector<CheckpointRecord> SnapshotNetwork(const Network<Real> &net) {
  std::vector<CheckpointRecord> records;
  for (const Parameter<Real> *p : net.Parameters()) {
    CheckpointRecord rec;
    rec.name = p->name;
    rec.shape = {static_cast<uint32_t>(p->value.rows),
                 static_cast<uint32_t>(p->value.cols)};
    rec.data.resize(p->value.size());
    for (size_t i = 0; i < p->value.size(); ++i)
      rec.data[i] = static_cast<float>(p->value.v[i]);
    records.push_back(std::move(rec));
  }
  return records;
}

// Fills a network whose topology already matches; records are looked up by
// parameter name and must cover every parameter exactly.
template <typename Real>
void RestoreNetwork(const std::vector<CheckpointRecord> &records,
                    Network<Real> *net) {
  size_t used = 0;
  for (Parameter<Real> *p : net->Parameters()) {
    const CheckpointRecord *found = nullptr;
    for (const CheckpointRecord &rec : records)
      if (rec.name == p->name) {
        found = &rec;
        break;
      }
    TASE_CHECK(found != nullptr, "RestoreNetwork: missing record '", p->name,
               "'");
    TASE_CHECK(found->shape.size() == 2 &&
                   found->shape[0] == static_cast<uint32_t>(p->value.rows) &&
                   found->shape[1] == static_cast<uint32_t>(p->value.cols),
               "RestoreNetwork: shape mismatch for '", p->name, "'");
    for (size_t i = 0; i < p->value.size(); ++i)
      p->value.v[i] = static_cast<Real>(found->data[i]);
    p->grad.SetZero();
    ++used;
  }
  TASE_CHECK(used == records.size(),
             "RestoreNetwork: checkpoint has ", records.size(),
             " records but the network consumed ", used);
  net->BumpVersion();
}

template <typename Real>
void SaveNetwork(const std::string &path, const Network<Real> &net) {
  WriteCheckpoint(path, SnapshotNetwork(net));
}

template <typename Real>
void LoadNetwork(const std::string &path, Network<Real> *net) {
  RestoreNetwork(ReadCheckpoint(path), net);
}

}  // namespace nnet
}  // namespace tase

#endif  // TASE_NNET_CHECKPOINT_H_
