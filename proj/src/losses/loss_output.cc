// losses/loss_output.cc

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

#include "losses/loss_output.h"

#include <cmath>

#include "base/common.h"

namespace tase {
namespace loss {

LossOutput AxpyLoss(const LossOutput &a, double c, const LossOutput &b) {
  LossOutput out = a;
  out.value += c * b.value;
  for (const auto &[name, grad] : b.gradients) {
    auto it = out.gradients.find(name);
    if (it == out.gradients.end()) {
      Matrix scaled = grad;
      for (double &g : scaled.v) g *= c;
      out.gradients.emplace(name, std::move(scaled));
    } else {
      TASE_ASSERT(it->second.rows == grad.rows && it->second.cols == grad.cols,
                  "AxpyLoss: shape mismatch for gradient '", name, "'");
      for (size_t i = 0; i < grad.size(); ++i) it->second.v[i] += c * grad.v[i];
    }
  }
  return out;
}

LossOutput ScaleLoss(const LossOutput &a, double c) {
  LossOutput out = a;
  out.value *= c;
  for (auto &[name, grad] : out.gradients)
    for (double &g : grad.v) g *= c;
  return out;
}

void ValidateLossOutput(const LossOutput &out, const char *what) {
  TASE_ASSERT(std::isfinite(out.value), what, ": non-finite loss value");
  for (const auto &[name, grad] : out.gradients) {
    TASE_ASSERT(grad.v.size() == grad.rows * grad.cols, what,
                ": gradient '", name, "' shape/size mismatch");
    for (double g : grad.v)
      TASE_ASSERT(std::isfinite(g), what, ": non-finite gradient in '", name,
                  "'");
  }
}

}  // namespace loss
}  // namespace tase
