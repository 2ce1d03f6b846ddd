// losses/loss_output.h

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

#ifndef TASE_LOSSES_LOSS_OUTPUT_H_
#define TASE_LOSSES_LOSS_OUTPUT_H_

#include <map>
#include <string>
#include <vector>

namespace tase {
namespace loss {

// Row-major double matrix; vectors are 1 x n or n x 1 as convenient.
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), v(r * c, fill) {}

  double &at(size_t r, size_t c) { return v[r * cols + c]; }
  double at(size_t r, size_t c) const { return v[r * cols + c]; }
  const double *row(size_t r) const { return v.data() + r * cols; }
  double *row(size_t r) { return v.data() + r * cols; }
  size_t size() const { return v.size(); }
};

// Scalar loss value plus analytic gradients keyed by input name. Gradient
// shapes always equal the corresponding input shapes.
struct LossOutput {
  double value = 0.0;
  std::map<std::string, Matrix> gradients;
};

// out = a + c * b, merging gradient maps (matching keys must agree in shape).
LossOutput AxpyLoss(const LossOutput &a, double c, const LossOutput &b);

LossOutput ScaleLoss(const LossOutput &a, double c);

// All gradients finite and shaped; throws std::logic_error otherwise.
void ValidateLossOutput(const LossOutput &out, const char *what);

}  // namespace loss
}  // namespace tase

#endif  // TASE_LOSSES_LOSS_OUTPUT_H_
