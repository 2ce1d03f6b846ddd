// nnet/tensor.h

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

#ifndef TASE_NNET_TENSOR_H_
#define TASE_NNET_TENSOR_H_

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "base/common.h"
#include "base/rng.h"

namespace tase {
namespace nnet {

// Dense row-major 2-D tensor. Activations are laid out [channels, time];
// plain vectors are [channels, 1]. Training runs in single precision, the
// gradient-check suites instantiate everything in double.
template <typename Real>
struct Tensor {
  int rows = 0, cols = 0;
  std::vector<Real> v;

  Tensor() = default;
  Tensor(int r, int c, Real fill = Real(0))
      : rows(r), cols(c), v(static_cast<size_t>(r) * c, fill) {}

  size_t size() const { return v.size(); }
  Real &at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  Real at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
  Real *row(int r) { return v.data() + static_cast<size_t>(r) * cols; }
  const Real *row(int r) const {
    return v.data() + static_cast<size_t>(r) * cols;
  }

  void SetZero() { std::fill(v.begin(), v.end(), Real(0)); }

  bool SameShape(const Tensor &other) const {
    return rows == other.rows && cols == other.cols;
  }

  void CheckFinite(const char *what) const {
    for (Real x : v)
      TASE_ASSERT(std::isfinite(static_cast<double>(x)), what,
                  ": non-finite tensor value");
  }
};

template <typename Real>
using EigenMat =
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Real>
Eigen::Map<EigenMat<Real>> AsEigen(Tensor<Real> &t) {
  return Eigen::Map<EigenMat<Real>>(t.v.data(), t.rows, t.cols);
}

template <typename Real>
Eigen::Map<const EigenMat<Real>> AsEigen(const Tensor<Real> &t) {
  return Eigen::Map<const EigenMat<Real>>(t.v.data(), t.rows, t.cols);
}

// Trainable tensor plus its gradient accumulator of identical shape.
template <typename Real>
struct Parameter {
  std::string name;
  Tensor<Real> value;
  Tensor<Real> grad;

  void EnsureGradShape() {
    if (!grad.SameShape(value)) grad = Tensor<Real>(value.rows, value.cols);
  }
};

template <typename Real>
void UniformInit(Tensor<Real> *t, double bound, Rng &rng) {
  for (Real &x : t->v) x = static_cast<Real>(UniformReal(rng, -bound, bound));
}

}  // namespace nnet
}  // namespace tase

#endif  // TASE_NNET_TENSOR_H_
