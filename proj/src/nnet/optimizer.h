// nnet/optimizer.h

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

#ifndef TASE_NNET_OPTIMIZER_H_
#define TASE_NNET_OPTIMIZER_H_

#include <cmath>
#include <map>
#include <vector>

#include "nnet/tensor.h"

namespace tase {
namespace nnet {

struct OptimizerOptions {
  enum class Kind { kSgd, kAdam };
  Kind kind = Kind::kAdam;
  double learning_rate = 1e-3;
  double momentum = 0.0;  // sgd only
  double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;

  static OptimizerOptions Sgd(double lr, double momentum = 0.0) {
    OptimizerOptions o;
    o.kind = Kind::kSgd;
    o.learning_rate = lr;
    o.momentum = momentum;
    return o;
  }
  static OptimizerOptions Adam(double lr) {
    OptimizerOptions o;
    o.kind = Kind::kAdam;
    o.learning_rate = lr;
    return o;
  }
};

// Applies gradient updates to a fixed set of parameters and clears their
// gradient accumulators. State (momentum, Adam moments) is keyed by
// parameter address, so one optimizer instance must keep seeing the same
// parameter objects.
template <typename Real>
class Optimizer {
 public:
  explicit Optimizer(const OptimizerOptions &opts) : opts_(opts) {
    TASE_CHECK(opts.learning_rate > 0.0,
               "Optimizer: learning rate must be > 0");
  }

  const OptimizerOptions &options() const { return opts_; }

  void Step(const std::vector<Parameter<Real> *> &params) {
    ++step_;
    for (Parameter<Real> *p : params) {
      p->EnsureGradShape();
      switch (opts_.kind) {
        case OptimizerOptions::Kind::kSgd: {
          if (opts_.momentum != 0.0) {
            Tensor<Real> &vel = slot_[p].m;
            if (!vel.SameShape(p->value))
              vel = Tensor<Real>(p->value.rows, p->value.cols);
            for (size_t i = 0; i < p->value.size(); ++i) {
              vel.v[i] = static_cast<Real>(opts_.momentum * vel.v[i] +
                                           p->grad.v[i]);
              p->value.v[i] -= static_cast<Real>(opts_.learning_rate) * vel.v[i];
            }
          } else {
            for (size_t i = 0; i < p->value.size(); ++i)
              p->value.v[i] -=
                  static_cast<Real>(opts_.learning_rate) * p->grad.v[i];
          }
          break;
        }
        case OptimizerOptions::Kind::kAdam: {
          Slot &s = slot_[p];
          if (!s.m.SameShape(p->value)) {
            s.m = Tensor<Real>(p->value.rows, p->value.cols);
            s.v = Tensor<Real>(p->value.rows, p->value.cols);
          }
          const double b1 = opts_.beta1, b2 = opts_.beta2;
          const double bc1 = 1.0 - std::pow(b1, step_);
          const double bc2 = 1.0 - std::pow(b2, step_);
          for (size_t i = 0; i < p->value.size(); ++i) {
            const double g = p->grad.v[i];
            s.m.v[i] = static_cast<Real>(b1 * s.m.v[i] + (1.0 - b1) * g);
            s.v.v[i] = static_cast<Real>(b2 * s.v.v[i] + (1.0 - b2) * g * g);
            const double mhat = s.m.v[i] / bc1;
            const double vhat = s.v.v[i] / bc2;
            p->value.v[i] -= static_cast<Real>(
                opts_.learning_rate * mhat / (std::sqrt(vhat) + opts_.adam_eps));
          }
          break;
        }
      }
      p->grad.SetZero();
    }
  }

 private:
  struct Slot {
    Tensor<Real> m, v;
  };
  OptimizerOptions opts_;
  std::map<const Parameter<Real> *, Slot> slot_;
  int64_t step_ = 0;
};

}  // namespace nnet
}  // namespace tase

#endif  // TASE_NNET_OPTIMIZER_H_
