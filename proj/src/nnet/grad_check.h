// nnet/grad_check.h

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

#ifndef TASE_NNET_GRAD_CHECK_H_
#define TASE_NNET_GRAD_CHECK_H_

#include <cstdio>
#include <functional>
#include <vector>

#include "nnet/network.h"

namespace tase {
namespace nnet {

// Differentiable scalar objective on a network output: value plus gradient
// with respect to the output.
template <typename Real>
struct ScalarLoss {
  double value = 0.0;
  Tensor<Real> output_grad;
};

template <typename Real>
using LossFn = std::function<ScalarLoss<Real>(const Tensor<Real> &)>;

struct GradCheckResult {
  double max_rel_err = 0.0;
  size_t params_checked = 0;
  bool step_warning = false;  // set when the step is too coarse to trust
};

// Compares analytic parameter gradients against central finite differences
// on a random subset of at least `min_params` scalar parameters. Meant to
// run in double precision; steps coarser than 1e-2 are flagged because
// truncation error then dominates legitimate gradients.
template <typename Real>
GradCheckResult GradCheck(Network<Real> *net, const Tensor<Real> &input,
                          const LossFn<Real> &loss_fn, double step, Rng &rng,
                          size_t min_params = 200) {
  GradCheckResult result;
  if (step >= 1e-2) {
    result.step_warning = true;
    std::fprintf(stderr,
                 "GradCheck: step %.3g is coarse; expect degraded accuracy\n",
                 step);
  }

  net->ZeroGrad();
  Trace<Real> trace;
  const Tensor<Real> out = net->Forward(input, &trace);
  const ScalarLoss<Real> loss = loss_fn(out);
  net->Backward(trace, loss.output_grad);

  // Flatten (parameter, element) coordinates.
  std::vector<Parameter<Real> *> params = net->Parameters();
  std::vector<std::pair<size_t, size_t>> coords;
  for (size_t p = 0; p < params.size(); ++p)
    for (size_t i = 0; i < params[p]->value.size(); ++i)
      coords.emplace_back(p, i);

  std::vector<size_t> pick(coords.size());
  for (size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  if (coords.size() > min_params) {
    for (size_t i = 0; i < pick.size(); ++i) {
      const size_t j =
          static_cast<size_t>(UniformInt(rng, i, static_cast<int64_t>(pick.size()) - 1));
      std::swap(pick[i], pick[j]);
    }
    pick.resize(min_params);
  }

  for (size_t idx : pick) {
    auto [p, i] = coords[idx];
    const Real saved = params[p]->value.v[i];
    const double analytic = static_cast<double>(params[p]->grad.v[i]);

    params[p]->value.v[i] = saved + static_cast<Real>(step);
    const double up = loss_fn(net->Forward(input)).value;
    params[p]->value.v[i] = saved - static_cast<Real>(step);
    const double down = loss_fn(net->Forward(input)).value;
    params[p]->value.v[i] = saved;

    const double numeric = (up - down) / (2.0 * step);
    const double rel = std::abs(analytic - numeric) /
                       std::max({std::abs(analytic), std::abs(numeric), 1e-12});
    result.max_rel_err = std::max(result.max_rel_err, rel);
  }
  result.params_checked = pick.size();
  net->ZeroGrad();
  return result;
}

}  // namespace nnet
}  // namespace tase

#endif  // TASE_NNET_GRAD_CHECK_H_
