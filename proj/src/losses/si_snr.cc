// losses/si_snr.cc

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

#include "losses/si_snr.h"

#include <cmath>
#include <numbers>

#include "base/common.h"
#include "mix/mixture.h"

namespace tase {
namespace loss {

namespace {

constexpr double kTinySq = 1e-60;  // numerator floor; forces the -clamp side

std::vector<double> Centered(std::span<const double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mean;
  return out;
}

// Gradient of centering: subtract the gradient's own mean.
void ProjectCentering(Matrix *g) {
  double mean = 0.0;
  for (double v : g->v) mean += v;
  mean /= static_cast<double>(g->v.size());
  for (double &v : g->v) v -= mean;
}

}  // namespace

LossOutput SiSnr(std::span<const double> estimate,
                 std::span<const double> target, const SiSnrOptions &opts) {
  TASE_CHECK(estimate.size() == target.size(),
             "SiSnr: length mismatch (", estimate.size(), " vs ",
             target.size(), ")");
  TASE_CHECK(!estimate.empty(), "SiSnr: empty input");
  const size_t n = estimate.size();

  const std::vector<double> e = Centered(estimate);
  const std::vector<double> t = Centered(target);

  double A = 0.0, B = 0.0, E = 0.0;
  for (size_t i = 0; i < n; ++i) {
    A += e[i] * t[i];
    B += t[i] * t[i];
    E += e[i] * e[i];
  }
  TASE_CHECK(B > 0.0, "SiSnr: zero-power target");

  const double eps_sq = opts.epsilon * opts.epsilon;
  double num_sq, den_sq;
  if (opts.mode == SiSnrMode::kStandard) {
    num_sq = A * A / B;                     // ||alpha * t||^2
    den_sq = std::max(E - A * A / B, 0.0);  // ||e - alpha * t||^2
  } else {
    num_sq = A * A * E / (B * B);           // ||alpha * e||^2
    den_sq = std::max(B - 2.0 * A * A / B + A * A * E / (B * B), 0.0);
  }

  const bool num_floored = num_sq < kTinySq;
  const bool den_floored = den_sq < eps_sq;
  const double raw_db = 10.0 / std::numbers::ln10 *
                        (std::log(std::max(num_sq, kTinySq)) -
                         std::log(std::max(den_sq, eps_sq)));

  LossOutput out;
  out.value = std::clamp(raw_db, -opts.clamp_db, opts.clamp_db);
  Matrix ge(1, n, 0.0), gt(1, n, 0.0);

  const bool clamped = raw_db <= -opts.clamp_db || raw_db >= opts.clamp_db;
  if (!clamped && !num_floored && !den_floored) {
    const double scale = 10.0 / std::numbers::ln10;
    if (opts.mode == SiSnrMode::kStandard) {
      for (size_t i = 0; i < n; ++i) {
        const double dresid = 2.0 * e[i] - (2.0 * A / B) * t[i];
        ge.v[i] = scale * (2.0 * t[i] / A - dresid / den_sq);
        const double dnum = (2.0 / A) * e[i] - (2.0 / B) * t[i];
        const double dden = (2.0 * A / B) * e[i] - (2.0 * A * A / (B * B)) * t[i];
        gt.v[i] = scale * (dnum + dden / den_sq);
      }
    } else {
      const double q_sq = num_sq, m_sq = den_sq;
      for (size_t i = 0; i < n; ++i) {
        const double dq_de =
            (2.0 * A * E / (B * B)) * t[i] + (2.0 * A * A / (B * B)) * e[i];
        const double dm_de = -(4.0 * A / B) * t[i] + dq_de;
        ge.v[i] = scale * (dq_de / q_sq - dm_de / m_sq);
        const double dq_dt = (2.0 * A * E / (B * B)) * e[i] -
                             (4.0 * A * A * E / (B * B * B)) * t[i];
        const double dm_dt = 2.0 * t[i] - (4.0 * A / B) * e[i] +
                             (4.0 * A * A / (B * B)) * t[i] + dq_dt;
        gt.v[i] = scale * (dq_dt / q_sq - dm_dt / m_sq);
      }
    }
    ProjectCentering(&ge);
    ProjectCentering(&gt);
  }
  out.gradients.emplace("estimate", std::move(ge));
  out.gradients.emplace("target", std::move(gt));
  ValidateLossOutput(out, "SiSnr");
  return out;
}

LossOutput SiSnr(const dsp::Waveform &estimate, const dsp::Waveform &target,
                 const SiSnrOptions &opts) {
  return SiSnr(std::span<const double>(estimate.samples),
               std::span<const double>(target.samples), opts);
}

LossOutput SiSnrWithNull(const dsp::Waveform &estimate,
                         mix::TripletLabel label,
                         const dsp::Waveform *reference, Rng &rng,
                         const NullBranchOptions &opts,
                         dsp::Waveform *drawn_null) {
  if (label == mix::TripletLabel::kTarget) {
    TASE_CHECK(reference != nullptr && !reference->empty(),
               "SiSnrWithNull: target triplet without a reference");
    return SiSnr(estimate, *reference, opts.target_branch);
  }
  dsp::Waveform null_ref = mix::NullReference(estimate.size(), rng);
  LossOutput out = SiSnr(estimate, null_ref, opts.null_branch);
  out.gradients.erase("target");  // the draw is not a trainable input
  if (drawn_null != nullptr) *drawn_null = std::move(null_ref);
  return out;
}

}  // namespace loss
}  // namespace tase
