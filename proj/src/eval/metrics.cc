// eval/metrics.cc

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

#include "eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "base/common.h"

namespace tase {
namespace eval {

namespace {

// Distinct ascending thresholds with the counts needed for FAR/miss at each:
// at threshold v, FAR = (nontargets >= v)/N and miss = (targets < v)/T.
struct Sweep {
  std::vector<double> thresholds;
  std::vector<int> nontarget_below;  // strictly below thresholds[i]
  std::vector<int> target_below;
  int n_target = 0, n_nontarget = 0;
};

Sweep BuildSweep(const std::vector<double> &scores,
                 const std::vector<int> &labels) {
  TASE_CHECK(scores.size() == labels.size() && !scores.empty(),
             "ComputeEer: scores/labels size mismatch or empty");
  Sweep sweep;
  std::vector<std::pair<double, int>> sorted(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    TASE_CHECK(std::isfinite(scores[i]), "ComputeEer: non-finite score");
    sorted[i] = {scores[i], labels[i]};
    (labels[i] ? sweep.n_target : sweep.n_nontarget)++;
  }
  TASE_CHECK(sweep.n_target >= 1 && sweep.n_nontarget >= 1,
             "ComputeEer: need both classes, got ", sweep.n_target,
             " target / ", sweep.n_nontarget, " nontarget");
  std::sort(sorted.begin(), sorted.end());

  int tar_below = 0, non_below = 0;
  size_t i = 0;
  while (i < sorted.size()) {
    const double v = sorted[i].first;
    sweep.thresholds.push_back(v);
    sweep.target_below.push_back(tar_below);
    sweep.nontarget_below.push_back(non_below);
    while (i < sorted.size() && sorted[i].first == v) {
      (sorted[i].second ? tar_below : non_below)++;
      ++i;
    }
  }
  return sweep;
}

}  // namespace

EerResult ComputeEer(const std::vector<double> &scores,
                     const std::vector<int> &labels) {
  const Sweep sweep = BuildSweep(scores, labels);
  const size_t n = sweep.thresholds.size();

  auto far_at = [&](size_t i) {
    if (i >= n) return 0.0;  // reject-everything sentinel
    return static_cast<double>(sweep.n_nontarget - sweep.nontarget_below[i]) /
           sweep.n_nontarget;
  };
  auto miss_at = [&](size_t i) {
    if (i >= n) return 1.0;
    return static_cast<double>(sweep.target_below[i]) / sweep.n_target;
  };
  auto thr_at = [&](size_t i) {
    return i < n ? sweep.thresholds[i] : sweep.thresholds.back() + 1.0;
  };

  double prev_far = far_at(0), prev_miss = miss_at(0);
  if (prev_far == prev_miss) return {prev_far, thr_at(0)};
  double prev_thr = thr_at(0);
  for (size_t i = 1; i <= n; ++i) {
    const double thr = thr_at(i), far = far_at(i), miss = miss_at(i);
    if (far == miss) return {far, thr};  // lowest threshold on exact ties
    if ((prev_far - prev_miss) > 0 && (far - miss) < 0) {
      const double denom = (prev_far - far) + (miss - prev_miss);
      const double t = (prev_far - prev_miss) / denom;
      const double eer = prev_far + t * (far - prev_far);
      return {eer, prev_thr + t * (thr - prev_thr)};
    }
    prev_far = far;
    prev_miss = miss;
    prev_thr = thr;
  }
  return {prev_far, prev_thr};
}

std::vector<DetPoint> DetCurve(const std::vector<double> &scores,
                               const std::vector<int> &labels) {
  const Sweep sweep = BuildSweep(scores, labels);
  std::vector<DetPoint> curve;
  curve.reserve(sweep.thresholds.size() + 1);
  for (size_t i = 0; i < sweep.thresholds.size(); ++i) {
    DetPoint p;
    p.threshold = sweep.thresholds[i];
    p.far = static_cast<double>(sweep.n_nontarget - sweep.nontarget_below[i]) /
            sweep.n_nontarget;
    p.miss = static_cast<double>(sweep.target_below[i]) / sweep.n_target;
    curve.push_back(p);
  }
  curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 1.0});
  return curve;
}

const char *SnrBandName(SnrBand band) {
  switch (band) {
    case SnrBand::kA: return "A";
    case SnrBand::kB: return "B";
    case SnrBand::kC: return "C";
    case SnrBand::kD: return "D";
  }
  return "?";
}

SnrBand BandOfSnr(double snr_db) {
  if (std::isnan(snr_db)) {
    std::fprintf(stderr,
                 "BandOfSnr: missing SNR annotation, routing to band D\n");
    return SnrBand::kD;
  }
  if (snr_db < 3.0) return SnrBand::kA;
  if (snr_db < 15.0) return SnrBand::kB;
  if (snr_db < 20.0) return SnrBand::kC;
  return SnrBand::kD;
}

}  // namespace eval
}  // namespace tase
