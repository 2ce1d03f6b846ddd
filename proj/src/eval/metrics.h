// eval/metrics.h

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

#ifndef TASE_EVAL_METRICS_H_
#define TASE_EVAL_METRICS_H_

#include <string>
#include <vector>

#include "eval/trials.h"

namespace tase {
namespace eval {

// Operating point at a threshold: accept iff score >= threshold.
// Along increasing thresholds FAR is non-increasing and miss non-decreasing.
struct DetPoint {
  double threshold;
  double far;   // fraction of nontarget trials scoring >= threshold
  double miss;  // fraction of target trials scoring < threshold
};

struct EerResult {
  double eer;
  double threshold;
};

// EER by sorting scores and linearly interpolating between the adjacent
// operating points that bracket FAR == miss; exact ties resolve to the
// lowest threshold. Requires at least one trial of each class. labels:
// 1 = target, 0 = nontarget.
EerResult ComputeEer(const std::vector<double> &scores,
                     const std::vector<int> &labels);

// One point per distinct score plus a final reject-everything point, so the
// curve spans (far 1, miss 0) .. (far 0, miss 1).
std::vector<DetPoint> DetCurve(const std::vector<double> &scores,
                               const std::vector<int> &labels);

// Test-utterance SNR bands: A=[-inf,3), B=[3,15), C=[15,20), D=[20,+inf).
// Half-open on the right; the bands partition the real line. NaN (missing
// annotation) routes to band D with a warning.
enum class SnrBand { kA, kB, kC, kD };
const char *SnrBandName(SnrBand band);
SnrBand BandOfSnr(double snr_db);

template <typename T>
std::vector<std::vector<T>> SplitBySnr(
    const std::vector<T> &items,
    const std::vector<double> &snr_db_of_item) {
  std::vector<std::vector<T>> bands(4);
  for (size_t i = 0; i < items.size(); ++i)
    bands[static_cast<int>(BandOfSnr(snr_db_of_item[i]))].push_back(items[i]);
  return bands;
}

}  // namespace eval
}  // namespace tase

#endif  // TASE_EVAL_METRICS_H_
