// eval/scoring.h

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

#ifndef TASE_EVAL_SCORING_H_
#define TASE_EVAL_SCORING_H_

#include <functional>

#include "eval/metrics.h"
#include "eval/trials.h"

namespace tase {
namespace eval {

struct ScoredTrial {
  Trial trial;
  double score = 0.0;
  bool ok = false;
  std::string error;  // per-trial failure record; the run continues
};

using TrialScorer = std::function<double(const Trial &)>;

// Order-preserving; exceptions from the scorer become per-trial error
// records instead of aborting the run.
std::vector<ScoredTrial> ScoreTrials(const std::vector<Trial> &trials,
                                     const TrialScorer &scorer);

// Score file = trial file columns plus a trailing score column ("ERROR" for
// failed trials).
void WriteScores(const std::string &path,
                 const std::vector<ScoredTrial> &scored);
std::vector<ScoredTrial> ReadScores(const std::string &path);

// EER over the ok-scored subset.
EerResult EerOfScored(const std::vector<ScoredTrial> &scored);

}  // namespace eval
}  // namespace tase

#endif  // TASE_EVAL_SCORING_H_
