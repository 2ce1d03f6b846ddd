// eval/report.h

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

#ifndef TASE_EVAL_REPORT_H_
#define TASE_EVAL_REPORT_H_

#include "eval/scoring.h"

namespace tase {
namespace eval {

struct BandReport {
  std::string band;
  size_t n_target = 0, n_nontarget = 0;
  bool has_eer = false;  // both classes present
  EerResult eer{0.0, 0.0};
  std::vector<DetPoint> det;
};

struct EvalReport {
  size_t n_trials = 0, n_errors = 0;
  size_t n_target = 0, n_nontarget = 0;
  EerResult pooled{0.0, 0.0};
  std::vector<DetPoint> pooled_det;
  std::vector<BandReport> bands;  // filled when by_snr is set
};

EvalReport Evaluate(const std::vector<ScoredTrial> &scored, bool by_snr);

// Human-readable summary (one line per band).
std::string FormatReportText(const EvalReport &report);

// Machine-readable JSON: summary, per-band EER/DET points, per-trial scores.
// External plotting reads this file.
void WriteReportJson(const std::string &path, const EvalReport &report,
                     const std::vector<ScoredTrial> &scored);

}  // namespace eval
}  // namespace tase

#endif  // TASE_EVAL_REPORT_H_
