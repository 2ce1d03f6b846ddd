// eval/report.cc

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

#include "eval/report.h"

#include <cmath>
#include <fstream>

#include "base/common.h"
#include "json.hpp"

namespace tase {
namespace eval {

namespace {

void ClassCounts(const std::vector<ScoredTrial> &scored, size_t *n_target,
                 size_t *n_nontarget) {
  *n_target = *n_nontarget = 0;
  for (const ScoredTrial &st : scored) {
    if (!st.ok) continue;
    (st.trial.is_target ? *n_target : *n_nontarget)++;
  }
}

}  // namespace

EvalReport Evaluate(const std::vector<ScoredTrial> &scored, bool by_snr) {
  EvalReport report;
  report.n_trials = scored.size();
  for (const ScoredTrial &st : scored) report.n_errors += !st.ok;
  ClassCounts(scored, &report.n_target, &report.n_nontarget);

  std::vector<double> scores;
  std::vector<int> labels;
  for (const ScoredTrial &st : scored) {
    if (!st.ok) continue;
    scores.push_back(st.score);
    labels.push_back(st.trial.is_target ? 1 : 0);
  }
  report.pooled = ComputeEer(scores, labels);
  report.pooled_det = DetCurve(scores, labels);

  if (by_snr) {
    std::vector<std::vector<ScoredTrial>> bands(4);
    for (const ScoredTrial &st : scored) {
      if (!st.ok) continue;
      bands[static_cast<int>(BandOfSnr(st.trial.snr_db))].push_back(st);
    }
    for (int b = 0; b < 4; ++b) {
      BandReport band;
      band.band = SnrBandName(static_cast<SnrBand>(b));
      ClassCounts(bands[b], &band.n_target, &band.n_nontarget);
      if (band.n_target >= 1 && band.n_nontarget >= 1) {
        std::vector<double> s;
        std::vector<int> l;
        for (const ScoredTrial &st : bands[b]) {
          s.push_back(st.score);
          l.push_back(st.trial.is_target ? 1 : 0);
        }
        band.eer = ComputeEer(s, l);
        band.det = DetCurve(s, l);
        band.has_eer = true;
      }
      report.bands.push_back(std::move(band));
    }
  }
  return report;
}

std::string FormatReportText(const EvalReport &report) {
  std::string out = StrCat(
      "trials: ", report.n_trials, " (", report.n_target, " target, ",
      report.n_nontarget, " nontarget, ", report.n_errors, " errors)\n",
      "pooled EER: ", report.pooled.eer * 100.0,
      "% @ threshold ", report.pooled.threshold, "\n");
  for (const BandReport &band : report.bands) {
    out += StrCat("band ", band.band, ": ", band.n_target, " target, ",
                  band.n_nontarget, " nontarget");
    if (band.has_eer)
      out += StrCat(", EER ", band.eer.eer * 100.0, "% @ ",
                    band.eer.threshold);
    else
      out += ", EER n/a";
    out += "\n";
  }
  return out;
}

void WriteReportJson(const std::string &path, const EvalReport &report,
                     const std::vector<ScoredTrial> &scored) {
  nlohmann::json j;
  j["n_trials"] = report.n_trials;
  j["n_errors"] = report.n_errors;
  j["n_target"] = report.n_target;
  j["n_nontarget"] = report.n_nontarget;
  j["pooled"] = {{"eer", report.pooled.eer},
                 {"threshold", report.pooled.threshold}};
  auto det_json = [](const std::vector<DetPoint> &det) {
    nlohmann::json a = nlohmann::json::array();
    for (const DetPoint &p : det) {
      a.push_back({{"threshold", std::isfinite(p.threshold)
                                     ? nlohmann::json(p.threshold)
                                     : nlohmann::json()},
                   {"far", p.far},
                   {"miss", p.miss}});
    }
    return a;
  };
  j["pooled_det"] = det_json(report.pooled_det);
  j["bands"] = nlohmann::json::array();
  for (const BandReport &band : report.bands) {
    nlohmann::json b;
    b["band"] = band.band;
    b["n_target"] = band.n_target;
    b["n_nontarget"] = band.n_nontarget;
    if (band.has_eer) {
      b["eer"] = band.eer.eer;
      b["threshold"] = band.eer.threshold;
      b["det"] = det_json(band.det);
    } else {
      b["eer"] = nullptr;
    }
    j["bands"].push_back(std::move(b));
  }
  j["trials"] = nlohmann::json::array();
  for (const ScoredTrial &st : scored) {
    nlohmann::json t;
    t["enroll_speaker"] = st.trial.enroll_speaker;
    t["test_utt"] = st.trial.test_utt;
    t["label"] = st.trial.is_target ? "target" : "nontarget";
    t["snr_db"] = std::isfinite(st.trial.snr_db)
                      ? nlohmann::json(st.trial.snr_db)
                      : nlohmann::json();
    if (st.ok)
      t["score"] = st.score;
    else
      t["error"] = st.error;
    j["trials"].push_back(std::move(t));
  }
  std::ofstream out(path, std::ios::trunc);
  TASE_CHECK(out.good(), "WriteReportJson: cannot open ", path);
  out << j.dump(1) << "\n";
  TASE_CHECK(out.good(), "WriteReportJson: write failed for ", path);
}

}  // namespace eval
}  // namespace tase
