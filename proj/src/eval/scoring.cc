// eval/scoring.cc

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

#include "eval/scoring.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "base/common.h"

namespace tase {
namespace eval {

std::vector<ScoredTrial> ScoreTrials(const std::vector<Trial> &trials,
                                     const TrialScorer &scorer) {
  std::vector<ScoredTrial> out;
  out.reserve(trials.size());
  for (const Trial &trial : trials) {
    ScoredTrial st;
    st.trial = trial;
    try {
      st.score = scorer(trial);
      st.ok = true;
    } catch (const std::exception &e) {
      st.error = e.what();
      std::fprintf(stderr, "ScoreTrials: trial on '%s' failed: %s\n",
                   trial.test_utt.c_str(), e.what());
    }
    out.push_back(std::move(st));
  }
  return out;
}

void WriteScores(const std::string &path,
                 const std::vector<ScoredTrial> &scored) {
  std::ofstream out(path, std::ios::trunc);
  TASE_CHECK(out.good(), "WriteScores: cannot open ", path);
  char buf[40];
  for (const ScoredTrial &st : scored) {
    const Trial &t = st.trial;
    out << t.enroll_speaker << '\t';
    for (size_t i = 0; i < t.enroll_utts.size(); ++i)
      out << (i ? "," : "") << t.enroll_utts[i];
    out << '\t' << t.test_utt << '\t'
        << (t.is_target ? "target" : "nontarget") << '\t'
        << mix::FormatDb(t.snr_db) << '\t';
    if (st.ok) {
      std::snprintf(buf, sizeof(buf), "%.17g", st.score);
      out << buf;
    } else {
      out << "ERROR";
    }
    out << '\n';
  }
  TASE_CHECK(out.good(), "WriteScores: write failed for ", path);
}

std::vector<ScoredTrial> ReadScores(const std::string &path) {
  std::ifstream in(path);
  TASE_CHECK(in.good(), "ReadScores: cannot open ", path);
  std::vector<ScoredTrial> scored;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ScoredTrial st;
    std::string utts, label, snr, score;
    TASE_CHECK(static_cast<bool>(ss >> st.trial.enroll_speaker >> utts >>
                                 st.trial.test_utt >> label >> snr >> score),
               "ReadScores: malformed line ", line_no, " in ", path);
    std::istringstream us(utts);
    std::string u;
    while (std::getline(us, u, ',')) st.trial.enroll_utts.push_back(u);
    st.trial.is_target = label == "target";
    st.trial.snr_db = mix::ParseDb(snr);
    if (score != "ERROR") {
      st.score = std::stod(score);
      st.ok = true;
    }
    scored.push_back(std::move(st));
  }
  return scored;
}

EerResult EerOfScored(const std::vector<ScoredTrial> &scored) {
  std::vector<double> scores;
  std::vector<int> labels;
  for (const ScoredTrial &st : scored) {
    if (!st.ok) continue;
    scores.push_back(st.score);
    labels.push_back(st.trial.is_target ? 1 : 0);
  }
  return ComputeEer(scores, labels);
}

}  // namespace eval
}  // namespace tase
