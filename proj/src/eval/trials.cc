// eval/trials.cc

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

#include "eval/trials.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "base/common.h"

namespace tase {
namespace eval {

TrialInventory InventoryFromManifest(const mix::CorpusManifest &manifest,
                                     const mix::SpeakerCorpus &speakers) {
  TrialInventory inv = InventoryFromCorpus(speakers);
  inv.tests.clear();
  for (const mix::ManifestEntry &e : manifest.entries) {
    TrialInventory::TestUtterance t;
    t.id = e.mix_path;
    t.speakers = e.speaker_ids;
    t.snr_db = e.snr_db;
    inv.tests.push_back(std::move(t));
  }
  return inv;
}

TrialInventory InventoryFromCorpus(const mix::SpeakerCorpus &speakers) {
  TrialInventory inv;
  for (const mix::SpeakerUtterances &spk : speakers.speakers) {
    TASE_CHECK(spk.utterance_ids.size() == spk.utterances.size() ||
                   spk.utterances.empty(),
               "InventoryFromCorpus: speaker ", spk.speaker_id,
               " lacks utterance ids");
    for (const std::string &utt : spk.utterance_ids) {
      inv.enrollment_pool[spk.speaker_id].push_back(utt);
      inv.tests.push_back({utt, {spk.speaker_id}, mix::kInfDb});
    }
  }
  return inv;
}

namespace {

bool Contains(const std::vector<std::string> &haystack,
              const std::string &needle) {
  return std::find(haystack.begin(), haystack.end(), needle) != haystack.end();
}

}  // namespace

std::vector<Trial> GenerateTrials(const TrialInventory &inventory,
                                  const TrialGenOptions &opts, Rng &rng) {
  TASE_CHECK(inventory.enrollment_pool.size() >= 2,
             "GenerateTrials: need at least 2 enrollable speakers, got ",
             inventory.enrollment_pool.size());

  std::vector<std::string> speakers;
  for (const auto &[spk, utts] : inventory.enrollment_pool)
    speakers.push_back(spk);

  // Every (test, speaker) pairing that can seat a full enrollment.
  struct Pair {
    size_t test_index;
    std::string speaker;
  };
  std::vector<Pair> target_pool, nontarget_pool;
  for (size_t ti = 0; ti < inventory.tests.size(); ++ti) {
    const auto &test = inventory.tests[ti];
    for (const std::string &spk : speakers) {
      const auto &utts = inventory.enrollment_pool.at(spk);
      int usable = 0;
      for (const std::string &u : utts) usable += (u != test.id);
      if (usable < opts.num_enrollment) continue;
      if (Contains(test.speakers, spk))
        target_pool.push_back({ti, spk});
      else
        nontarget_pool.push_back({ti, spk});
    }
  }
  TASE_CHECK(
      opts.n_target == 0 || !target_pool.empty(),
      "GenerateTrials: no eligible target pairs (tests: ",
      inventory.tests.size(), ", speakers: ", speakers.size(), ")");
  TASE_CHECK(
      opts.n_nontarget == 0 || !nontarget_pool.empty(),
      "GenerateTrials: no eligible nontarget pairs (tests: ",
      inventory.tests.size(), ", speakers: ", speakers.size(), ")");

  std::vector<Trial> trials;
  auto emit = [&](const std::vector<Pair> &pool, int count, bool is_target) {
    for (int i = 0; i < count; ++i) {
      const Pair &pick = pool[static_cast<size_t>(
          UniformInt(rng, 0, static_cast<int64_t>(pool.size()) - 1))];
      const auto &test = inventory.tests[pick.test_index];
      Trial trial;
      trial.enroll_speaker = pick.speaker;
      trial.test_utt = test.id;
      trial.is_target = is_target;
      trial.snr_db = test.snr_db;
      std::vector<std::string> pool_utts;
      for (const std::string &u : inventory.enrollment_pool.at(pick.speaker))
        if (u != test.id) pool_utts.push_back(u);
      for (int e = 0; e < opts.num_enrollment; ++e) {
        const size_t j = static_cast<size_t>(
            UniformInt(rng, 0, static_cast<int64_t>(pool_utts.size()) - 1));
        trial.enroll_utts.push_back(pool_utts[j]);
        if (pool_utts.size() > 1) pool_utts.erase(pool_utts.begin() + j);
      }
      trials.push_back(std::move(trial));
    }
  };
  emit(target_pool, opts.n_target, true);
  emit(nontarget_pool, opts.n_nontarget, false);
  return trials;
}

void WriteTrials(const std::string &path, const std::vector<Trial> &trials) {
  std::ofstream out(path, std::ios::trunc);
  TASE_CHECK(out.good(), "WriteTrials: cannot open ", path);
  for (const Trial &t : trials) {
    out << t.enroll_speaker << '\t';
    for (size_t i = 0; i < t.enroll_utts.size(); ++i)
      out << (i ? "," : "") << t.enroll_utts[i];
    out << '\t' << t.test_utt << '\t' << (t.is_target ? "target" : "nontarget")
        << '\t' << mix::FormatDb(t.snr_db) << '\n';
  }
  TASE_CHECK(out.good(), "WriteTrials: write failed for ", path);
}

std::vector<Trial> ReadTrials(const std::string &path) {
  std::ifstream in(path);
  TASE_CHECK(in.good(), "ReadTrials: cannot open ", path);
  std::vector<Trial> trials;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Trial t;
    std::string utts, label, snr;
    TASE_CHECK(static_cast<bool>(ss >> t.enroll_speaker >> utts >> t.test_utt
                                    >> label >> snr),
               "ReadTrials: malformed line ", line_no, " in ", path);
    std::istringstream us(utts);
    std::string u;
    while (std::getline(us, u, ',')) t.enroll_utts.push_back(u);
    TASE_CHECK(label == "target" || label == "nontarget",
               "ReadTrials: bad label at line ", line_no);
    t.is_target = label == "target";
    t.snr_db = mix::ParseDb(snr);
    trials.push_back(std::move(t));
  }
  return trials;
}

}  // namespace eval
}  // namespace tase
