// eval/trials.h

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

#ifndef TASE_EVAL_TRIALS_H_
#define TASE_EVAL_TRIALS_H_

#include <map>
#include <string>
#include <vector>

#include "base/rng.h"
#include "mix/manifest.h"

namespace tase {
namespace eval {

// One verification trial: does `test_utt` contain `enroll_speaker`?
struct Trial {
  std::string enroll_speaker;
  std::vector<std::string> enroll_utts;  // single-speaker clean utterances
  std::string test_utt;
  bool is_target = false;
  double snr_db = mix::kInfDb;  // annotation of the test utterance
};

// The pools trials are drawn from. Enrollment draws only from clean
// single-speaker utterances; test utterances carry their speaker set and an
// SNR annotation (clean utterances are +inf).
struct TrialInventory {
  struct TestUtterance {
    std::string id;
    std::vector<std::string> speakers;
    double snr_db = mix::kInfDb;
  };
  std::map<std::string, std::vector<std::string>> enrollment_pool;
  std::vector<TestUtterance> tests;
};

// Inventory over a simulated mixture corpus: tests are the mixtures, the
// enrollment pool is the clean speaker directory.
TrialInventory InventoryFromManifest(const mix::CorpusManifest &manifest,
                                     const mix::SpeakerCorpus &speakers);

// Inventory over clean utterances only (embedding-baseline protocol).
TrialInventory InventoryFromCorpus(const mix::SpeakerCorpus &speakers);

struct TrialGenOptions {
  int n_target = 100;
  int n_nontarget = 1000;  // mirrors the 10:1 trial imbalance, desk scale
  int num_enrollment = 3;
};

// Draws exact counts; never pairs a test utterance with itself as an
// enrollment cut; deterministic under the generator. Throws with the
// available counts when the inventory cannot support a class.
std::vector<Trial> GenerateTrials(const TrialInventory &inventory,
                                  const TrialGenOptions &opts, Rng &rng);

// Tab-separated: enroll_spk  enroll_utts(,)  test_utt  target|nontarget  snr.
void WriteTrials(const std::string &path, const std::vector<Trial> &trials);
std::vector<Trial> ReadTrials(const std::string &path);

}  // namespace eval
}  // namespace tase

#endif  // TASE_EVAL_TRIALS_H_
