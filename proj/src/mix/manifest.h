// mix/manifest.h

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

#ifndef TASE_MIX_MANIFEST_H_
#define TASE_MIX_MANIFEST_H_

#include <string>
#include <vector>

#include "mix/triplet.h"

namespace tase {
namespace mix {

// One line of the corpus manifest. Paths are stored as written; relative
// paths resolve against the manifest's own directory.
struct ManifestEntry {
  std::string id;
  TripletLabel label = TripletLabel::kTarget;
  std::vector<std::string> enroll_paths;
  std::string mix_path;
  std::string ref_path;  // "NULL" for nontarget triplets
  int n_speakers = 1;
  double sir_db = kInfDb;
  double snr_db = 30.0;
  std::vector<std::string> speaker_ids;  // speakers present in the mixture
};

struct CorpusManifest {
  uint64_t seed = 0;
  std::vector<ManifestEntry> entries;
};

// Tab-separated, one triplet per line:
//   id  label  enroll_paths(,)  mix_path  ref_path|NULL  n_spk  sir  snr  spk_ids(,)
// preceded by a "#seed<TAB>N" header line.
void WriteManifest(const std::string &path, const CorpusManifest &manifest);
CorpusManifest ReadManifest(const std::string &path);

std::string FormatDb(double db);   // integral -> "6"; +inf -> "inf"
double ParseDb(const std::string &s);

struct SimulateOptions {
  int n_triplets = 2000;
  double nontarget_ratio = 11.0;
  uint64_t seed = 0;
  size_t mix_samples = 4 * dsp::kSampleRateHz;
  int num_enrollment = 3;
};

// Generates a triplet corpus on disk: mixture and reference WAVs under
// out_dir/audio, manifest at out_dir/manifest.tsv. Triplet i is drawn from an
// independent stream keyed by (seed, i), so generation parallelizes and is
// reproducible per id. `speakers_dir` must be the directory `corpus` was
// loaded from; enrollment entries point at the original clean files.
CorpusManifest SimulateCorpus(const SpeakerCorpus &corpus,
                              const std::string &speakers_dir,
                              const std::string &out_dir,
                              const SimulateOptions &opts);

// Rebuilds the in-memory triplet for entry `index` of a simulated corpus
// (same draw as SimulateCorpus made), for re-measurement and training.
TrainingTriplet RebuildTriplet(const SpeakerCorpus &corpus,
                               const SimulateOptions &opts, uint64_t seed,
                               int index);

}  // namespace mix
}  // namespace tase

#endif  // TASE_MIX_MANIFEST_H_
