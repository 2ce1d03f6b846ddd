// mix/manifest.cc

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

#include "mix/manifest.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "base/common.h"
#include "dsp/wav_io.h"

namespace tase {
namespace mix {

namespace fs = std::filesystem;

std::string FormatDb(double db) {
  if (std::isinf(db) && db > 0) return "inf";
  if (db == std::floor(db)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(db));
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", db);
  return buf;
}

double ParseDb(const std::string &s) {
  if (s == "inf" || s == "+inf") return kInfDb;
  return std::stod(s);
}

namespace {

std::string JoinComma(const std::vector<std::string> &parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::vector<std::string> SplitComma(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void WriteManifest(const std::string &path, const CorpusManifest &manifest) {
  std::ofstream out(path, std::ios::trunc);
  TASE_CHECK(out.good(), "WriteManifest: cannot open ", path);
  out << "#seed\t" << manifest.seed << "\n";
  for (const ManifestEntry &e : manifest.entries) {
    out << e.id << '\t'
        << (e.label == TripletLabel::kTarget ? "target" : "nontarget") << '\t'
        << JoinComma(e.enroll_paths) << '\t' << e.mix_path << '\t'
        << (e.ref_path.empty() ? "NULL" : e.ref_path) << '\t' << e.n_speakers
        << '\t' << FormatDb(e.sir_db) << '\t' << FormatDb(e.snr_db) << '\t'
        << JoinComma(e.speaker_ids) << '\n';
  }
  TASE_CHECK(out.good(), "WriteManifest: write failed for ", path);
}

CorpusManifest ReadManifest(const std::string &path) {
  std::ifstream in(path);
  TASE_CHECK(in.good(), "ReadManifest: cannot open ", path);
  CorpusManifest manifest;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto fields = SplitTabs(line);
      if (fields.size() == 2 && fields[0] == "#seed")
        manifest.seed = std::stoull(fields[1]);
      continue;
    }
    auto fields = SplitTabs(line);
    TASE_CHECK(fields.size() == 9, "ReadManifest: line ", line_no,
               " has ", fields.size(), " fields, want 9: ", path);
    ManifestEntry e;
    e.id = fields[0];
    TASE_CHECK(fields[1] == "target" || fields[1] == "nontarget",
               "ReadManifest: bad label '", fields[1], "' at line ", line_no);
    e.label = fields[1] == "target" ? TripletLabel::kTarget
                                    : TripletLabel::kNontarget;
    e.enroll_paths = SplitComma(fields[2]);
    e.mix_path = fields[3];
    e.ref_path = fields[4] == "NULL" ? "" : fields[4];
    e.n_speakers = std::stoi(fields[5]);
    e.sir_db = ParseDb(fields[6]);
    e.snr_db = ParseDb(fields[7]);
    e.speaker_ids = SplitComma(fields[8]);
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

TrainingTriplet RebuildTriplet(const SpeakerCorpus &corpus,
                               const SimulateOptions &opts, uint64_t seed,
                               int index) {
  Rng rng = MakeRng(seed, static_cast<uint64_t>(index));
  TripletSamplerOptions sampler;
  sampler.nontarget_ratio = opts.nontarget_ratio;
  sampler.num_enrollment = opts.num_enrollment;
  sampler.mix_samples = opts.mix_samples;
  return SampleTriplet(corpus, rng, sampler);
}

CorpusManifest SimulateCorpus(const SpeakerCorpus &corpus,
                              const std::string &speakers_dir,
                              const std::string &out_dir,
                              const SimulateOptions &opts) {
  TASE_CHECK(opts.n_triplets > 0, "SimulateCorpus: n_triplets must be > 0");
  fs::create_directories(fs::path(out_dir) / "audio");
  const fs::path speakers_abs = fs::absolute(speakers_dir);

  CorpusManifest manifest;
  manifest.seed = opts.seed;
  for (int i = 0; i < opts.n_triplets; ++i) {
    TrainingTriplet t = RebuildTriplet(corpus, opts, opts.seed, i);

    char id[32];
    std::snprintf(id, sizeof(id), "t%06d", i);
    ManifestEntry e;
    e.id = id;
    e.label = t.label;
    e.n_speakers = t.spec.n_speakers;
    e.sir_db = t.spec.sir_db;
    e.snr_db = t.spec.snr_db;

    const SpeakerUtterances &enrolled = corpus.speakers[t.enrolled_speaker];
    for (int u : t.enrollment_utts)
      e.enroll_paths.push_back(
          (speakers_abs / enrolled.utterance_ids[u]).generic_string());
    for (int s : t.mixture_speakers)
      e.speaker_ids.push_back(corpus.speakers[s].speaker_id);

    e.mix_path = StrCat("audio/", id, "_mix.wav");
    dsp::WriteWav((fs::path(out_dir) / e.mix_path).string(), t.test_mixture);
    if (t.label == TripletLabel::kTarget) {
      e.ref_path = StrCat("audio/", id, "_ref.wav");
      dsp::WriteWav((fs::path(out_dir) / e.ref_path).string(), t.reference);
    }
    manifest.entries.push_back(std::move(e));
  }
  WriteManifest((fs::path(out_dir) / "manifest.tsv").string(), manifest);
  return manifest;
}

}  // namespace mix
}  // namespace tase
