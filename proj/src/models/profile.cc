// models/profile.cc

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

#include "models/profile.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "base/common.h"

namespace tase {
namespace models {

SpeakerProfile BuildProfile(const std::string &speaker_id,
                            const std::vector<dsp::Waveform> &enrollments,
                            const std::vector<std::string> &paths,
                            const nnet::Network<float> &net1,
                            const nnet::Network<float> &net2,
                            const Enhancer<float> &enhancer, bool two_pass) {
  TASE_CHECK(!enrollments.empty(), "BuildProfile: empty enrollment list");
  SpeakerProfile profile;
  profile.speaker_id = speaker_id;
  profile.enrollment_paths = paths;

  std::vector<nnet::Tensor<float>> emb1, emb2;
  for (const dsp::Waveform &utt : enrollments) {
    emb1.push_back(Embed(net1, utt));
    emb2.push_back(Embed(net2, utt));
  }
  profile.bias = NormalizedMean(emb1);
  profile.score_raw = NormalizedMean(emb2);

  if (two_pass) {
    // Self-enhance each enrollment, anchored on the raw bias.
    std::vector<nnet::Tensor<float>> emb1_enh, emb2_enh;
    for (const dsp::Waveform &utt : enrollments) {
      const dsp::Waveform enhanced = enhancer.Enhance(utt, profile.bias);
      emb1_enh.push_back(Embed(net1, enhanced));
      emb2_enh.push_back(Embed(net2, enhanced));
    }
    profile.bias_enhanced = NormalizedMean(emb1_enh);
    profile.score_enhanced = NormalizedMean(emb2_enh);
  }
  return profile;
}

namespace {

void WriteVector(std::ofstream &out, const char *key,
                 const nnet::Tensor<float> &v) {
  if (v.size() == 0) return;
  out << key;
  char buf[32];
  for (float x : v.v) {
    std::snprintf(buf, sizeof(buf), " %.9g", x);  // float32 exact
    out << buf;
  }
  out << "\n";
}

nnet::Tensor<float> ParseVector(std::istringstream &ss) {
  std::vector<float> values;
  double x;
  while (ss >> x) values.push_back(static_cast<float>(x));
  nnet::Tensor<float> t(static_cast<int>(values.size()), 1);
  t.v = values;
  return t;
}

}  // namespace

void WriteProfile(const std::string &path, const SpeakerProfile &profile) {
  std::ofstream out(path, std::ios::trunc);
  TASE_CHECK(out.good(), "WriteProfile: cannot open ", path);
  out << "speaker " << profile.speaker_id << "\n";
  for (const std::string &p : profile.enrollment_paths)
    out << "enroll " << p << "\n";
  WriteVector(out, "bias", profile.bias);
  WriteVector(out, "bias_enhanced", profile.bias_enhanced);
  WriteVector(out, "score_raw", profile.score_raw);
  WriteVector(out, "score_enhanced", profile.score_enhanced);
  TASE_CHECK(out.good(), "WriteProfile: write failed for ", path);
}

SpeakerProfile ReadProfile(const std::string &path) {
  std::ifstream in(path);
  TASE_CHECK(in.good(), "ReadProfile: cannot open ", path);
  SpeakerProfile profile;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "speaker") ss >> profile.speaker_id;
    else if (key == "enroll") {
      std::string p;
      ss >> p;
      profile.enrollment_paths.push_back(p);
    } else if (key == "bias") profile.bias = ParseVector(ss);
    else if (key == "bias_enhanced") profile.bias_enhanced = ParseVector(ss);
    else if (key == "score_raw") profile.score_raw = ParseVector(ss);
    else if (key == "score_enhanced") profile.score_enhanced = ParseVector(ss);
    else throw std::invalid_argument(StrCat("ReadProfile: unknown key '", key,
                                            "' in ", path));
  }
  TASE_CHECK(profile.bias.size() > 0, "ReadProfile: missing bias in ", path);
  return profile;
}

}  // namespace models
}  // namespace tase
