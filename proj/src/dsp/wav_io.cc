// dsp/wav_io.cc

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

#include "dsp/wav_io.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "base/common.h"

namespace tase {
namespace dsp {

namespace {

uint32_t ReadU32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const uint8_t *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::string &s, uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 24) & 0xff));
}

void PutU16(std::string &s, uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  TASE_CHECK(in.good(), "ReadWav: cannot open ", path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  TASE_CHECK(bytes.size() >= 44, "ReadWav: truncated file ", path);
  TASE_CHECK(std::memcmp(bytes.data(), "RIFF", 4) == 0 &&
                 std::memcmp(bytes.data() + 8, "WAVE", 4) == 0,
             "ReadWav: not a RIFF/WAVE file: ", path);

  // Walk chunks; require a PCM16 mono 16 kHz "fmt " before "data".
  size_t pos = 12;
  bool have_fmt = false;
  Waveform w;
  while (pos + 8 <= bytes.size()) {
    const uint8_t *hdr = bytes.data() + pos;
    uint32_t chunk_size = ReadU32(hdr + 4);
    size_t body = pos + 8;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      TASE_CHECK(chunk_size >= 16 && body + 16 <= bytes.size(),
                 "ReadWav: bad fmt chunk in ", path);
      uint16_t format = ReadU16(bytes.data() + body);
      uint16_t channels = ReadU16(bytes.data() + body + 2);
      uint32_t rate = ReadU32(bytes.data() + body + 4);
      uint16_t bits = ReadU16(bytes.data() + body + 14);
      TASE_CHECK(format == 1, "ReadWav: only PCM supported: ", path);
      TASE_CHECK(channels == 1, "ReadWav: only mono supported: ", path);
      TASE_CHECK(rate == static_cast<uint32_t>(kSampleRateHz),
                 "ReadWav: expected 16 kHz, got ", rate, ": ", path);
      TASE_CHECK(bits == 16, "ReadWav: only 16-bit supported: ", path);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      TASE_CHECK(have_fmt, "ReadWav: data chunk before fmt in ", path);
      size_t n = std::min<size_t>(chunk_size, bytes.size() - body) / 2;
      TASE_CHECK(n >= 1, "ReadWav: empty data chunk in ", path);
      w.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        int16_t s = static_cast<int16_t>(ReadU16(bytes.data() + body + 2 * i));
        w.samples[i] = static_cast<double>(s) / 32768.0;
      }
      return w;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }
  throw std::invalid_argument(StrCat("ReadWav: no data chunk in ", path));
}

void WriteWav(const std::string &path, const Waveform &w) {
  ValidateWaveform(w, "WriteWav");
  const uint32_t n = static_cast<uint32_t>(w.size());
  std::string out;
  out.reserve(44 + 2 * n);
  out.append("RIFF");
  PutU32(out, 36 + 2 * n);
  out.append("WAVE");
  out.append("fmt ");
  PutU32(out, 16);
  PutU16(out, 1);                          // PCM
  PutU16(out, 1);                          // mono
  PutU32(out, kSampleRateHz);
  PutU32(out, kSampleRateHz * 2);          // byte rate
  PutU16(out, 2);                          // block align
  PutU16(out, 16);                         // bits per sample
  out.append("data");
  PutU32(out, 2 * n);
  for (uint32_t i = 0; i < n; ++i) {
    double v = std::lround(static_cast<double>(w.samples[i]) * 32768.0);
    if (v > 32767.0) v = 32767.0;
    if (v < -32768.0) v = -32768.0;
    PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  TASE_CHECK(f.good(), "WriteWav: cannot open ", path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  TASE_CHECK(f.good(), "WriteWav: write failed for ", path);
}

}  // namespace dsp
}  // namespace tase
