// base/rng.h

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

#ifndef TASE_BASE_RNG_H_
#define TASE_BASE_RNG_H_

#include <cstdint>
#include <random>

namespace tase {

// All randomness in the project flows through explicitly seeded generators.
// Workers and per-item jobs derive independent streams with MixSeed so that
// results are a pure function of (global seed, item id).
using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates nearby (seed, stream) pairs.
inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream));
}

inline Rng MakeRng(uint64_t seed) { return Rng(SplitMix64(seed)); }

inline Rng MakeRng(uint64_t seed, uint64_t stream) {
  return Rng(MixSeed(seed, stream));
}

// Inclusive on both ends.
inline int64_t UniformInt(Rng &rng, int64_t lo, int64_t hi) {
  std::uniform_int_distribution<int64_t> d(lo, hi);
  return d(rng);
}

inline double UniformReal(Rng &rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

inline double Gaussian(Rng &rng, double mean = 0.0, double stddev = 1.0) {
  std::normal_distribution<double> d(mean, stddev);
  return d(rng);
}

template <typename Container>
const typename Container::value_type &PickOne(Rng &rng, const Container &c) {
  return c[UniformInt(rng, 0, static_cast<int64_t>(c.size()) - 1)];
}

}  // namespace tase

#endif  // TASE_BASE_RNG_H_
