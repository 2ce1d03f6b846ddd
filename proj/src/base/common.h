// base/common.h

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

#ifndef TASE_BASE_COMMON_H_
#define TASE_BASE_COMMON_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace tase {

namespace detail {

inline void StrAppend(std::ostringstream &) {}

template <typename T, typename... Rest>
void StrAppend(std::ostringstream &os, const T &value, const Rest &...rest) {
  os << value;
  StrAppend(os, rest...);
}

}  // namespace detail

template <typename... Args>
std::string StrCat(const Args &...args) {
  std::ostringstream os;
  detail::StrAppend(os, args...);
  return os.str();
}

// Contract violations on caller-supplied data.
#define TASE_CHECK(cond, ...)                                    \
  do {                                                           \
    if (!(cond))                                                 \
      throw std::invalid_argument(::tase::StrCat(__VA_ARGS__)); \
  } while (0)

// Internal invariants; failure means a bug in this library.
#define TASE_ASSERT(cond, ...)                                 \
  do {                                                         \
    if (!(cond))                                               \
      throw std::logic_error(::tase::StrCat(__VA_ARGS__));    \
  } while (0)

}  // namespace tase

#endif  // TASE_BASE_COMMON_H_
