// Copyright 2026 The causalkg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAUSALKG_TESTS_TEST_UTIL_H_
#define CAUSALKG_TESTS_TEST_UTIL_H_

#include <functional>
#include <ostream>

#include "causalkg/error.h"
#include "gtest/gtest.h"

namespace causalkg {

inline void PrintTo(ErrorCode code, std::ostream* os) {
  *os << ErrorCodeName(code);
}

namespace testing {

// The code of the causalkg::Error thrown by `f`; records a failure if none.
inline ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no causalkg::Error thrown";
  return ErrorCode::kIoError;
}

}  // namespace testing
}  // namespace causalkg

#endif  // CAUSALKG_TESTS_TEST_UTIL_H_
