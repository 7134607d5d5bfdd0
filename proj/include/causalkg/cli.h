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

#ifndef CAUSALKG_CLI_H_
#define CAUSALKG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace causalkg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one subcommand (train, eval, extract, rectify, senses, valence, query,
// dot). `args` excludes the program name. Usage errors return 1 with help on
// `err`; data and schema errors return 2 with a diagnostic.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace causalkg

#endif  // CAUSALKG_CLI_H_
