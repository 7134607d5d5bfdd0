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

#ifndef CAUSALKG_EVALUATION_H_
#define CAUSALKG_EVALUATION_H_

#include <optional>
#include <string>
#include <vector>

#include "causalkg/graph.h"
#include "causalkg/schema.h"
#include "json.hpp"

namespace causalkg {

struct ClassScore {
  std::string name;
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long support = 0;  // gold occurrences
  // Percentages; empty when undefined (rendered "--").
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

struct SectionScore {
  std::string name;
  std::vector<ClassScore> classes;
  // Pools counts over classes with nonzero support.
  ClassScore micro;
};

struct ScoreReport {
  SectionScore entities;
  SectionScore attributes;
  SectionScore relations;
};

// Strict scoring. An entity counts when (start, end, type) matches; an
// attribute when its label sits on a matched entity; a relation when its
// label matches and both endpoint entities match. Graphs are paired by
// provenance. With a schema, classes follow schema order and include unseen
// types; otherwise they are the sorted union of observed labels. Throws
// kAlignmentError.
ScoreReport Score(const std::vector<KnowledgeGraph>& predicted,
                  const std::vector<KnowledgeGraph>& gold,
                  const Schema* schema = nullptr);

// Fills precision/recall/F1 from the counts.
void Finalize(ClassScore& score);

std::string FormatReport(const ScoreReport& report);
void to_json(nlohmann::json& j, const ScoreReport& report);

}  // namespace causalkg

#endif  // CAUSALKG_EVALUATION_H_
