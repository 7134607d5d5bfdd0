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

#ifndef CAUSALKG_RECTIFIER_H_
#define CAUSALKG_RECTIFIER_H_

#include <string>
#include <vector>

#include "causalkg/graph.h"
#include "causalkg/schema.h"
#include "json.hpp"

namespace causalkg {

struct Removal {
  ElementRef element;
  ViolationKind violation = ViolationKind::kAttributeDomain;
  // True for attributes and relations dropped because their entity went.
  bool cascade = false;

  bool operator==(const Removal&) const = default;
};

using RemovalLog = std::vector<Removal>;

struct Rectified {
  KnowledgeGraph graph;
  RemovalLog log;
};

// Prunes the graph until it satisfies the schema. Each round picks, over all
// current violations, the participant ranked lowest by (confidence, kind
// relation < attribute < entity, id) and removes it; removing an entity also
// removes its attributes and incident relations. Throws kUnknownType.
Rectified Rectify(const KnowledgeGraph& graph, const Schema& schema);

void to_json(nlohmann::json& j, const Removal& removal);

}  // namespace causalkg

#endif  // CAUSALKG_RECTIFIER_H_
