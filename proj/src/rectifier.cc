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

#include "causalkg/rectifier.h"

#include <algorithm>
#include <tuple>

namespace causalkg {
namespace {

auto RemovalKey(const ElementRef& e) {
  return std::make_tuple(e.confidence, static_cast<int>(e.kind),
                         std::cref(e.id));
}

void RemoveAttribute(KnowledgeGraph& graph, const std::string& element_id) {
  for (Entity& e : graph.entities) {
    std::erase_if(e.attributes, [&](const AttributeLabel& a) {
      return AttributeElementId(e.id, a.type) == element_id;
    });
  }
}

}  // namespace

Rectified Rectify(const KnowledgeGraph& graph, const Schema& schema) {
  Rectified out{graph, {}};
  KnowledgeGraph& g = out.graph;

  for (;;) {
    const std::vector<Violation> violations = CheckConstraints(g, schema);
    if (violations.empty()) break;

    const ElementRef* victim = nullptr;
    ViolationKind reason = ViolationKind::kAttributeDomain;
    for (const Violation& v : violations) {
      for (const ElementRef& e : v.elements) {
        if (!victim || RemovalKey(e) < RemovalKey(*victim)) {
          victim = &e;
          reason = v.kind;
        }
      }
    }
    const ElementRef chosen = *victim;
    out.log.push_back({chosen, reason, false});

    switch (chosen.kind) {
      case ElementKind::kRelation:
        std::erase_if(g.relations, [&](const Relation& r) {
          return RelationElementId(r) == chosen.id;
        });
        break;
      case ElementKind::kAttribute:
        RemoveAttribute(g, chosen.id);
        break;
      case ElementKind::kEntity: {
        auto it = std::find_if(
            g.entities.begin(), g.entities.end(),
            [&](const Entity& e) { return e.id == chosen.id; });
        for (const AttributeLabel& a : it->attributes) {
          out.log.push_back({{ElementKind::kAttribute,
                              AttributeElementId(it->id, a.type),
                              a.confidence},
                             reason,
                             true});
        }
        g.entities.erase(it);
        std::erase_if(g.relations, [&](const Relation& r) {
          if (r.head != chosen.id && r.tail != chosen.id) return false;
          out.log.push_back({{ElementKind::kRelation, RelationElementId(r),
                              r.confidence},
                             reason,
                             true});
          return true;
        });
        break;
      }
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const Removal& removal) {
  j = nlohmann::json{{"element", removal.element.id},
                     {"kind", ElementKindName(removal.element.kind)},
                     {"confidence", removal.element.confidence},
                     {"violation", ViolationKindName(removal.violation)},
                     {"cascade", removal.cascade}};
}

}  // namespace causalkg
