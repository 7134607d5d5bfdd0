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

#ifndef CAUSALKG_SCHEMA_H_
#define CAUSALKG_SCHEMA_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causalkg/graph.h"
#include "json.hpp"

namespace causalkg {

struct RelationSignature {
  std::set<std::string> heads;
  std::set<std::string> tails;
};

// Type inventories plus the constraints a rectified graph must satisfy.
// Inventories are ordered; the extraction model indexes its classes by
// position in these vectors.
struct Schema {
  std::string name;
  std::vector<std::string> entity_types;
  std::vector<std::string> attribute_types;
  std::vector<std::string> relation_types;
  // Attributes or relations without an entry are unconstrained.
  std::map<std::string, std::set<std::string>> attribute_domains;
  std::map<std::string, RelationSignature> relation_signatures;
  // Unordered pairs, stored with first < second.
  std::set<std::pair<std::string, std::string>> exclusive_attribute_pairs;
  std::set<std::pair<std::string, std::string>> exclusive_relation_pairs;
  std::set<std::string> causal_relation_types;

  bool HasEntityType(const std::string& t) const;
  bool HasAttributeType(const std::string& t) const;
  bool HasRelationType(const std::string& t) const;
  int EntityIndex(const std::string& t) const;
  int AttributeIndex(const std::string& t) const;
  int RelationIndex(const std::string& t) const;

  bool AttributeAllowed(const std::string& attribute,
                        const std::string& entity_type) const;
  bool HeadAllowed(const std::string& relation,
                   const std::string& entity_type) const;
  bool TailAllowed(const std::string& relation,
                   const std::string& entity_type) const;
  bool IsCausal(const std::string& relation) const {
    return causal_relation_types.count(relation) > 0;
  }
};

// Resolves "sciclaim" and "ethno" to the built-in schemas; anything else is
// parsed as a JSON schema document. Throws kParseError or
// kUnknownTypeReference.
Schema LoadSchema(std::string_view document);

const Schema& SciClaimSchema();
const Schema& EthnoSchema();

// Checks declared-inventory invariants of a hand-built schema.
void ValidateSchema(const Schema& schema);

void to_json(nlohmann::json& j, const Schema& schema);
void from_json(const nlohmann::json& j, Schema& schema);

// Ordering of kinds doubles as the rectifier's tie-break preference.
enum class ElementKind { kRelation = 0, kAttribute = 1, kEntity = 2 };

std::string_view ElementKindName(ElementKind kind);

// A removable graph element. Ids: "e1" for entities, "e1/sign+" for
// attributes, "e1-[q+]->e2" for relations.
struct ElementRef {
  ElementKind kind = ElementKind::kEntity;
  std::string id;
  double confidence = 0.0;

  auto operator<=>(const ElementRef&) const = default;
};

std::string AttributeElementId(const std::string& entity,
                               const std::string& attribute);
std::string RelationElementId(const Relation& relation);

enum class ViolationKind {
  kAttributeDomain,
  kRelationSignature,
  kExclusiveAttributes,
  kExclusiveRelations,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::kAttributeDomain;
  // The conflicting elements, sorted.
  std::vector<ElementRef> elements;

  auto operator<=>(const Violation&) const = default;
};

// Every schema violation in the graph, in canonical sorted order, so the
// result does not depend on entity or relation order. Throws kUnknownType
// when the graph uses a type the schema does not declare.
std::vector<Violation> CheckConstraints(const KnowledgeGraph& graph,
                                        const Schema& schema);

}  // namespace causalkg

#endif  // CAUSALKG_SCHEMA_H_
