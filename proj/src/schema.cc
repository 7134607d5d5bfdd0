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

#include "causalkg/schema.h"

#include <algorithm>
#include <map>

#include "causalkg/error.h"

namespace causalkg {
namespace {

constexpr char kSciClaimDocument[] = R"json({
  "name": "sciclaim",
  "entity_types": ["factor", "evidence", "epistemic", "association",
                   "magnitude", "qualifier"],
  "attribute_types": ["causation", "comparison", "indicates", "sign+",
                      "sign-", "correlation", "test"],
  "relation_types": ["arg0", "arg1", "comp_to", "modifier", "subtype",
                     "q+", "q-"],
  "attribute_domains": {
    "causation": ["association"], "comparison": ["association"],
    "indicates": ["association"], "sign+": ["association"],
    "sign-": ["association"], "correlation": ["association"],
    "test": ["association"]
  },
  "relation_signatures": {
    "arg0": {"head": ["association"], "tail": ["factor", "association"]},
    "arg1": {"head": ["association"], "tail": ["factor", "association"]},
    "comp_to": {"head": ["association"], "tail": ["factor", "association"]},
    "q+": {"head": ["factor", "association"], "tail": ["factor"]},
    "q-": {"head": ["factor", "association"], "tail": ["factor"]},
    "subtype": {"head": ["factor"], "tail": ["factor"]},
    "modifier": {"head": ["*"], "tail": ["*"]}
  },
  "exclusive_attribute_pairs": [["sign+", "sign-"]],
  "exclusive_relation_pairs": [["q+", "q-"]],
  "causal_relation_types": ["q+", "q-"]
})json";

constexpr char kEthnoDocument[] = R"json({
  "name": "ethno",
  "entity_types": ["element", "qualifier"],
  "attribute_types": ["tradition", "event", "influence", "prescribed",
                      "negated"],
  "relation_types": ["agent", "object", "recipient", "consequent",
                     "modifier", "intent+", "function+", "q+", "q-", "t+"],
  "attribute_domains": {},
  "relation_signatures": {},
  "exclusive_attribute_pairs": [],
  "exclusive_relation_pairs": [["q+", "q-"]],
  "causal_relation_types": ["q+", "q-", "intent+", "function+", "t+"]
})json";

int IndexOf(const std::vector<std::string>& v, const std::string& t) {
  auto it = std::find(v.begin(), v.end(), t);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

std::pair<std::string, std::string> Unordered(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::set<std::string> ExpandTypes(const nlohmann::json& j,
                                  const std::vector<std::string>& all) {
  std::set<std::string> out;
  for (const auto& t : j) {
    const std::string name = t.get<std::string>();
    if (name == "*") {
      out.insert(all.begin(), all.end());
    } else {
      out.insert(name);
    }
  }
  return out;
}

void RequireDeclared(const std::vector<std::string>& inventory,
                     const std::string& type, const std::string& where) {
  if (IndexOf(inventory, type) < 0) {
    throw Error(ErrorCode::kUnknownTypeReference,
                where + " references undeclared type '" + type + "'");
  }
}

void RequireUnique(const std::vector<std::string>& inventory,
                   const std::string& what) {
  std::set<std::string> seen;
  for (const auto& t : inventory) {
    if (t.empty() || !seen.insert(t).second) {
      throw Error(ErrorCode::kParseError,
                  what + " has empty or repeated type '" + t + "'");
    }
  }
}

}  // namespace

bool Schema::HasEntityType(const std::string& t) const {
  return IndexOf(entity_types, t) >= 0;
}
bool Schema::HasAttributeType(const std::string& t) const {
  return IndexOf(attribute_types, t) >= 0;
}
bool Schema::HasRelationType(const std::string& t) const {
  return IndexOf(relation_types, t) >= 0;
}
int Schema::EntityIndex(const std::string& t) const {
  return IndexOf(entity_types, t);
}
int Schema::AttributeIndex(const std::string& t) const {
  return IndexOf(attribute_types, t);
}
int Schema::RelationIndex(const std::string& t) const {
  return IndexOf(relation_types, t);
}

bool Schema::AttributeAllowed(const std::string& attribute,
                              const std::string& entity_type) const {
  auto it = attribute_domains.find(attribute);
  return it == attribute_domains.end() || it->second.count(entity_type) > 0;
}

bool Schema::HeadAllowed(const std::string& relation,
                         const std::string& entity_type) const {
  auto it = relation_signatures.find(relation);
  return it == relation_signatures.end() ||
         it->second.heads.count(entity_type) > 0;
}

bool Schema::TailAllowed(const std::string& relation,
                         const std::string& entity_type) const {
  auto it = relation_signatures.find(relation);
  return it == relation_signatures.end() ||
         it->second.tails.count(entity_type) > 0;
}

void ValidateSchema(const Schema& schema) {
  RequireUnique(schema.entity_types, "entity_types");
  RequireUnique(schema.attribute_types, "attribute_types");
  RequireUnique(schema.relation_types, "relation_types");
  for (const auto& [attribute, domain] : schema.attribute_domains) {
    RequireDeclared(schema.attribute_types, attribute, "attribute_domains");
    for (const auto& t : domain) {
      RequireDeclared(schema.entity_types, t, "domain of " + attribute);
    }
  }
  for (const auto& [relation, signature] : schema.relation_signatures) {
    RequireDeclared(schema.relation_types, relation, "relation_signatures");
    for (const auto& t : signature.heads) {
      RequireDeclared(schema.entity_types, t, "head of " + relation);
    }
    for (const auto& t : signature.tails) {
      RequireDeclared(schema.entity_types, t, "tail of " + relation);
    }
  }
  for (const auto& [a, b] : schema.exclusive_attribute_pairs) {
    RequireDeclared(schema.attribute_types, a, "exclusive_attribute_pairs");
    RequireDeclared(schema.attribute_types, b, "exclusive_attribute_pairs");
  }
  for (const auto& [a, b] : schema.exclusive_relation_pairs) {
    RequireDeclared(schema.relation_types, a, "exclusive_relation_pairs");
    RequireDeclared(schema.relation_types, b, "exclusive_relation_pairs");
  }
  for (const auto& t : schema.causal_relation_types) {
    RequireDeclared(schema.relation_types, t, "causal_relation_types");
  }
}

void from_json(const nlohmann::json& j, Schema& schema) {
  Schema s;
  try {
    s.name = j.value("name", "");
    s.entity_types = j.at("entity_types").get<std::vector<std::string>>();
    s.attribute_types =
        j.value("attribute_types", std::vector<std::string>{});
    s.relation_types = j.value("relation_types", std::vector<std::string>{});
    RequireUnique(s.entity_types, "entity_types");
    const nlohmann::json domains =
        j.value("attribute_domains", nlohmann::json::object());
    for (const auto& [attribute, domain] : domains.items()) {
      s.attribute_domains[attribute] = ExpandTypes(domain, s.entity_types);
    }
    const nlohmann::json signatures =
        j.value("relation_signatures", nlohmann::json::object());
    for (const auto& [relation, signature] : signatures.items()) {
      s.relation_signatures[relation] = {
          ExpandTypes(signature.at("head"), s.entity_types),
          ExpandTypes(signature.at("tail"), s.entity_types)};
    }
    for (const auto& pair :
         j.value("exclusive_attribute_pairs", nlohmann::json::array())) {
      s.exclusive_attribute_pairs.insert(Unordered(
          pair.at(0).get<std::string>(), pair.at(1).get<std::string>()));
    }
    for (const auto& pair :
         j.value("exclusive_relation_pairs", nlohmann::json::array())) {
      s.exclusive_relation_pairs.insert(Unordered(
          pair.at(0).get<std::string>(), pair.at(1).get<std::string>()));
    }
    for (const auto& t :
         j.value("causal_relation_types", nlohmann::json::array())) {
      s.causal_relation_types.insert(t.get<std::string>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  ValidateSchema(s);
  schema = std::move(s);
}

void to_json(nlohmann::json& j, const Schema& schema) {
  nlohmann::json domains = nlohmann::json::object();
  for (const auto& [attribute, domain] : schema.attribute_domains) {
    domains[attribute] = domain;
  }
  nlohmann::json signatures = nlohmann::json::object();
  for (const auto& [relation, signature] : schema.relation_signatures) {
    signatures[relation] = {{"head", signature.heads},
                            {"tail", signature.tails}};
  }
  nlohmann::json attribute_pairs = nlohmann::json::array();
  for (const auto& [a, b] : schema.exclusive_attribute_pairs) {
    attribute_pairs.push_back({a, b});
  }
  nlohmann::json relation_pairs = nlohmann::json::array();
  for (const auto& [a, b] : schema.exclusive_relation_pairs) {
    relation_pairs.push_back({a, b});
  }
  j = nlohmann::json{{"name", schema.name},
                     {"entity_types", schema.entity_types},
                     {"attribute_types", schema.attribute_types},
                     {"relation_types", schema.relation_types},
                     {"attribute_domains", std::move(domains)},
                     {"relation_signatures", std::move(signatures)},
                     {"exclusive_attribute_pairs", std::move(attribute_pairs)},
                     {"exclusive_relation_pairs", std::move(relation_pairs)},
                     {"causal_relation_types", schema.causal_relation_types}};
}

const Schema& SciClaimSchema() {
  static const Schema schema =
      nlohmann::json::parse(kSciClaimDocument).get<Schema>();
  return schema;
}

const Schema& EthnoSchema() {
  static const Schema schema =
      nlohmann::json::parse(kEthnoDocument).get<Schema>();
  return schema;
}

Schema LoadSchema(std::string_view document) {
  if (document == "sciclaim") return SciClaimSchema();
  if (document == "ethno") return EthnoSchema();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  return j.get<Schema>();
}

std::string_view ElementKindName(ElementKind kind) {
  switch (kind) {
    case ElementKind::kRelation: return "relation";
    case ElementKind::kAttribute: return "attribute";
    case ElementKind::kEntity: return "entity";
  }
  return "unknown";
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kAttributeDomain: return "AttributeDomain";
    case ViolationKind::kRelationSignature: return "RelationSignature";
    case ViolationKind::kExclusiveAttributes: return "ExclusiveAttributes";
    case ViolationKind::kExclusiveRelations: return "ExclusiveRelations";
  }
  return "Unknown";
}

std::string AttributeElementId(const std::string& entity,
                               const std::string& attribute) {
  return entity + "/" + attribute;
}

std::string RelationElementId(const Relation& relation) {
  return relation.head + "-[" + relation.type + "]->" + relation.tail;
}

std::vector<Violation> CheckConstraints(const KnowledgeGraph& graph,
                                        const Schema& schema) {
  std::vector<Violation> out;
  std::map<std::string, const Entity*> by_id;

  for (const Entity& e : graph.entities) {
    if (!schema.HasEntityType(e.type)) {
      throw Error(ErrorCode::kUnknownType,
                  "entity type '" + e.type + "' on " + e.id);
    }
    by_id[e.id] = &e;
    const ElementRef entity_ref{ElementKind::kEntity, e.id, e.confidence};
    for (const AttributeLabel& a : e.attributes) {
      if (!schema.HasAttributeType(a.type)) {
        throw Error(ErrorCode::kUnknownType,
                    "attribute type '" + a.type + "' on " + e.id);
      }
      if (!schema.AttributeAllowed(a.type, e.type)) {
        out.push_back({ViolationKind::kAttributeDomain,
                       {{ElementKind::kAttribute,
                         AttributeElementId(e.id, a.type), a.confidence},
                        entity_ref}});
      }
    }
    for (std::size_t i = 0; i < e.attributes.size(); ++i) {
      for (std::size_t k = i + 1; k < e.attributes.size(); ++k) {
        const auto& a = e.attributes[i];
        const auto& b = e.attributes[k];
        if (schema.exclusive_attribute_pairs.count(Unordered(a.type, b.type))) {
          out.push_back(
              {ViolationKind::kExclusiveAttributes,
               {{ElementKind::kAttribute, AttributeElementId(e.id, a.type),
                 a.confidence},
                {ElementKind::kAttribute, AttributeElementId(e.id, b.type),
                 b.confidence}}});
        }
      }
    }
  }

  std::map<std::pair<std::string, std::string>, std::vector<const Relation*>>
      by_pair;
  for (const Relation& r : graph.relations) {
    if (!schema.HasRelationType(r.type)) {
      throw Error(ErrorCode::kUnknownType,
                  "relation type '" + r.type + "' on " + RelationElementId(r));
    }
    const Entity* head = by_id.at(r.head);
    const Entity* tail = by_id.at(r.tail);
    const bool head_ok = schema.HeadAllowed(r.type, head->type);
    const bool tail_ok = schema.TailAllowed(r.type, tail->type);
    if (!head_ok || !tail_ok) {
      Violation v{ViolationKind::kRelationSignature,
                  {{ElementKind::kRelation, RelationElementId(r),
                    r.confidence}}};
      if (!head_ok) {
        v.elements.push_back(
            {ElementKind::kEntity, head->id, head->confidence});
      }
      if (!tail_ok) {
        v.elements.push_back(
            {ElementKind::kEntity, tail->id, tail->confidence});
      }
      out.push_back(std::move(v));
    }
    by_pair[{r.head, r.tail}].push_back(&r);
  }
  for (const auto& [pair, relations] : by_pair) {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      for (std::size_t k = i + 1; k < relations.size(); ++k) {
        const Relation& a = *relations[i];
        const Relation& b = *relations[k];
        if (schema.exclusive_relation_pairs.count(Unordered(a.type, b.type))) {
          out.push_back(
              {ViolationKind::kExclusiveRelations,
               {{ElementKind::kRelation, RelationElementId(a), a.confidence},
                {ElementKind::kRelation, RelationElementId(b),
                 b.confidence}}});
        }
      }
    }
  }

  for (Violation& v : out) std::sort(v.elements.begin(), v.elements.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace causalkg
