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

#ifndef CAUSALKG_GRAPH_H_
#define CAUSALKG_GRAPH_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace causalkg {

// Half-open token range [start, end).
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  auto operator<=>(const Span&) const = default;
};

struct AttributeLabel {
  std::string type;
  double confidence = 1.0;

  bool operator==(const AttributeLabel&) const = default;
};

struct SenseScore {
  std::string sense;
  double confidence = 0.0;

  bool operator==(const SenseScore&) const = default;
};

struct Entity {
  std::string id;
  Span span;
  std::string type;
  double confidence = 1.0;
  std::vector<AttributeLabel> attributes;
  std::vector<SenseScore> senses;

  bool HasAttribute(const std::string& attribute_type) const;
  bool operator==(const Entity&) const = default;
};

struct Relation {
  std::string head;
  std::string tail;
  std::string type;
  double confidence = 1.0;

  bool operator==(const Relation&) const = default;
};

// An attribute assertion prior to assembly; attaches to an entity by id.
struct AttributeAssertion {
  std::string entity;
  std::string type;
  double confidence = 1.0;
};

// A directed multigraph over typed token spans. Build through AssembleGraph so
// that the invariants below hold:
//   * at most one entity per exact span;
//   * relations never loop and always reference existing entities;
//   * parallel edges between an ordered pair carry distinct types.
struct KnowledgeGraph {
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<Entity> entities;
  std::vector<Relation> relations;
  std::string provenance;

  const Entity* FindEntity(const std::string& id) const;
  // Surface text of an entity span, tokens joined with single spaces.
  std::string SpanText(const Span& span) const;
  // Distinct lemmas of the tokens covered by the span.
  std::set<std::string> SpanLemmas(const Span& span) const;

  bool operator==(const KnowledgeGraph&) const = default;
};

// Lowercases ASCII letters; used as the fallback lemmatizer.
std::string DefaultLemma(const std::string& token);

// Builds a graph and enforces every structural invariant. Attributes are
// folded into their entities. Empty `lemmas` defaults to lowercased tokens.
// Throws Error with kInvalidSpan, kSelfLoop, kDuplicateSpanType,
// kDuplicateElement, kBadConfidence or kDanglingReference.
KnowledgeGraph AssembleGraph(std::vector<std::string> tokens,
                             std::vector<std::string> lemmas,
                             std::vector<Entity> entities,
                             const std::vector<AttributeAssertion>& attributes,
                             std::vector<Relation> relations,
                             std::string provenance = "");

// Re-checks a graph that was built or edited by hand.
void ValidateGraph(const KnowledgeGraph& graph);

// Reference to an entity inside a corpus: graph index plus entity id.
struct NodeRef {
  std::size_t graph = 0;
  std::string entity;

  auto operator<=>(const NodeRef&) const = default;
};

// Undirected pseudo-edge between same-lemma nodes of two different graphs.
// Stored with `a` < `b`.
struct LemmaLink {
  NodeRef a;
  NodeRef b;

  auto operator<=>(const LemmaLink&) const = default;
};

struct CorpusGraph {
  std::vector<KnowledgeGraph> graphs;
  std::vector<LemmaLink> lemma_links;

  std::size_t NodeCount() const;
  std::size_t EdgeCount() const;
};

// Disjoint union of per-sentence graphs. With `lemma_link`, every pair of
// entities from distinct graphs that share at least one lemma gets a link.
// Throws kDuplicateProvenance.
CorpusGraph MergeCorpus(std::vector<KnowledgeGraph> graphs, bool lemma_link);

void to_json(nlohmann::json& j, const KnowledgeGraph& graph);
void from_json(const nlohmann::json& j, KnowledgeGraph& graph);

}  // namespace causalkg

#endif  // CAUSALKG_GRAPH_H_
