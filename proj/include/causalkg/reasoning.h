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

#ifndef CAUSALKG_REASONING_H_
#define CAUSALKG_REASONING_H_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalkg/graph.h"
#include "json.hpp"

namespace causalkg {

inline constexpr char kNormHolder[] = "NORM";

enum class Valence { kPositive = 1, kNegative = -1 };

struct ValenceAssertion {
  std::string holder;  // entity id, or kNormHolder
  std::string target;
  Valence sign = Valence::kPositive;
  std::string source;  // the intent+/function+/prescribed node it came from

  bool operator==(const ValenceAssertion&) const = default;
};

// Valence sources are nodes with an outgoing intent+ or function+ edge and
// nodes carrying the prescribed attribute. From each source a depth-first
// walk follows intent+, function+, consequent, object, recipient, q+ and q-
// edges, starting positive. The sign flips across every q- edge and on
// entering any negated node (the source included). The holder is the
// source's agent, or NORM when it has none. Identical assertions reached from
// several sources are reported once. Throws kSchemaMismatch for graphs
// outside the ethno schema.
std::vector<ValenceAssertion> ComputeValence(const KnowledgeGraph& graph);

struct NodePattern {
  std::optional<std::set<std::string>> lemma_any_of;
  std::optional<std::string> entity_type;
  std::optional<std::set<std::string>> required_attributes;
  // (relation type, pattern the relation's tail must match)
  std::vector<std::pair<std::string, NodePattern>> role_constraints;

  bool Empty() const;
};

bool Matches(const NodePattern& pattern, const KnowledgeGraph& graph,
             const Entity& node);

struct Query {
  NodePattern start;
  NodePattern end;
  int max_len = 6;
};

// Throws kParseError, including for empty patterns.
NodePattern ParseNodePattern(const nlohmann::json& j);
Query ParseQuery(const nlohmann::json& j);

// nodes[i] and nodes[i+1] are joined by edges[i].
struct Path {
  std::vector<NodeRef> nodes;
  std::vector<std::string> edges;

  auto operator<=>(const Path&) const = default;
};

struct QueryResult {
  std::vector<Path> paths;
  std::set<NodeRef> nodes;
  std::set<std::string> edges;
};

// Edge ids inside a corpus: "<provenance>:<head>-[type]-><tail>" for
// relations, "lemma:<prov>/<id>~<prov>/<id>" for lemma links.
std::string CorpusEdgeId(const KnowledgeGraph& graph, const Relation& r);
std::string LemmaLinkId(const CorpusGraph& corpus, const LemmaLink& link);

// All simple paths of 1..max_len edges from a start match to an end match.
// Directed edges are followed forward, modifier edges and lemma links both
// ways. Paths are sorted by their node sequence, then edge ids.
QueryResult FindPaths(const CorpusGraph& corpus, const NodePattern& start,
                      const NodePattern& end, int max_len);

nlohmann::json QueryResultToJson(const CorpusGraph& corpus,
                                 const QueryResult& result);
void to_json(nlohmann::json& j, const ValenceAssertion& assertion);

}  // namespace causalkg

#endif  // CAUSALKG_REASONING_H_
