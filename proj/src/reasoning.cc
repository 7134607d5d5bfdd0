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

#include "causalkg/reasoning.h"

#include <algorithm>
#include <functional>
#include <map>

#include "causalkg/error.h"
#include "causalkg/schema.h"

namespace causalkg {
namespace {

const std::set<std::string>& PropagationEdges() {
  static const std::set<std::string> edges = {
      "intent+", "function+", "consequent", "object", "recipient", "q+", "q-"};
  return edges;
}

void RequireEthno(const KnowledgeGraph& graph) {
  const Schema& ethno = EthnoSchema();
  for (const Entity& e : graph.entities) {
    if (!ethno.HasEntityType(e.type)) {
      throw Error(ErrorCode::kSchemaMismatch, "entity type " + e.type);
    }
    for (const AttributeLabel& a : e.attributes) {
      if (!ethno.HasAttributeType(a.type)) {
        throw Error(ErrorCode::kSchemaMismatch, "attribute type " + a.type);
      }
    }
  }
  for (const Relation& r : graph.relations) {
    if (!ethno.HasRelationType(r.type)) {
      throw Error(ErrorCode::kSchemaMismatch, "relation type " + r.type);
    }
  }
}

Valence Flip(Valence v) {
  return v == Valence::kPositive ? Valence::kNegative : Valence::kPositive;
}

std::set<std::string> StringSet(const nlohmann::json& j) {
  return j.get<std::set<std::string>>();
}

}  // namespace

std::vector<ValenceAssertion> ComputeValence(const KnowledgeGraph& graph) {
  RequireEthno(graph);
  std::map<std::string, const Entity*> by_id;
  std::map<std::string, std::vector<const Relation*>> outgoing;
  for (const Entity& e : graph.entities) by_id[e.id] = &e;
  for (const Relation& r : graph.relations) outgoing[r.head].push_back(&r);

  std::vector<ValenceAssertion> out;
  std::set<std::tuple<std::string, std::string, Valence>> emitted;

  for (const Entity& source : graph.entities) {
    const auto& edges = outgoing[source.id];
    const bool intentional =
        std::any_of(edges.begin(), edges.end(), [](const Relation* r) {
          return r->type == "intent+" || r->type == "function+";
        });
    if (!intentional && !source.HasAttribute("prescribed")) continue;

    std::vector<std::string> holders;
    for (const Relation* r : edges) {
      if (r->type == "agent") holders.push_back(r->tail);
    }
    if (holders.empty()) holders.push_back(kNormHolder);

    std::vector<std::pair<std::string, Valence>> reached;
    std::set<std::pair<std::string, Valence>> visited;
    std::function<void(const std::string&, Valence)> visit =
        [&](const std::string& node, Valence sign) {
          if (!visited.emplace(node, sign).second) return;
          reached.emplace_back(node, sign);
          for (const Relation* r : outgoing[node]) {
            if (!PropagationEdges().count(r->type)) continue;
            Valence next = r->type == "q-" ? Flip(sign) : sign;
            if (by_id.at(r->tail)->HasAttribute("negated")) next = Flip(next);
            visit(r->tail, next);
          }
        };
    visit(source.id, source.HasAttribute("negated") ? Valence::kNegative
                                                    : Valence::kPositive);

    for (const std::string& holder : holders) {
      for (const auto& [node, sign] : reached) {
        if (emitted.emplace(holder, node, sign).second) {
          out.push_back({holder, node, sign, source.id});
        }
      }
    }
  }
  return out;
}

bool NodePattern::Empty() const {
  return !lemma_any_of && !entity_type && !required_attributes &&
         role_constraints.empty();
}

bool Matches(const NodePattern& pattern, const KnowledgeGraph& graph,
             const Entity& node) {
  if (pattern.entity_type && node.type != *pattern.entity_type) return false;
  if (pattern.lemma_any_of) {
    const std::set<std::string> lemmas = graph.SpanLemmas(node.span);
    const bool any = std::any_of(
        lemmas.begin(), lemmas.end(),
        [&](const std::string& l) { return pattern.lemma_any_of->count(l); });
    if (!any) return false;
  }
  if (pattern.required_attributes) {
    for (const std::string& a : *pattern.required_attributes) {
      if (!node.HasAttribute(a)) return false;
    }
  }
  for (const auto& [relation, sub] : pattern.role_constraints) {
    const bool satisfied = std::any_of(
        graph.relations.begin(), graph.relations.end(), [&](const Relation& r) {
          return r.head == node.id && r.type == relation &&
                 Matches(sub, graph, *graph.FindEntity(r.tail));
        });
    if (!satisfied) return false;
  }
  return true;
}

NodePattern ParseNodePattern(const nlohmann::json& j) {
  NodePattern p;
  try {
    if (!j.is_object()) {
      throw Error(ErrorCode::kParseError, "node pattern must be an object");
    }
    if (j.contains("lemma_any_of")) p.lemma_any_of = StringSet(j["lemma_any_of"]);
    if (j.contains("entity_type")) {
      p.entity_type = j["entity_type"].get<std::string>();
    }
    if (j.contains("required_attributes")) {
      p.required_attributes = StringSet(j["required_attributes"]);
    }
    for (const auto& role :
         j.value("role_constraints", nlohmann::json::array())) {
      p.role_constraints.emplace_back(role.at("relation").get<std::string>(),
                                      ParseNodePattern(role.at("pattern")));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  if (p.Empty()) throw Error(ErrorCode::kParseError, "empty node pattern");
  return p;
}

Query ParseQuery(const nlohmann::json& j) {
  Query q;
  try {
    q.start = ParseNodePattern(j.at("start"));
    q.end = ParseNodePattern(j.at("end"));
    q.max_len = j.value("max_len", q.max_len);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  if (q.max_len < 1) throw Error(ErrorCode::kParseError, "max_len < 1");
  return q;
}

std::string CorpusEdgeId(const KnowledgeGraph& graph, const Relation& r) {
  return graph.provenance + ":" + RelationElementId(r);
}

std::string LemmaLinkId(const CorpusGraph& corpus, const LemmaLink& link) {
  return "lemma:" + corpus.graphs[link.a.graph].provenance + "/" +
         link.a.entity + "~" + corpus.graphs[link.b.graph].provenance + "/" +
         link.b.entity;
}

QueryResult FindPaths(const CorpusGraph& corpus, const NodePattern& start,
                      const NodePattern& end, int max_len) {
  if (max_len < 1) throw Error(ErrorCode::kInvalidConfig, "max_len < 1");

  struct Step {
    std::string edge;
    NodeRef to;
    auto operator<=>(const Step&) const = default;
  };
  std::map<NodeRef, std::vector<Step>> adjacency;
  std::vector<NodeRef> starts;
  std::set<NodeRef> ends;
  for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
    const KnowledgeGraph& g = corpus.graphs[gi];
    for (const Entity& e : g.entities) {
      const NodeRef ref{gi, e.id};
      if (Matches(start, g, e)) starts.push_back(ref);
      if (Matches(end, g, e)) ends.insert(ref);
    }
    for (const Relation& r : g.relations) {
      const std::string id = CorpusEdgeId(g, r);
      adjacency[{gi, r.head}].push_back({id, {gi, r.tail}});
      if (r.type == "modifier") {
        adjacency[{gi, r.tail}].push_back({id, {gi, r.head}});
      }
    }
  }
  for (const LemmaLink& link : corpus.lemma_links) {
    const std::string id = LemmaLinkId(corpus, link);
    adjacency[link.a].push_back({id, link.b});
    adjacency[link.b].push_back({id, link.a});
  }
  for (auto& [node, steps] : adjacency) std::sort(steps.begin(), steps.end());
  std::sort(starts.begin(), starts.end());

  QueryResult result;
  Path path;
  std::set<NodeRef> on_path;
  std::function<void(const NodeRef&)> extend = [&](const NodeRef& node) {
    if (static_cast<int>(path.edges.size()) == max_len) return;
    auto it = adjacency.find(node);
    if (it == adjacency.end()) return;
    for (const Step& step : it->second) {
      if (on_path.count(step.to)) continue;
      path.nodes.push_back(step.to);
      path.edges.push_back(step.edge);
      on_path.insert(step.to);
      if (ends.count(step.to)) result.paths.push_back(path);
      extend(step.to);
      on_path.erase(step.to);
      path.nodes.pop_back();
      path.edges.pop_back();
    }
  };
  for (const NodeRef& s : starts) {
    path = Path{{s}, {}};
    on_path = {s};
    extend(s);
  }

  std::sort(result.paths.begin(), result.paths.end());
  for (const Path& p : result.paths) {
    result.nodes.insert(p.nodes.begin(), p.nodes.end());
    result.edges.insert(p.edges.begin(), p.edges.end());
  }
  return result;
}

nlohmann::json QueryResultToJson(const CorpusGraph& corpus,
                                 const QueryResult& result) {
  auto node_id = [&](const NodeRef& n) {
    return corpus.graphs[n.graph].provenance + "/" + n.entity;
  };
  nlohmann::json paths = nlohmann::json::array();
  for (const Path& p : result.paths) {
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      if (i > 0) steps.push_back(p.edges[i - 1]);
      steps.push_back(node_id(p.nodes[i]));
    }
    paths.push_back(std::move(steps));
  }
  nlohmann::json nodes = nlohmann::json::array();
  for (const NodeRef& n : result.nodes) {
    const KnowledgeGraph& g = corpus.graphs[n.graph];
    const Entity* e = g.FindEntity(n.entity);
    nodes.push_back({{"id", node_id(n)},
                     {"provenance", g.provenance},
                     {"entity", n.entity},
                     {"text", g.SpanText(e->span)},
                     {"type", e->type}});
  }
  return {{"paths", std::move(paths)},
          {"nodes", std::move(nodes)},
          {"edges", result.edges}};
}

void to_json(nlohmann::json& j, const ValenceAssertion& a) {
  j = nlohmann::json{{"holder", a.holder},
                     {"target", a.target},
                     {"sign", a.sign == Valence::kPositive ? "+" : "-"},
                     {"source", a.source}};
}

}  // namespace causalkg
