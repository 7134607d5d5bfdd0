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

#include "causalkg/graph.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <utility>

#include "causalkg/error.h"

namespace causalkg {
namespace {

void CheckConfidence(double confidence, const std::string& what) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw Error(ErrorCode::kBadConfidence,
                what + " has confidence " + std::to_string(confidence));
  }
}

bool SharesElement(const std::set<std::string>& a,
                   const std::set<std::string>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

}  // namespace

bool Entity::HasAttribute(const std::string& attribute_type) const {
  return std::any_of(attributes.begin(), attributes.end(),
                     [&](const AttributeLabel& a) {
                       return a.type == attribute_type;
                     });
}

const Entity* KnowledgeGraph::FindEntity(const std::string& id) const {
  for (const Entity& e : entities) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string KnowledgeGraph::SpanText(const Span& span) const {
  std::string text;
  for (int i = span.start; i < span.end; ++i) {
    if (i > span.start) text += ' ';
    text += tokens.at(i);
  }
  return text;
}

std::set<std::string> KnowledgeGraph::SpanLemmas(const Span& span) const {
  std::set<std::string> out;
  for (int i = span.start; i < span.end; ++i) out.insert(lemmas.at(i));
  return out;
}

std::string DefaultLemma(const std::string& token) {
  std::string lemma = token;
  for (char& c : lemma) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return lemma;
}

void ValidateGraph(const KnowledgeGraph& graph) {
  const int n = static_cast<int>(graph.tokens.size());
  if (graph.lemmas.size() != graph.tokens.size()) {
    throw Error(ErrorCode::kInvalidSpan,
                "lemma count " + std::to_string(graph.lemmas.size()) +
                    " differs from token count " + std::to_string(n));
  }

  std::map<std::string, const Entity*> by_id;
  std::map<Span, const Entity*> by_span;
  for (const Entity& e : graph.entities) {
    if (e.id.empty()) {
      throw Error(ErrorCode::kDuplicateElement, "entity with empty id");
    }
    if (e.span.start < 0 || e.span.start >= e.span.end || e.span.end > n) {
      throw Error(ErrorCode::kInvalidSpan,
                  "entity " + e.id + " span [" + std::to_string(e.span.start) +
                      ", " + std::to_string(e.span.end) + ") outside " +
                      std::to_string(n) + " tokens");
    }
    CheckConfidence(e.confidence, "entity " + e.id);
    if (!by_id.emplace(e.id, &e).second) {
      throw Error(ErrorCode::kDuplicateElement, "entity id " + e.id);
    }
    auto [it, inserted] = by_span.emplace(e.span, &e);
    if (!inserted) {
      if (it->second->type != e.type) {
        throw Error(ErrorCode::kDuplicateSpanType,
                    "entities " + it->second->id + " (" + it->second->type +
                        ") and " + e.id + " (" + e.type + ") share a span");
      }
      throw Error(ErrorCode::kDuplicateElement,
                  "entities " + it->second->id + " and " + e.id +
                      " repeat span and type");
    }
    std::set<std::string> seen;
    for (const AttributeLabel& a : e.attributes) {
      CheckConfidence(a.confidence, "attribute " + a.type + " on " + e.id);
      if (!seen.insert(a.type).second) {
        throw Error(ErrorCode::kDuplicateElement,
                    "attribute " + a.type + " repeated on " + e.id);
      }
    }
    for (const SenseScore& s : e.senses) {
      if (!std::isfinite(s.confidence)) {
        throw Error(ErrorCode::kBadConfidence, "sense " + s.sense);
      }
    }
  }

  std::set<std::tuple<std::string, std::string, std::string>> edges;
  for (const Relation& r : graph.relations) {
    const std::string what = r.head + " -" + r.type + "-> " + r.tail;
    if (r.head == r.tail) throw Error(ErrorCode::kSelfLoop, what);
    if (!by_id.count(r.head) || !by_id.count(r.tail)) {
      throw Error(ErrorCode::kDanglingReference, what);
    }
    CheckConfidence(r.confidence, "relation " + what);
    if (!edges.emplace(r.head, r.tail, r.type).second) {
      throw Error(ErrorCode::kDuplicateElement, "relation " + what);
    }
  }
}

KnowledgeGraph AssembleGraph(std::vector<std::string> tokens,
                             std::vector<std::string> lemmas,
                             std::vector<Entity> entities,
                             const std::vector<AttributeAssertion>& attributes,
                             std::vector<Relation> relations,
                             std::string provenance) {
  KnowledgeGraph graph;
  if (lemmas.empty()) {
    lemmas.reserve(tokens.size());
    for (const std::string& t : tokens) lemmas.push_back(DefaultLemma(t));
  }
  graph.tokens = std::move(tokens);
  graph.lemmas = std::move(lemmas);
  graph.entities = std::move(entities);
  graph.relations = std::move(relations);
  graph.provenance = std::move(provenance);

  for (const AttributeAssertion& a : attributes) {
    auto it = std::find_if(graph.entities.begin(), graph.entities.end(),
                           [&](const Entity& e) { return e.id == a.entity; });
    if (it == graph.entities.end()) {
      throw Error(ErrorCode::kDanglingReference,
                  "attribute " + a.type + " on unknown entity " + a.entity);
    }
    it->attributes.push_back({a.type, a.confidence});
  }
  ValidateGraph(graph);
  return graph;
}

std::size_t CorpusGraph::NodeCount() const {
  std::size_t count = 0;
  for (const KnowledgeGraph& g : graphs) count += g.entities.size();
  return count;
}

std::size_t CorpusGraph::EdgeCount() const {
  std::size_t count = 0;
  for (const KnowledgeGraph& g : graphs) count += g.relations.size();
  return count;
}

CorpusGraph MergeCorpus(std::vector<KnowledgeGraph> graphs, bool lemma_link) {
  std::set<std::string> provenances;
  for (const KnowledgeGraph& g : graphs) {
    if (!provenances.insert(g.provenance).second) {
      throw Error(ErrorCode::kDuplicateProvenance, "'" + g.provenance + "'");
    }
  }

  CorpusGraph corpus;
  corpus.graphs = std::move(graphs);
  if (!lemma_link) return corpus;

  // Lemma sets per node, computed once.
  std::vector<std::vector<std::set<std::string>>> lemma_sets;
  for (const KnowledgeGraph& g : corpus.graphs) {
    auto& sets = lemma_sets.emplace_back();
    for (const Entity& e : g.entities) sets.push_back(g.SpanLemmas(e.span));
  }
  for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
    for (std::size_t gj = gi + 1; gj < corpus.graphs.size(); ++gj) {
      const auto& left = corpus.graphs[gi].entities;
      const auto& right = corpus.graphs[gj].entities;
      for (std::size_t a = 0; a < left.size(); ++a) {
        for (std::size_t b = 0; b < right.size(); ++b) {
          if (SharesElement(lemma_sets[gi][a], lemma_sets[gj][b])) {
            corpus.lemma_links.push_back(
                {{gi, left[a].id}, {gj, right[b].id}});
          }
        }
      }
    }
  }
  std::sort(corpus.lemma_links.begin(), corpus.lemma_links.end());
  return corpus;
}

void to_json(nlohmann::json& j, const KnowledgeGraph& graph) {
  nlohmann::json entities = nlohmann::json::array();
  for (const Entity& e : graph.entities) {
    nlohmann::json attributes = nlohmann::json::array();
    for (const AttributeLabel& a : e.attributes) {
      attributes.push_back({{"type", a.type}, {"confidence", a.confidence}});
    }
    nlohmann::json senses = nlohmann::json::array();
    for (const SenseScore& s : e.senses) {
      senses.push_back({{"sense", s.sense}, {"confidence", s.confidence}});
    }
    entities.push_back({{"id", e.id},
                        {"start", e.span.start},
                        {"end", e.span.end},
                        {"type", e.type},
                        {"confidence", e.confidence},
                        {"attributes", std::move(attributes)},
                        {"senses", std::move(senses)}});
  }
  nlohmann::json relations = nlohmann::json::array();
  for (const Relation& r : graph.relations) {
    relations.push_back({{"head", r.head},
                         {"tail", r.tail},
                         {"type", r.type},
                         {"confidence", r.confidence}});
  }
  j = nlohmann::json{{"tokens", graph.tokens},
                     {"lemmas", graph.lemmas},
                     {"entities", std::move(entities)},
                     {"relations", std::move(relations)},
                     {"provenance", graph.provenance}};
}

void from_json(const nlohmann::json& j, KnowledgeGraph& graph) {
  try {
    std::vector<Entity> entities;
    std::vector<AttributeAssertion> attributes;
    for (const auto& je : j.value("entities", nlohmann::json::array())) {
      Entity e;
      e.id = je.at("id").get<std::string>();
      e.span = {je.at("start").get<int>(), je.at("end").get<int>()};
      e.type = je.at("type").get<std::string>();
      e.confidence = je.value("confidence", 1.0);
      for (const auto& ja : je.value("attributes", nlohmann::json::array())) {
        attributes.push_back({e.id, ja.at("type").get<std::string>(),
                              ja.value("confidence", 1.0)});
      }
      for (const auto& js : je.value("senses", nlohmann::json::array())) {
        e.senses.push_back({js.at("sense").get<std::string>(),
                            js.at("confidence").get<double>()});
      }
      entities.push_back(std::move(e));
    }
    std::vector<Relation> relations;
    for (const auto& jr : j.value("relations", nlohmann::json::array())) {
      relations.push_back({jr.at("head").get<std::string>(),
                           jr.at("tail").get<std::string>(),
                           jr.at("type").get<std::string>(),
                           jr.value("confidence", 1.0)});
    }
    graph = AssembleGraph(
        j.at("tokens").get<std::vector<std::string>>(),
        j.value("lemmas", std::vector<std::string>{}), std::move(entities),
        attributes, std::move(relations), j.value("provenance", ""));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
}

}  // namespace causalkg
