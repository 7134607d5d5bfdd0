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

#include "causalkg/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include "causalkg/error.h"

namespace causalkg {
namespace {

// Every key ends in its class label.
using EntityKey = std::tuple<std::string, int, int, std::string>;
using AttributeKey = std::tuple<std::string, int, int, std::string, std::string>;
using RelationKey = std::tuple<std::string, int, int, std::string, int, int,
                               std::string, std::string>;

// Occurrence counts, so duplicated predictions surface as false positives.
struct Keys {
  std::map<EntityKey, long> entities;
  std::map<AttributeKey, long> attributes;
  std::map<RelationKey, long> relations;
};

Keys Collect(const std::vector<KnowledgeGraph>& graphs) {
  Keys keys;
  for (const KnowledgeGraph& g : graphs) {
    for (const Entity& e : g.entities) {
      ++keys.entities[{g.provenance, e.span.start, e.span.end, e.type}];
      for (const AttributeLabel& a : e.attributes) {
        ++keys.attributes[{g.provenance, e.span.start, e.span.end, e.type,
                           a.type}];
      }
    }
    for (const Relation& r : g.relations) {
      const Entity* h = g.FindEntity(r.head);
      const Entity* t = g.FindEntity(r.tail);
      ++keys.relations[{g.provenance, h->span.start, h->span.end, h->type,
                        t->span.start, t->span.end, t->type, r.type}];
    }
  }
  return keys;
}

template <typename Key>
const std::string& Label(const Key& key) {
  return std::get<std::tuple_size_v<Key> - 1>(key);
}

template <typename Key>
SectionScore Tally(std::string name, const std::map<Key, long>& predicted,
                   const std::map<Key, long>& gold,
                   const std::vector<std::string>* inventory) {
  std::map<std::string, ClassScore> by_class;
  if (inventory) {
    for (const std::string& t : *inventory) by_class[t].name = t;
  }
  auto count_in = [](const std::map<Key, long>& m, const Key& k) -> long {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  for (const auto& [k, n] : predicted) {
    ClassScore& c = by_class[Label(k)];
    c.name = Label(k);
    const long matched = std::min(n, count_in(gold, k));
    c.tp += matched;
    c.fp += n - matched;
  }
  for (const auto& [k, n] : gold) {
    ClassScore& c = by_class[Label(k)];
    c.name = Label(k);
    c.support += n;
    c.fn += n - std::min(n, count_in(predicted, k));
  }

  SectionScore section;
  section.name = std::move(name);
  section.micro.name = "Micro-Averaged";
  auto add = [&](ClassScore c) {
    Finalize(c);
    if (c.support > 0) {
      section.micro.tp += c.tp;
      section.micro.fp += c.fp;
      section.micro.fn += c.fn;
      section.micro.support += c.support;
    }
    section.classes.push_back(std::move(c));
  };
  if (inventory) {
    for (const std::string& t : *inventory) add(by_class.at(t));
    for (const auto& [label, c] : by_class) {
      if (std::find(inventory->begin(), inventory->end(), label) ==
          inventory->end()) {
        add(c);
      }
    }
  } else {
    for (const auto& [label, c] : by_class) add(c);
  }
  Finalize(section.micro);
  return section;
}

std::string Cell(const std::optional<double>& v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

nlohmann::json ClassJson(const ClassScore& c) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"class", c.name},   {"tp", c.tp},
          {"fp", c.fp},        {"fn", c.fn},
          {"support", c.support}, {"precision", opt(c.precision)},
          {"recall", opt(c.recall)}, {"f1", opt(c.f1)}};
}

nlohmann::json SectionJson(const SectionScore& s) {
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassScore& c : s.classes) classes.push_back(ClassJson(c));
  return {{"classes", std::move(classes)}, {"micro", ClassJson(s.micro)}};
}

}  // namespace

void Finalize(ClassScore& c) {
  c.precision.reset();
  c.recall.reset();
  c.f1.reset();
  if (c.tp + c.fp > 0) c.precision = 100.0 * c.tp / (c.tp + c.fp);
  if (c.tp + c.fn > 0) c.recall = 100.0 * c.tp / (c.tp + c.fn);
  if (c.precision && c.recall && *c.precision + *c.recall > 0.0) {
    c.f1 = 2.0 * *c.precision * *c.recall / (*c.precision + *c.recall);
  }
}

ScoreReport Score(const std::vector<KnowledgeGraph>& predicted,
                  const std::vector<KnowledgeGraph>& gold,
                  const Schema* schema) {
  std::map<std::string, const KnowledgeGraph*> gold_by_id;
  for (const KnowledgeGraph& g : gold) {
    if (!gold_by_id.emplace(g.provenance, &g).second) {
      throw Error(ErrorCode::kAlignmentError,
                  "repeated gold provenance '" + g.provenance + "'");
    }
  }
  std::set<std::string> seen;
  for (const KnowledgeGraph& p : predicted) {
    auto it = gold_by_id.find(p.provenance);
    if (it == gold_by_id.end() || !seen.insert(p.provenance).second) {
      throw Error(ErrorCode::kAlignmentError,
                  "prediction '" + p.provenance + "' has no unique gold match");
    }
    if (it->second->tokens != p.tokens) {
      throw Error(ErrorCode::kAlignmentError,
                  "tokens differ for '" + p.provenance + "'");
    }
  }
  if (seen.size() != gold_by_id.size()) {
    throw Error(ErrorCode::kAlignmentError,
                "predictions cover " + std::to_string(seen.size()) + " of " +
                    std::to_string(gold_by_id.size()) + " gold graphs");
  }

  const Keys p = Collect(predicted);
  const Keys g = Collect(gold);
  ScoreReport report;
  report.entities = Tally("Entities", p.entities, g.entities,
                          schema ? &schema->entity_types : nullptr);
  report.attributes = Tally("Attributes", p.attributes, g.attributes,
                            schema ? &schema->attribute_types : nullptr);
  report.relations = Tally("Relations", p.relations, g.relations,
                           schema ? &schema->relation_types : nullptr);
  return report;
}

std::string FormatReport(const ScoreReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %-16s %8s %8s %8s %8s\n", "",
                "Dimension", "P", "R", "F1", "Support");
  out += line;
  for (const SectionScore* s :
       {&report.entities, &report.attributes, &report.relations}) {
    bool first = true;
    for (const ClassScore& c : s->classes) {
      std::snprintf(line, sizeof(line), "%-12s %-16s %8s %8s %8s %8ld\n",
                    first ? s->name.c_str() : "", c.name.c_str(),
                    Cell(c.precision).c_str(), Cell(c.recall).c_str(),
                    Cell(c.f1).c_str(), c.support);
      out += line;
      first = false;
    }
    std::snprintf(line, sizeof(line), "%-12s %-16s %8s %8s %8s\n",
                  first ? s->name.c_str() : "", s->micro.name.c_str(),
                  Cell(s->micro.precision).c_str(),
                  Cell(s->micro.recall).c_str(), Cell(s->micro.f1).c_str());
    out += line;
  }
  return out;
}

void to_json(nlohmann::json& j, const ScoreReport& report) {
  j = nlohmann::json{{"entities", SectionJson(report.entities)},
                     {"attributes", SectionJson(report.attributes)},
                     {"relations", SectionJson(report.relations)}};
}

}  // namespace causalkg
