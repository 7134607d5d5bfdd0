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

#include "fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace causalkg::testing {

std::vector<std::string> Tokenize(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

GraphBuilder::GraphBuilder(const std::string& text, const std::string& lemmas)
    : tokens_(Tokenize(text)), lemmas_(Tokenize(lemmas)) {}

std::string GraphBuilder::Entity(int start, int end, const std::string& type,
                                 double confidence) {
  causalkg::Entity e;
  e.id = "e" + std::to_string(entities_.size());
  e.span = {start, end};
  e.type = type;
  e.confidence = confidence;
  entities_.push_back(e);
  return e.id;
}

GraphBuilder& GraphBuilder::Attribute(const std::string& entity,
                                      const std::string& type,
                                      double confidence) {
  attributes_.push_back({entity, type, confidence});
  return *this;
}

GraphBuilder& GraphBuilder::Relation(const std::string& head,
                                     const std::string& type,
                                     const std::string& tail,
                                     double confidence) {
  relations_.push_back({head, tail, type, confidence});
  return *this;
}

KnowledgeGraph GraphBuilder::Build(const std::string& provenance) const {
  return AssembleGraph(tokens_, lemmas_, entities_, attributes_, relations_,
                       provenance);
}

KnowledgeGraph RestrictionGraph() {
  GraphBuilder b(
      "Movement restriction greatly reduced the number of infections from 5 "
      "February onwards .");
  const std::string cause = b.Entity(0, 2, "factor");
  const std::string magnitude = b.Entity(2, 3, "magnitude");
  const std::string assoc = b.Entity(3, 4, "association");
  const std::string effect = b.Entity(4, 8, "factor");
  const std::string when = b.Entity(8, 12, "qualifier");
  b.Attribute(assoc, "causation").Attribute(assoc, "sign-");
  b.Relation(assoc, "arg0", cause)
      .Relation(assoc, "arg1", effect)
      .Relation(cause, "q-", effect)
      .Relation(assoc, "modifier", magnitude)
      .Relation(assoc, "modifier", when);
  return b.Build("restriction");
}

Example RestrictionExample() {
  const KnowledgeGraph g = RestrictionGraph();
  Example ex;
  ex.id = g.provenance;
  ex.tokens = g.tokens;
  ex.lemmas = g.lemmas;
  for (const Entity& e : g.entities) ex.entities.push_back({e.span, e.type});
  auto index = [&](const std::string& id) {
    return std::stoi(id.substr(1));
  };
  for (const Entity& e : g.entities) {
    for (const AttributeLabel& a : e.attributes) {
      ex.attributes.push_back({index(e.id), a.type});
    }
  }
  for (const Relation& r : g.relations) {
    ex.relations.push_back({index(r.head), index(r.tail), r.type});
  }
  return ex;
}

KnowledgeGraph PrayerGraph() {
  GraphBuilder b(
      "Some of the women prayed for themselves during pregnancy for safe "
      "delivery .");
  const std::string women = b.Entity(3, 4, "element");
  const std::string prayed = b.Entity(4, 5, "element");
  const std::string themselves = b.Entity(6, 7, "element");
  const std::string during = b.Entity(7, 9, "qualifier");
  const std::string delivery = b.Entity(10, 12, "element");
  b.Attribute(prayed, "tradition");
  b.Relation(prayed, "agent", women)
      .Relation(prayed, "recipient", themselves)
      .Relation(prayed, "intent+", delivery)
      .Relation(prayed, "modifier", during);
  return b.Build("prayer");
}

KnowledgeGraph DisgraceGraph() {
  GraphBuilder b("Please do n't disgrace the man of the family again .");
  const std::string disgrace = b.Entity(3, 4, "element");
  const std::string man = b.Entity(4, 9, "element");
  const std::string again = b.Entity(9, 10, "qualifier");
  b.Attribute(disgrace, "event")
      .Attribute(disgrace, "prescribed")
      .Attribute(disgrace, "negated");
  b.Relation(disgrace, "object", man).Relation(disgrace, "modifier", again);
  return b.Build("disgrace");
}

KnowledgeGraph WitchesGraph() {
  GraphBuilder b(
      "the witches had planned to terminate my pregnancy , so the pastor "
      "prayed to prevent it .");
  const std::string witches = b.Entity(0, 2, "element");
  const std::string planned = b.Entity(3, 4, "element");
  const std::string terminate = b.Entity(5, 6, "element");
  const std::string pregnancy = b.Entity(6, 8, "element");
  const std::string pastor = b.Entity(10, 12, "element");
  const std::string prayed = b.Entity(12, 13, "element");
  const std::string prevent = b.Entity(14, 15, "element");
  b.Attribute(prayed, "tradition").Attribute(prevent, "influence");
  b.Relation(planned, "agent", witches)
      .Relation(planned, "intent+", terminate)
      .Relation(terminate, "q-", pregnancy)
      .Relation(prayed, "agent", pastor)
      .Relation(prayed, "intent+", prevent)
      .Relation(prevent, "q-", planned);
  return b.Build("witches");
}

namespace {

// agent ate object ; object q+ effect ; effect modifier baby
KnowledgeGraph EatingSentence(const std::string& id, const std::string& text,
                              const std::string& lemmas, int agent, int eat,
                              int object,
                              const std::vector<int>& effects, int baby) {
  GraphBuilder b(text, lemmas);
  const std::string a = b.Entity(agent, agent + 1, "element");
  const std::string e = b.Entity(eat, eat + 1, "element");
  const std::string o = b.Entity(object, object + 1, "element");
  const std::string y = b.Entity(baby, baby + 1, "element");
  b.Attribute(e, "event");
  b.Relation(e, "agent", a).Relation(e, "object", o);
  for (int start : effects) {
    int end = start + 1;
    if (start < 0) {
      start = -start;
      end = start + 2;
    }
    const std::string x = b.Entity(start, end, "element");
    b.Relation(o, "q+", x).Relation(x, "modifier", y);
  }
  return b.Build(id);
}

}  // namespace

std::vector<KnowledgeGraph> EatingCorpus() {
  return {
      EatingSentence("sugarcane",
                     "the woman ate sugarcane so the baby got stomachaches .",
                     "the woman eat sugarcane so the baby get stomachache .",
                     1, 2, 3, {8}, 6),
      EatingSentence("eggs",
                     "if a mother eats eggs the baby will be sick .",
                     "if a mother eat egg the baby will be sick .", 2, 3, 4,
                     {9}, 6),
      // Negative start offsets mark two-token effect spans.
      EatingSentence(
          "mango",
          "mothers who eat mango give the baby red bottom and diarrhea .",
          "mother who eat mango give the baby red bottom and diarrhea .", 0,
          2, 3, {-7, 10}, 6),
      EatingSentence("fish", "the man ate fish and the baby was fine .",
                     "the man eat fish and the baby be fine .", 1, 2, 3, {8},
                     6),
  };
}

namespace {

constexpr const char* kCauses[] = {
    "movement restriction", "mask wearing", "vaccination", "smoking",
    "daily exercise",       "sugar intake", "air pollution", "sleep loss"};
constexpr const char* kEffects[] = {
    "hospital stays", "the number of infections", "mortality", "blood pressure",
    "lung cancer",   "heart disease",            "weight gain", "anxiety"};

struct Verb {
  const char* text;  // the association span is the token at `head`
  int head;
  const char* attributes[2];
  const char* link;  // q+ / q- between the factors, or nullptr
};

constexpr Verb kVerbs[] = {
    {"increased", 0, {"causation", "sign+"}, "q+"},
    {"reduced", 0, {"causation", "sign-"}, "q-"},
    {"is associated with", 1, {"correlation", "sign+"}, "q+"},
    {"predicts", 0, {"indicates", "sign+"}, "q+"},
};

constexpr const char* kMagnitudes[] = {"greatly", "slightly"};
constexpr const char* kQualifiers[] = {"during 2019", "since 2020"};

}  // namespace

Dataset TemplatedCorpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) {
    return static_cast<std::size_t>(
        std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  };
  Dataset out;
  for (int i = 0; i < count; ++i) {
    Example ex;
    ex.id = "t" + std::to_string(i);
    auto append = [&](const std::string& phrase) {
      const int start = static_cast<int>(ex.tokens.size());
      for (const std::string& t : Tokenize(phrase)) ex.tokens.push_back(t);
      return Span{start, static_cast<int>(ex.tokens.size())};
    };
    auto add_entity = [&](Span span, const char* type) {
      ex.entities.push_back({span, type});
      return static_cast<int>(ex.entities.size()) - 1;
    };
    const Verb& verb = kVerbs[pick(std::size(kVerbs))];
    const bool magnitude = pick(2) == 0;
    const bool qualifier = pick(3) == 0;

    const int cause = add_entity(append(kCauses[pick(std::size(kCauses))]),
                                 "factor");
    int mag = -1;
    if (magnitude) {
      mag = add_entity(append(kMagnitudes[pick(std::size(kMagnitudes))]),
                       "magnitude");
    }
    const Span verb_span = append(verb.text);
    const int assoc = add_entity(
        {verb_span.start + verb.head, verb_span.start + verb.head + 1},
        "association");
    const int effect = add_entity(append(kEffects[pick(std::size(kEffects))]),
                                  "factor");
    int qual = -1;
    if (qualifier) {
      qual = add_entity(append(kQualifiers[pick(std::size(kQualifiers))]),
                        "qualifier");
    }
    append(".");

    for (const char* a : verb.attributes) ex.attributes.push_back({assoc, a});
    ex.relations.push_back({assoc, cause, "arg0"});
    ex.relations.push_back({assoc, effect, "arg1"});
    if (verb.link != nullptr) ex.relations.push_back({cause, effect, verb.link});
    if (mag >= 0) ex.relations.push_back({assoc, mag, "modifier"});
    if (qual >= 0) ex.relations.push_back({assoc, qual, "modifier"});
    for (const std::string& t : ex.tokens) ex.lemmas.push_back(DefaultLemma(t));
    out.push_back(std::move(ex));
  }
  return out;
}

namespace {

KnowledgeGraph ClaimSentence(const std::string& text, const std::string& id,
                             const std::string& verb_type, Span effect,
                             const std::string& sign) {
  GraphBuilder b(text);
  const std::string cause = b.Entity(0, 1, "factor");
  const std::string verb = b.Entity(1, 2, verb_type);
  const std::string result = b.Entity(effect.start, effect.end, "factor");
  b.Attribute(verb, "causation").Attribute(verb, sign);
  b.Relation(verb, "arg0", cause).Relation(verb, "arg1", result);
  b.Relation(cause, sign == "sign+" ? "q+" : "q-", result);
  return b.Build(id);
}

}  // namespace

ScoringFixture HandCountedScoringFixture() {
  const std::string s1 = "smoking increased lung cancer .";
  const std::string s2 = "masks reduced infections .";
  ScoringFixture f;
  f.gold = {ClaimSentence(s1, "s1", "association", {2, 4}, "sign+"),
            ClaimSentence(s2, "s2", "association", {2, 3}, "sign-")};
  f.predicted = {ClaimSentence(s1, "s1", "association", {3, 4}, "sign+"),
                 ClaimSentence(s2, "s2", "factor", {2, 3}, "sign-")};
  return f;
}

KnowledgeGraph RandomCandidateGraph(std::mt19937_64& rng,
                                    const std::string& provenance) {
  const Schema& schema = SciClaimSchema();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto below = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  // Coarse confidences so ties between kinds occur.
  auto confidence = [&] { return std::round(unit(rng) * 20.0) / 20.0; };

  const int n = 6 + static_cast<int>(below(8));
  std::string text;
  for (int i = 0; i < n; ++i) text += "w" + std::to_string(i) + " ";
  GraphBuilder b(text);

  std::vector<Span> used;
  std::vector<std::string> ids;
  const int entity_count = 1 + static_cast<int>(below(7));
  for (int k = 0; k < entity_count; ++k) {
    const int start = static_cast<int>(below(n));
    const int end = start + 1 + static_cast<int>(below(std::min(3, n - start)));
    const Span span{start, end};
    if (std::find(used.begin(), used.end(), span) != used.end()) continue;
    used.push_back(span);
    // Associations are common so that attributes and arg relations can be
    // valid as well as invalid.
    const std::string type =
        below(3) == 0 ? "association"
                      : schema.entity_types[below(schema.entity_types.size())];
    ids.push_back(b.Entity(start, end, type, confidence()));
  }
  for (const std::string& id : ids) {
    for (const std::string& a : schema.attribute_types) {
      if (below(5) == 0) b.Attribute(id, a, confidence());
    }
  }
  for (const std::string& h : ids) {
    for (const std::string& t : ids) {
      if (h == t) continue;
      for (const std::string& r : schema.relation_types) {
        if (below(12) == 0) b.Relation(h, r, t, confidence());
      }
    }
  }
  return b.Build(provenance);
}

std::vector<KnowledgeGraph> RandomCorpus(std::mt19937_64& rng, int max_nodes) {
  static const char* kLemmas[] = {"eat", "baby", "rice", "sick", "woman"};
  static const char* kTypes[] = {"agent", "object", "q+", "q-", "modifier",
                                 "intent+"};
  auto below = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  const int total = 1 + static_cast<int>(below(max_nodes));
  const int graph_count =
      1 + static_cast<int>(below(static_cast<std::size_t>(std::min(3, total))));
  std::vector<int> sizes(graph_count, 1);
  for (int k = graph_count; k < total; ++k) ++sizes[below(graph_count)];

  std::vector<KnowledgeGraph> out;
  for (int g = 0; g < graph_count; ++g) {
    std::string text;
    for (int i = 0; i < sizes[g]; ++i) {
      text += std::string(kLemmas[below(std::size(kLemmas))]) + " ";
    }
    GraphBuilder b(text);
    std::vector<std::string> ids;
    for (int i = 0; i < sizes[g]; ++i) {
      ids.push_back(b.Entity(i, i + 1, "element"));
    }
    for (const std::string& h : ids) {
      for (const std::string& t : ids) {
        if (h == t) continue;
        for (const char* r : kTypes) {
          if (below(8) == 0) b.Relation(h, r, t);
        }
      }
    }
    out.push_back(b.Build("g" + std::to_string(g)));
  }
  return out;
}

Vector RandomUnitVector(std::mt19937_64& rng, int dimension) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dimension);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = normal(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

SenseInventory RandomInventory(std::mt19937_64& rng, int count,
                               int dimension) {
  std::vector<Sense> senses;
  for (int i = 0; i < count; ++i) {
    Sense s;
    char id[16];
    std::snprintf(id, sizeof(id), "x.n.%02d", i);
    s.id = id;
    s.lemma = "x";
    if (i > 0 && std::uniform_int_distribution<int>(0, 2)(rng) != 0) {
      const int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
      s.parent = senses[parent].id;
    }
    s.vector = RandomUnitVector(rng, dimension);
    senses.push_back(std::move(s));
  }
  return SenseInventory(std::move(senses), {});
}

}  // namespace causalkg::testing
