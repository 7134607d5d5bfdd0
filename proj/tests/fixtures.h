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

#ifndef CAUSALKG_TESTS_FIXTURES_H_
#define CAUSALKG_TESTS_FIXTURES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "causalkg/graph.h"
#include "causalkg/schema.h"
#include "causalkg/senses.h"
#include "causalkg/training.h"

namespace causalkg::testing {

// Compact builder for hand-encoded graphs. Entity ids are "e<index>".
class GraphBuilder {
 public:
  GraphBuilder(const std::string& text, const std::string& lemmas = "");

  // Returns the entity id.
  std::string Entity(int start, int end, const std::string& type,
                     double confidence = 1.0);
  GraphBuilder& Attribute(const std::string& entity, const std::string& type,
                          double confidence = 1.0);
  GraphBuilder& Relation(const std::string& head, const std::string& type,
                         const std::string& tail, double confidence = 1.0);
  KnowledgeGraph Build(const std::string& provenance = "") const;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::string> lemmas_;
  std::vector<causalkg::Entity> entities_;
  std::vector<AttributeAssertion> attributes_;
  std::vector<causalkg::Relation> relations_;
};

std::vector<std::string> Tokenize(const std::string& text);

// "Movement restriction greatly reduced the number of infections from
// 5 February onwards ." in the sciclaim schema.
KnowledgeGraph RestrictionGraph();
Example RestrictionExample();

// Ethno-schema graphs for the prayer, disgrace and witches sentences.
KnowledgeGraph PrayerGraph();
KnowledgeGraph DisgraceGraph();
KnowledgeGraph WitchesGraph();

// Eating and baby-health sentences; the last one has a male agent.
std::vector<KnowledgeGraph> EatingCorpus();

// Small templated sciclaim corpus of causal claims.
Dataset TemplatedCorpus(int count, std::uint64_t seed);

// Two sentences. The prediction for "s1" puts a wrong right boundary on the
// effect; the one for "s2" types the verb as a factor.
struct ScoringFixture {
  std::vector<KnowledgeGraph> predicted;
  std::vector<KnowledgeGraph> gold;
};
ScoringFixture HandCountedScoringFixture();

// Random sciclaim graph with random confidences and frequent violations.
KnowledgeGraph RandomCandidateGraph(std::mt19937_64& rng,
                                    const std::string& provenance);

// Random ethno graphs, at most `max_nodes` entities in total.
std::vector<KnowledgeGraph> RandomCorpus(std::mt19937_64& rng, int max_nodes);

// Inventory of `count` senses over lemma "x" with random vectors and a
// random forest of parents.
SenseInventory RandomInventory(std::mt19937_64& rng, int count, int dimension);

Vector RandomUnitVector(std::mt19937_64& rng, int dimension);

}  // namespace causalkg::testing

#endif  // CAUSALKG_TESTS_FIXTURES_H_
