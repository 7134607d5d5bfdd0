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

#include <random>

#include "causalkg/error.h"
#include "causalkg/evaluation.h"
#include "fixtures.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace causalkg {
namespace {

using ::causalkg::testing::CodeOf;
using ::causalkg::testing::GraphBuilder;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

bool IsSubgraph(const KnowledgeGraph& small, const KnowledgeGraph& big) {
  for (const Entity& e : small.entities) {
    const Entity* match = big.FindEntity(e.id);
    if (!match || match->span != e.span || match->type != e.type) return false;
    for (const AttributeLabel& a : e.attributes) {
      if (std::find(match->attributes.begin(), match->attributes.end(), a) ==
          match->attributes.end()) {
        return false;
      }
    }
  }
  for (const Relation& r : small.relations) {
    if (std::find(big.relations.begin(), big.relations.end(), r) ==
        big.relations.end()) {
      return false;
    }
  }
  return true;
}

TEST(RectifyTest, ConformingGraphUnchanged) {
  const KnowledgeGraph g = testing::RestrictionGraph();
  ASSERT_THAT(CheckConstraints(g, SciClaimSchema()), IsEmpty());
  const Rectified r = Rectify(g, SciClaimSchema());
  EXPECT_EQ(r.graph, g);
  EXPECT_THAT(r.log, IsEmpty());
}

TEST(RectifyTest, WeakerOfOpposedSignsRemoved) {
  GraphBuilder b("masks reduce infections");
  const std::string x = b.Entity(0, 1, "factor");
  const std::string y = b.Entity(2, 3, "factor");
  b.Relation(x, "q+", y, 0.9).Relation(x, "q-", y, 0.6);
  const Rectified r = Rectify(b.Build(), SciClaimSchema());

  ASSERT_EQ(r.graph.relations.size(), 1u);
  EXPECT_EQ(r.graph.relations[0].type, "q+");
  EXPECT_THAT(r.log, ElementsAre(Removal{
                         {ElementKind::kRelation, "e0-[q-]->e1", 0.6},
                         ViolationKind::kExclusiveRelations,
                         false}));
}

TEST(RectifyTest, AttributeOnWrongEntityTypeTieRemovesAttribute) {
  GraphBuilder b("smoking kills");
  const std::string x = b.Entity(0, 1, "factor", 0.8);
  b.Attribute(x, "causation", 0.8);
  const Rectified r = Rectify(b.Build(), SciClaimSchema());

  ASSERT_EQ(r.graph.entities.size(), 1u);
  EXPECT_THAT(r.graph.entities[0].attributes, IsEmpty());
  EXPECT_THAT(r.log,
              ElementsAre(Removal{{ElementKind::kAttribute, "e0/causation", 0.8},
                                  ViolationKind::kAttributeDomain,
                                  false}));
}

TEST(RectifyTest, AttributeOnWrongEntityTypeLowerAttributeRemoved) {
  GraphBuilder b("smoking kills");
  const std::string x = b.Entity(0, 1, "factor", 0.9);
  b.Attribute(x, "causation", 0.3);
  const Rectified r = Rectify(b.Build(), SciClaimSchema());
  ASSERT_EQ(r.graph.entities.size(), 1u);
  EXPECT_THAT(r.graph.entities[0].attributes, IsEmpty());
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].element.kind, ElementKind::kAttribute);
}

TEST(RectifyTest, StrongerAttributeRemovesEntityAndCascades) {
  GraphBuilder b("smoking causes cancer");
  const std::string x = b.Entity(0, 1, "factor", 0.5);
  const std::string y = b.Entity(2, 3, "factor", 0.95);
  b.Attribute(x, "causation", 0.9).Relation(x, "q+", y, 0.99);
  const Rectified r = Rectify(b.Build(), SciClaimSchema());

  ASSERT_EQ(r.graph.entities.size(), 1u);
  EXPECT_EQ(r.graph.entities[0].id, "e1");
  EXPECT_THAT(r.graph.relations, IsEmpty());
  EXPECT_THAT(
      r.log,
      ElementsAre(
          Removal{{ElementKind::kEntity, "e0", 0.5},
                  ViolationKind::kAttributeDomain,
                  false},
          Removal{{ElementKind::kAttribute, "e0/causation", 0.9},
                  ViolationKind::kAttributeDomain,
                  true},
          Removal{{ElementKind::kRelation, "e0-[q+]->e1", 0.99},
                  ViolationKind::kAttributeDomain,
                  true}));
}

TEST(RectifyTest, BadSignatureRelationDropped) {
  GraphBuilder b("smoking causes cancer");
  const std::string x = b.Entity(0, 1, "factor");
  const std::string y = b.Entity(2, 3, "factor");
  b.Relation(x, "arg0", y, 0.7);
  const Rectified r = Rectify(b.Build(), SciClaimSchema());
  EXPECT_THAT(r.graph.relations, IsEmpty());
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].violation, ViolationKind::kRelationSignature);
}

TEST(RectifyTest, UnknownTypeRejected) {
  GraphBuilder b("a b");
  b.Entity(0, 1, "spaceship");
  const KnowledgeGraph g = b.Build();
  EXPECT_EQ(CodeOf([&] { Rectify(g, SciClaimSchema()); }),
            ErrorCode::kUnknownType);
}

TEST(RectifyTest, RandomGraphsSatisfyContract) {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution keep(0.5);
  std::vector<KnowledgeGraph> raw, rectified, gold;
  int removed_total = 0;
  for (int i = 0; i < 150; ++i) {
    const KnowledgeGraph g =
        testing::RandomCandidateGraph(rng, "r" + std::to_string(i));
    const Rectified r = Rectify(g, SciClaimSchema());
    removed_total += static_cast<int>(r.log.size());
    EXPECT_THAT(CheckConstraints(r.graph, SciClaimSchema()), IsEmpty());
    EXPECT_TRUE(IsSubgraph(r.graph, g));
    EXPECT_EQ(Rectify(r.graph, SciClaimSchema()).graph, r.graph);
    EXPECT_THAT(Rectify(r.graph, SciClaimSchema()).log, IsEmpty());

    KnowledgeGraph half = g;
    std::erase_if(half.relations, [&](const Relation&) { return !keep(rng); });
    raw.push_back(g);
    rectified.push_back(r.graph);
    gold.push_back(half);
  }
  EXPECT_GT(removed_total, 0);

  const ScoreReport before = Score(raw, gold);
  const ScoreReport after = Score(rectified, gold);
  auto recall = [](const SectionScore& s) { return s.micro.recall.value_or(0); };
  EXPECT_LE(recall(after.entities), recall(before.entities));
  EXPECT_LE(recall(after.attributes), recall(before.attributes));
  EXPECT_LE(recall(after.relations), recall(before.relations));
}

TEST(RectifyTest, LogSerializes) {
  const Removal removal{{ElementKind::kRelation, "e0-[q-]->e1", 0.6},
                        ViolationKind::kExclusiveRelations,
                        false};
  const nlohmann::json j = removal;
  EXPECT_EQ(j["element"], "e0-[q-]->e1");
  EXPECT_EQ(j["kind"], "relation");
  EXPECT_EQ(j["cascade"], false);
}

}  // namespace
}  // namespace causalkg
