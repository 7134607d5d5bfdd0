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
#include <random>

#include "causalkg/error.h"
#include "fixtures.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace causalkg {
namespace {

using ::causalkg::testing::CodeOf;
using ::causalkg::testing::GraphBuilder;
using ::testing::HasSubstr;

const ClassScore& Find(const SectionScore& s, const std::string& name) {
  for (const ClassScore& c : s.classes) {
    if (c.name == name) return c;
  }
  ADD_FAILURE() << "no class " << name;
  return s.micro;
}

void ExpectCounts(const ClassScore& c, long tp, long fp, long fn) {
  EXPECT_EQ(c.tp, tp) << c.name;
  EXPECT_EQ(c.fp, fp) << c.name;
  EXPECT_EQ(c.fn, fn) << c.name;
  EXPECT_EQ(c.support, tp + fn) << c.name;
}

void ExpectPrf(const ClassScore& c, std::optional<double> p,
               std::optional<double> r, std::optional<double> f) {
  auto near = [&](const std::optional<double>& got,
                  const std::optional<double>& want, const char* what) {
    ASSERT_EQ(got.has_value(), want.has_value()) << c.name << " " << what;
    if (want) EXPECT_NEAR(*got, *want, 0.01) << c.name << " " << what;
  };
  near(c.precision, p, "P");
  near(c.recall, r, "R");
  near(c.f1, f, "F1");
}

TEST(ScoreTest, PerfectPredictionScoresHundred) {
  const std::vector<KnowledgeGraph> gold = {testing::RestrictionGraph()};
  const ScoreReport r = Score(gold, gold, &SciClaimSchema());
  for (const SectionScore* s : {&r.entities, &r.attributes, &r.relations}) {
    ExpectPrf(s->micro, 100, 100, 100);
    for (const ClassScore& c : s->classes) {
      if (c.support > 0) ExpectPrf(c, 100, 100, 100);
    }
  }
}

TEST(ScoreTest, AbsentClassRenderedAsDashes) {
  const std::vector<KnowledgeGraph> gold = {testing::RestrictionGraph()};
  const ScoreReport r = Score(gold, gold, &SciClaimSchema());
  const ClassScore& evidence = Find(r.entities, "evidence");
  EXPECT_EQ(evidence.support, 0);
  ExpectPrf(evidence, std::nullopt, std::nullopt, std::nullopt);
  const std::string text = FormatReport(r);
  EXPECT_THAT(text, HasSubstr("evidence"));
  EXPECT_THAT(text, ::testing::ContainsRegex("evidence +-- +-- +-- +0"));
  EXPECT_THAT(text, HasSubstr("Micro-Averaged"));
  // With a schema every declared class is listed.
  EXPECT_EQ(r.relations.classes.size(), SciClaimSchema().relation_types.size());
}

TEST(ScoreTest, HandCountedFixture) {
  const testing::ScoringFixture f = testing::HandCountedScoringFixture();
  const ScoreReport r = Score(f.predicted, f.gold, &SciClaimSchema());

  ExpectCounts(Find(r.entities, "factor"), 3, 2, 1);
  ExpectPrf(Find(r.entities, "factor"), 60.0, 75.0, 66.67);
  ExpectCounts(Find(r.entities, "association"), 1, 0, 1);
  ExpectPrf(Find(r.entities, "association"), 100.0, 50.0, 66.67);
  ExpectCounts(r.entities.micro, 4, 2, 2);
  ExpectPrf(r.entities.micro, 66.67, 66.67, 66.67);

  ExpectCounts(Find(r.attributes, "causation"), 1, 1, 1);
  ExpectPrf(Find(r.attributes, "causation"), 50.0, 50.0, 50.0);
  ExpectCounts(Find(r.attributes, "sign+"), 1, 0, 0);
  ExpectCounts(Find(r.attributes, "sign-"), 0, 1, 1);
  ExpectPrf(Find(r.attributes, "sign-"), 0.0, 0.0, std::nullopt);
  ExpectCounts(r.attributes.micro, 2, 2, 2);
  ExpectPrf(r.attributes.micro, 50.0, 50.0, 50.0);

  ExpectCounts(Find(r.relations, "arg0"), 1, 1, 1);
  ExpectCounts(Find(r.relations, "arg1"), 0, 2, 2);
  ExpectCounts(Find(r.relations, "q+"), 0, 1, 1);
  ExpectCounts(Find(r.relations, "q-"), 1, 0, 0);
  ExpectCounts(r.relations.micro, 2, 4, 4);
  ExpectPrf(r.relations.micro, 33.33, 33.33, 33.33);
}

TEST(ScoreTest, RelationNeedsBothEndpoints) {
  GraphBuilder gold_b("a causes b");
  const std::string x = gold_b.Entity(0, 1, "factor");
  const std::string y = gold_b.Entity(2, 3, "factor");
  gold_b.Relation(x, "q+", y);
  GraphBuilder pred_b("a causes b");
  const std::string px = pred_b.Entity(0, 1, "factor");
  const std::string py = pred_b.Entity(1, 3, "factor");
  pred_b.Relation(px, "q+", py);
  const ScoreReport r = Score({pred_b.Build("s")}, {gold_b.Build("s")});
  ExpectCounts(r.relations.micro, 0, 1, 1);
}

TEST(ScoreTest, DuplicatePredictionsAreFalsePositives) {
  GraphBuilder gold_b("a b");
  gold_b.Entity(0, 1, "factor");
  const KnowledgeGraph gold = gold_b.Build("s");
  // Assembly refuses duplicates, so append one by hand.
  KnowledgeGraph pred = gold;
  pred.entities.push_back(pred.entities[0]);
  pred.entities.back().id = "e1";
  const ScoreReport r = Score({pred}, {gold});
  ExpectCounts(r.entities.micro, 1, 1, 0);
}

TEST(ScoreTest, InvariantUnderPermutation) {
  const testing::ScoringFixture f = testing::HandCountedScoringFixture();
  std::vector<KnowledgeGraph> pred = f.predicted;
  std::reverse(pred.begin(), pred.end());
  const nlohmann::json a = Score(f.predicted, f.gold, &SciClaimSchema());
  const nlohmann::json b = Score(pred, f.gold, &SciClaimSchema());
  EXPECT_EQ(a, b);

  std::mt19937_64 rng(4);
  std::vector<KnowledgeGraph> gold, noisy;
  for (int i = 0; i < 20; ++i) {
    gold.push_back(testing::RandomCandidateGraph(rng, "g" + std::to_string(i)));
    KnowledgeGraph p = gold.back();
    if (!p.relations.empty()) p.relations.pop_back();
    if (i % 3 == 0 && !p.entities.empty()) p.entities[0].type = "evidence";
    std::erase_if(p.relations, [&](const Relation& rel) {
      return !p.FindEntity(rel.head) || !p.FindEntity(rel.tail);
    });
    noisy.push_back(p);
  }
  const nlohmann::json before = Score(noisy, gold);
  std::shuffle(noisy.begin(), noisy.end(), rng);
  std::shuffle(gold.begin(), gold.end(), rng);
  EXPECT_EQ(before, nlohmann::json(Score(noisy, gold)));
}

TEST(ScoreTest, ScoresStayInRange) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const KnowledgeGraph g = testing::RandomCandidateGraph(rng, "x");
    KnowledgeGraph p = testing::RandomCandidateGraph(rng, "x");
    p.tokens = g.tokens;
    for (Entity& e : p.entities) {
      e.span.start = std::min<int>(e.span.start, g.tokens.size() - 1);
      e.span.end = std::min<int>(std::max(e.span.end, e.span.start + 1),
                                 g.tokens.size());
    }
    const ScoreReport r = Score({p}, {g});
    for (const SectionScore* s : {&r.entities, &r.attributes, &r.relations}) {
      for (const ClassScore& c : s->classes) {
        for (const auto& v : {c.precision, c.recall, c.f1}) {
          if (v) {
            EXPECT_GE(*v, 0.0);
            EXPECT_LE(*v, 100.0);
          }
        }
      }
    }
  }
}

TEST(ScoreTest, AlignmentErrors) {
  const KnowledgeGraph a = testing::RestrictionGraph();
  KnowledgeGraph b = a;
  b.provenance = "other";
  KnowledgeGraph c = a;
  c.tokens.pop_back();
  EXPECT_EQ(CodeOf([&] { Score({b}, {a}); }), ErrorCode::kAlignmentError);
  EXPECT_EQ(CodeOf([&] { Score({a, a}, {a}); }), ErrorCode::kAlignmentError);
  EXPECT_EQ(CodeOf([&] { Score({}, {a}); }), ErrorCode::kAlignmentError);
  EXPECT_EQ(CodeOf([&] { Score({c}, {a}); }), ErrorCode::kAlignmentError);
  EXPECT_EQ(CodeOf([&] { Score({a}, {a, a}); }), ErrorCode::kAlignmentError);
}

TEST(ScoreTest, JsonCarriesCountsAndNulls) {
  const testing::ScoringFixture f = testing::HandCountedScoringFixture();
  const nlohmann::json j = Score(f.predicted, f.gold, &SciClaimSchema());
  EXPECT_EQ(j["relations"]["micro"]["tp"], 2);
  bool saw_null = false;
  for (const auto& c : j["attributes"]["classes"]) {
    if (c["class"] == "sign-") saw_null = c["f1"].is_null();
  }
  EXPECT_TRUE(saw_null);
}

}  // namespace
}  // namespace causalkg
