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

#ifndef CAUSALKG_TRAINING_H_
#define CAUSALKG_TRAINING_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "causalkg/encoder.h"
#include "causalkg/graph.h"
#include "causalkg/model.h"
#include "causalkg/schema.h"
#include "json.hpp"

namespace causalkg {

// One annotated sentence. Attribute and relation endpoints index `entities`.
struct Example {
  struct GoldEntity {
    Span span;
    std::string type;
  };
  struct GoldAttribute {
    int entity = 0;
    std::string type;
  };
  struct GoldRelation {
    int head = 0;
    int tail = 0;
    std::string type;
  };

  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<GoldEntity> entities;
  std::vector<GoldAttribute> attributes;
  std::vector<GoldRelation> relations;
};

using Dataset = std::vector<Example>;

// Gold graph with unit confidences; entity i gets id "e<i>".
KnowledgeGraph ExampleGraph(const Example& example);

// Parses the dataset JSON array and checks every type against the schema.
// Examples without an "id" get "s<index>". Throws kParseError,
// kInvalidSpan, or kSchemaMismatch naming the undeclared type.
Dataset ParseDataset(const nlohmann::json& j, const Schema& schema);
nlohmann::json DatasetToJson(const Dataset& dataset);

struct TrainConfig {
  int epochs = 20;
  double learning_rate = 1e-3;
  int batch_size = 1;
  int negative_entity_count = 100;
  int negative_relation_count = 50;
  std::uint64_t seed = 0;
  int max_span_len = 10;
  int width_dim = 8;
  double relation_threshold = 0.4;
  double attribute_threshold = 0.5;

  ModelConfig model_config() const {
    return {max_span_len, width_dim, relation_threshold, attribute_threshold};
  }
};

void ValidateTrainConfig(const TrainConfig& config);
void to_json(nlohmann::json& j, const TrainConfig& config);
void from_json(const nlohmann::json& j, TrainConfig& config);

struct NegativeSample {
  std::vector<Span> spans;
  // Ordered (head, tail) indices into the example's gold entities.
  std::vector<std::pair<int, int>> pairs;
};

// Non-gold spans up to the configured length and gold-entity pairs without a
// gold relation, each drawn uniformly without replacement up to its count.
NegativeSample SampleNegatives(const Example& example,
                               const TrainConfig& config, std::uint64_t seed);

// Model outputs for the training targets of one example.
struct Predictions {
  std::vector<Vector> entity;     // class distributions
  std::vector<Vector> attribute;  // per-type sigmoid scores
  std::vector<Vector> relation;   // per-type sigmoid scores
};

struct Targets {
  std::vector<int> entity;  // class index, 0 = null
  std::vector<std::vector<int>> attribute;
  std::vector<std::vector<int>> relation;
};

struct LossBreakdown {
  double entity = 0.0;
  double relation = 0.0;
  double attribute = 0.0;
  double total = 0.0;
};

inline constexpr double kProbabilityFloor = 1e-12;

// Mean categorical cross-entropy over entity samples plus mean binary
// cross-entropy over every relation and attribute output, with probabilities
// clamped to [1e-12, 1 - 1e-12]. Throws kAlignmentError.
LossBreakdown JointLoss(const Predictions& predictions, const Targets& targets);

// Everything the loss needs for one example, aligned with its targets.
struct TrainingBatchItem {
  const Example* example = nullptr;
  const TokenEncoding* encoding = nullptr;
  NegativeSample sample;
};

struct ForwardResult {
  Predictions predictions;
  Targets targets;
  LossBreakdown loss;
};

ForwardResult Forward(const Model& model, const TrainingBatchItem& item);

// Loss plus the analytic gradient with respect to every parameter.
std::pair<LossBreakdown, Parameters> LossAndGradient(
    const Model& model, const TrainingBatchItem& item);

struct GroupGradCheck {
  std::string name;
  std::size_t size = 0;
  double relative_error = 0.0;  // ||analytic - numeric|| / max(sum of norms, floor)
  double max_abs_error = 0.0;
};

struct GradCheckReport {
  std::vector<GroupGradCheck> groups;
  double max_relative_error = 0.0;
};

inline constexpr double kGradCheckNormFloor = 1e-6;

// Central finite differences of the total loss for every parameter, compared
// with LossAndGradient group by group. Throws kInvalidConfig for epsilon
// outside [1e-6, 1e-3] and kNonFiniteGradient.
GradCheckReport GradCheck(const Model& model, const TrainingBatchItem& item,
                          double epsilon);

struct TrainResult {
  Model model;
  std::vector<LossBreakdown> epoch_losses;
};

// Gradient descent over the attention, width and head parameters; the
// encoder is frozen. Deterministic for a fixed config. Throws kSchemaMismatch
// when the dataset uses types outside the schema.
TrainResult Train(const Dataset& dataset, const Schema& schema,
                  const EncoderConfig& encoder, const TrainConfig& config);

}  // namespace causalkg

#endif  // CAUSALKG_TRAINING_H_
