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

#ifndef CAUSALKG_MODEL_H_
#define CAUSALKG_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalkg/encoder.h"
#include "causalkg/graph.h"
#include "causalkg/schema.h"
#include "json.hpp"

namespace causalkg {

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) { return data_[r * cols_ + c]; }
  double at(int r, int c) const { return data_[r * cols_ + c]; }
  std::span<double> row(int r) { return {data_.data() + r * cols_, size_t(cols_)}; }
  std::span<const double> row(int r) const {
    return {data_.data() + r * cols_, size_t(cols_)};
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  // out = this * x + bias
  Vector Affine(std::span<const double> x, std::span<const double> bias) const;

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct ModelConfig {
  int max_span_len = 10;
  int width_dim = 8;
  double relation_threshold = 0.4;
  double attribute_threshold = 0.5;

  bool operator==(const ModelConfig&) const = default;
};

void ValidateModelConfig(const ModelConfig& config);

// Trainable parameters. Entity class 0 is the null class; class k > 0 is
// schema.entity_types[k - 1].
struct Parameters {
  Vector attention_w;
  double attention_b = 0.0;
  Matrix width;          // max_span_len x width_dim, row l-1 embeds length l
  Matrix entity_w;       // (|T_e|+1) x (2d + width_dim)
  Vector entity_b;
  Matrix attribute_w;    // |T_a| x (2d + width_dim)
  Vector attribute_b;
  Matrix relation_w;     // |T_r| x (3d + 2 width_dim)
  Vector relation_b;

  // Shapes for a schema/encoder/config triple, all values zero.
  static Parameters Zeros(const Schema& schema, int dimension,
                          const ModelConfig& config);

  bool operator==(const Parameters&) const = default;
};

// A named flat view over one parameter tensor.
struct ParameterGroup {
  std::string_view name;
  std::span<double> values;
};

struct ConstParameterGroup {
  std::string_view name;
  std::span<const double> values;
};

std::vector<ParameterGroup> Groups(Parameters& parameters);
std::vector<ConstParameterGroup> Groups(const Parameters& parameters);

// All spans of length 1..max_len over n tokens, ordered by (start, length).
std::vector<Span> EnumerateSpans(int n, int max_len);

struct SpanAttention {
  Vector weights;  // one per token in the span, nonnegative, sums to 1
  Vector vector;   // attention-weighted sum of the token vectors
};

// Softmax of (w . h_t + b) over the span's tokens, and the weighted sum.
SpanAttention AttendSpan(std::span<const Vector> token_vectors, Span span,
                         std::span<const double> w, double b);

// [span vector ; passage vector ; width embedding of the span length].
Vector EntityRep(Span span, std::span<const double> span_vector,
                 std::span<const double> passage, const Matrix& width);

// Elementwise max over tokens strictly between the spans; zeros when the
// spans touch or overlap.
Vector BetweenMaxPool(std::span<const Vector> token_vectors, Span a, Span b);

// [head vector ; head width ; between maxpool ; tail vector ; tail width].
Vector RelationRep(Span head, std::span<const double> head_vector, Span tail,
                   std::span<const double> tail_vector,
                   std::span<const Vector> token_vectors,
                   const Matrix& width);

Vector Softmax(std::span<const double> logits);
double Sigmoid(double z);

class Model {
 public:
  Model(Schema schema, EncoderConfig encoder, ModelConfig config,
        Parameters parameters);

  // Zero biases, weights uniform in +-1/sqrt(fan_in), seeded.
  static Model Initialize(Schema schema, EncoderConfig encoder,
                          ModelConfig config, std::uint64_t seed);

  const Schema& schema() const { return schema_; }
  const EncoderConfig& encoder_config() const { return encoder_config_; }
  const ModelConfig& config() const { return config_; }
  ModelConfig& mutable_config() { return config_; }
  const Parameters& parameters() const { return parameters_; }
  Parameters& mutable_parameters() { return parameters_; }
  int dimension() const { return encoder_config_.dimension; }

  // Per-rep softmax over the null class followed by the entity types.
  std::vector<Vector> ClassifyEntities(std::span<const Vector> reps) const;
  // Independent sigmoid per attribute type.
  std::vector<Vector> ClassifyAttributes(std::span<const Vector> reps) const;
  // Independent sigmoid per relation type.
  std::vector<Vector> ClassifyRelations(std::span<const Vector> reps) const;

  // Full pipeline over one tokenized sentence. Empty `lemmas` defaults to
  // lowercased tokens.
  KnowledgeGraph Extract(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& lemmas,
                         const std::string& provenance = "") const;
  // Same, reusing a precomputed encoding.
  KnowledgeGraph ExtractEncoded(const std::vector<std::string>& tokens,
                                const std::vector<std::string>& lemmas,
                                const TokenEncoding& encoding,
                                const std::string& provenance = "") const;

  const Encoder& encoder() const { return encoder_; }

 private:
  Schema schema_;
  EncoderConfig encoder_config_;
  ModelConfig config_;
  Parameters parameters_;
  Encoder encoder_;
};

void to_json(nlohmann::json& j, const Model& model);
Model ModelFromJson(const nlohmann::json& j);

}  // namespace causalkg

#endif  // CAUSALKG_MODEL_H_
