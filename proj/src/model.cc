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

#include "causalkg/model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "causalkg/error.h"

namespace causalkg {
namespace {

constexpr int kModelFormatVersion = 1;

double UniformSymmetric(std::mt19937_64& rng, double limit) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return (2.0 * unit - 1.0) * limit;
}

void FillUniform(std::span<double> values, int fan_in, std::mt19937_64& rng) {
  const double limit = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (double& x : values) x = UniformSymmetric(rng, limit);
}

nlohmann::json TensorJson(std::vector<int> shape,
                          std::span<const double> values) {
  return {{"shape", shape},
          {"data", std::vector<double>(values.begin(), values.end())}};
}

Vector ReadVector(const nlohmann::json& j, int size, std::string_view name) {
  auto shape = j.at("shape").get<std::vector<int>>();
  auto data = j.at("data").get<Vector>();
  if (shape != std::vector<int>{size} || static_cast<int>(data.size()) != size) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter " + std::string(name) + " has wrong shape");
  }
  return data;
}

void ReadMatrix(const nlohmann::json& j, Matrix& m, std::string_view name) {
  auto shape = j.at("shape").get<std::vector<int>>();
  auto data = j.at("data").get<Vector>();
  if (shape != std::vector<int>{m.rows(), m.cols()} ||
      data.size() != m.data().size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter " + std::string(name) + " has wrong shape");
  }
  m.data() = std::move(data);
}

}  // namespace

Vector Matrix::Affine(std::span<const double> x,
                      std::span<const double> bias) const {
  Vector out(bias.begin(), bias.end());
  for (int r = 0; r < rows_; ++r) {
    const double* w = data_.data() + r * cols_;
    double sum = 0.0;
    for (int c = 0; c < cols_; ++c) sum += w[c] * x[c];
    out[r] += sum;
  }
  return out;
}

void ValidateModelConfig(const ModelConfig& config) {
  if (config.max_span_len < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max span length must be >= 1");
  }
  if (config.width_dim < 1) {
    throw Error(ErrorCode::kInvalidConfig, "width dimension must be >= 1");
  }
  auto in_open_unit = [](double t) { return t > 0.0 && t < 1.0; };
  if (!in_open_unit(config.relation_threshold) ||
      !in_open_unit(config.attribute_threshold)) {
    throw Error(ErrorCode::kInvalidConfig, "thresholds must lie in (0, 1)");
  }
}

Parameters Parameters::Zeros(const Schema& schema, int dimension,
                             const ModelConfig& config) {
  const int d = dimension;
  const int entity_in = 2 * d + config.width_dim;
  const int relation_in = 3 * d + 2 * config.width_dim;
  const int num_entity = static_cast<int>(schema.entity_types.size()) + 1;
  const int num_attribute = static_cast<int>(schema.attribute_types.size());
  const int num_relation = static_cast<int>(schema.relation_types.size());
  Parameters p;
  p.attention_w.assign(d, 0.0);
  p.width = Matrix(config.max_span_len, config.width_dim);
  p.entity_w = Matrix(num_entity, entity_in);
  p.entity_b.assign(num_entity, 0.0);
  p.attribute_w = Matrix(num_attribute, entity_in);
  p.attribute_b.assign(num_attribute, 0.0);
  p.relation_w = Matrix(num_relation, relation_in);
  p.relation_b.assign(num_relation, 0.0);
  return p;
}

std::vector<ParameterGroup> Groups(Parameters& p) {
  return {{"attention_w", p.attention_w},
          {"attention_b", {&p.attention_b, 1}},
          {"width", p.width.data()},
          {"entity_w", p.entity_w.data()},
          {"entity_b", p.entity_b},
          {"attribute_w", p.attribute_w.data()},
          {"attribute_b", p.attribute_b},
          {"relation_w", p.relation_w.data()},
          {"relation_b", p.relation_b}};
}

std::vector<ConstParameterGroup> Groups(const Parameters& p) {
  std::vector<ConstParameterGroup> out;
  for (const ParameterGroup& g : Groups(const_cast<Parameters&>(p))) {
    out.push_back({g.name, g.values});
  }
  return out;
}

std::vector<Span> EnumerateSpans(int n, int max_len) {
  std::vector<Span> spans;
  for (int start = 0; start < n; ++start) {
    for (int len = 1; len <= max_len && start + len <= n; ++len) {
      spans.push_back({start, start + len});
    }
  }
  return spans;
}

Vector Softmax(std::span<const double> logits) {
  Vector out(logits.begin(), logits.end());
  if (out.empty()) return out;
  const double top = *std::max_element(out.begin(), out.end());
  double sum = 0.0;
  for (double& x : out) {
    x = std::exp(x - top);
    sum += x;
  }
  for (double& x : out) x /= sum;
  return out;
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

SpanAttention AttendSpan(std::span<const Vector> token_vectors, Span span,
                         std::span<const double> w, double b) {
  Vector scores;
  scores.reserve(span.length());
  for (int t = span.start; t < span.end; ++t) {
    const Vector& h = token_vectors[t];
    double s = b;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * h[k];
    scores.push_back(s);
  }
  SpanAttention out;
  out.weights = Softmax(scores);
  out.vector.assign(w.size(), 0.0);
  for (int t = span.start; t < span.end; ++t) {
    const double alpha = out.weights[t - span.start];
    const Vector& h = token_vectors[t];
    for (std::size_t k = 0; k < out.vector.size(); ++k) {
      out.vector[k] += alpha * h[k];
    }
  }
  return out;
}

Vector EntityRep(Span span, std::span<const double> span_vector,
                 std::span<const double> passage, const Matrix& width) {
  Vector rep;
  rep.reserve(span_vector.size() + passage.size() + width.cols());
  rep.insert(rep.end(), span_vector.begin(), span_vector.end());
  rep.insert(rep.end(), passage.begin(), passage.end());
  auto w = width.row(span.length() - 1);
  rep.insert(rep.end(), w.begin(), w.end());
  return rep;
}

Vector BetweenMaxPool(std::span<const Vector> token_vectors, Span a, Span b) {
  const std::size_t d = token_vectors.empty() ? 0 : token_vectors[0].size();
  const int from = std::min(a.end, b.end);
  const int to = std::max(a.start, b.start);
  if (from >= to) return Vector(d, 0.0);
  Vector out = token_vectors[from];
  for (int t = from + 1; t < to; ++t) {
    for (std::size_t k = 0; k < d; ++k) {
      out[k] = std::max(out[k], token_vectors[t][k]);
    }
  }
  return out;
}

Vector RelationRep(Span head, std::span<const double> head_vector, Span tail,
                   std::span<const double> tail_vector,
                   std::span<const Vector> token_vectors,
                   const Matrix& width) {
  const Vector between = BetweenMaxPool(token_vectors, head, tail);
  auto head_width = width.row(head.length() - 1);
  auto tail_width = width.row(tail.length() - 1);
  Vector rep;
  rep.reserve(head_vector.size() * 3 + width.cols() * 2);
  rep.insert(rep.end(), head_vector.begin(), head_vector.end());
  rep.insert(rep.end(), head_width.begin(), head_width.end());
  rep.insert(rep.end(), between.begin(), between.end());
  rep.insert(rep.end(), tail_vector.begin(), tail_vector.end());
  rep.insert(rep.end(), tail_width.begin(), tail_width.end());
  return rep;
}

Model::Model(Schema schema, EncoderConfig encoder, ModelConfig config,
             Parameters parameters)
    : schema_(std::move(schema)),
      encoder_config_(std::move(encoder)),
      config_(config),
      parameters_(std::move(parameters)),
      encoder_(encoder_config_) {
  ValidateModelConfig(config_);
  const Parameters shape =
      Parameters::Zeros(schema_, encoder_config_.dimension, config_);
  auto expected = Groups(shape);
  auto actual = Groups(static_cast<const Parameters&>(parameters_));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i].values.size() != actual[i].values.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "parameter " + std::string(expected[i].name) +
                      " inconsistent with schema and encoder");
    }
  }
  if (parameters_.width.cols() != config_.width_dim ||
      parameters_.entity_w.cols() != shape.entity_w.cols() ||
      parameters_.attribute_w.cols() != shape.attribute_w.cols() ||
      parameters_.relation_w.cols() != shape.relation_w.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "parameter matrix columns");
  }
}

Model Model::Initialize(Schema schema, EncoderConfig encoder,
                        ModelConfig config, std::uint64_t seed) {
  ValidateModelConfig(config);
  Parameters p = Parameters::Zeros(schema, encoder.dimension, config);
  std::mt19937_64 rng(seed);
  FillUniform(p.attention_w, encoder.dimension, rng);
  FillUniform(p.width.data(), config.width_dim, rng);
  FillUniform(p.entity_w.data(), p.entity_w.cols(), rng);
  FillUniform(p.attribute_w.data(), p.attribute_w.cols(), rng);
  FillUniform(p.relation_w.data(), p.relation_w.cols(), rng);
  return Model(std::move(schema), std::move(encoder), config, std::move(p));
}

std::vector<Vector> Model::ClassifyEntities(
    std::span<const Vector> reps) const {
  std::vector<Vector> out;
  out.reserve(reps.size());
  for (const Vector& x : reps) {
    out.push_back(Softmax(parameters_.entity_w.Affine(x, parameters_.entity_b)));
  }
  return out;
}

std::vector<Vector> Model::ClassifyAttributes(
    std::span<const Vector> reps) const {
  std::vector<Vector> out;
  out.reserve(reps.size());
  for (const Vector& x : reps) {
    Vector z = parameters_.attribute_w.Affine(x, parameters_.attribute_b);
    for (double& v : z) v = Sigmoid(v);
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<Vector> Model::ClassifyRelations(
    std::span<const Vector> reps) const {
  std::vector<Vector> out;
  out.reserve(reps.size());
  for (const Vector& x : reps) {
    Vector z = parameters_.relation_w.Affine(x, parameters_.relation_b);
    for (double& v : z) v = Sigmoid(v);
    out.push_back(std::move(z));
  }
  return out;
}

KnowledgeGraph Model::Extract(const std::vector<std::string>& tokens,
                              const std::vector<std::string>& lemmas,
                              const std::string& provenance) const {
  return ExtractEncoded(tokens, lemmas, encoder_.Encode(tokens), provenance);
}

KnowledgeGraph Model::ExtractEncoded(const std::vector<std::string>& tokens,
                                     const std::vector<std::string>& lemmas,
                                     const TokenEncoding& encoding,
                                     const std::string& provenance) const {
  if (encoding.tokens.size() != tokens.size() ||
      static_cast<int>(encoding.passage.size()) != dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "encoding does not match tokens or model dimension");
  }
  const Parameters& p = parameters_;
  const std::vector<Span> spans =
      EnumerateSpans(static_cast<int>(tokens.size()), config_.max_span_len);

  std::vector<SpanAttention> attended;
  std::vector<Vector> reps;
  attended.reserve(spans.size());
  reps.reserve(spans.size());
  for (Span s : spans) {
    attended.push_back(
        AttendSpan(encoding.tokens, s, p.attention_w, p.attention_b));
    reps.push_back(
        EntityRep(s, attended.back().vector, encoding.passage, p.width));
  }
  const std::vector<Vector> distributions = ClassifyEntities(reps);

  std::vector<Entity> entities;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Vector& dist = distributions[i];
    const auto best = std::max_element(dist.begin(), dist.end()) - dist.begin();
    if (best == 0) continue;
    Entity e;
    e.id = "e" + std::to_string(entities.size());
    e.span = spans[i];
    e.type = schema_.entity_types[best - 1];
    e.confidence = dist[best];
    entities.push_back(std::move(e));
    chosen.push_back(i);
  }

  std::vector<Vector> entity_reps;
  for (std::size_t i : chosen) entity_reps.push_back(reps[i]);
  const std::vector<Vector> attribute_scores = ClassifyAttributes(entity_reps);
  for (std::size_t k = 0; k < entities.size(); ++k) {
    for (std::size_t a = 0; a < schema_.attribute_types.size(); ++a) {
      const double score = attribute_scores[k][a];
      if (score >= config_.attribute_threshold) {
        entities[k].attributes.push_back({schema_.attribute_types[a], score});
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Vector> pair_reps;
  for (std::size_t h = 0; h < entities.size(); ++h) {
    for (std::size_t t = 0; t < entities.size(); ++t) {
      if (h == t) continue;
      pairs.emplace_back(h, t);
      pair_reps.push_back(RelationRep(
          entities[h].span, attended[chosen[h]].vector, entities[t].span,
          attended[chosen[t]].vector, encoding.tokens, p.width));
    }
  }
  const std::vector<Vector> relation_scores = ClassifyRelations(pair_reps);
  std::vector<Relation> relations;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t r = 0; r < schema_.relation_types.size(); ++r) {
      const double score = relation_scores[i][r];
      if (score >= config_.relation_threshold) {
        relations.push_back({entities[pairs[i].first].id,
                             entities[pairs[i].second].id,
                             schema_.relation_types[r], score});
      }
    }
  }

  return AssembleGraph(tokens, lemmas, std::move(entities), {},
                       std::move(relations), provenance);
}

void to_json(nlohmann::json& j, const Model& model) {
  const Parameters& p = model.parameters();
  nlohmann::json params = nlohmann::json::object();
  params["attention_w"] = TensorJson({int(p.attention_w.size())}, p.attention_w);
  params["attention_b"] = TensorJson({1}, {&p.attention_b, 1});
  auto matrix = [](const Matrix& m) {
    return TensorJson({m.rows(), m.cols()}, m.data());
  };
  params["width"] = matrix(p.width);
  params["entity_w"] = matrix(p.entity_w);
  params["entity_b"] = TensorJson({int(p.entity_b.size())}, p.entity_b);
  params["attribute_w"] = matrix(p.attribute_w);
  params["attribute_b"] = TensorJson({int(p.attribute_b.size())}, p.attribute_b);
  params["relation_w"] = matrix(p.relation_w);
  params["relation_b"] = TensorJson({int(p.relation_b.size())}, p.relation_b);
  const ModelConfig& c = model.config();
  j = nlohmann::json{
      {"format", "causalkg-model"},
      {"version", kModelFormatVersion},
      {"schema", model.schema()},
      {"encoder", model.encoder_config()},
      {"config",
       {{"max_span_len", c.max_span_len},
        {"width_dim", c.width_dim},
        {"relation_threshold", c.relation_threshold},
        {"attribute_threshold", c.attribute_threshold}}},
      {"parameters", std::move(params)}};
}

Model ModelFromJson(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "causalkg-model" ||
        j.value("version", 0) != kModelFormatVersion) {
      throw Error(ErrorCode::kParseError, "not a version 1 model file");
    }
    Schema schema = j.at("schema").get<Schema>();
    EncoderConfig encoder = j.at("encoder").get<EncoderConfig>();
    const auto& jc = j.at("config");
    ModelConfig config;
    config.max_span_len = jc.at("max_span_len").get<int>();
    config.width_dim = jc.at("width_dim").get<int>();
    config.relation_threshold = jc.at("relation_threshold").get<double>();
    config.attribute_threshold = jc.at("attribute_threshold").get<double>();
    ValidateModelConfig(config);

    Parameters p = Parameters::Zeros(schema, encoder.dimension, config);
    const auto& jp = j.at("parameters");
    p.attention_w = ReadVector(jp.at("attention_w"), encoder.dimension,
                               "attention_w");
    p.attention_b = ReadVector(jp.at("attention_b"), 1, "attention_b")[0];
    ReadMatrix(jp.at("width"), p.width, "width");
    ReadMatrix(jp.at("entity_w"), p.entity_w, "entity_w");
    p.entity_b = ReadVector(jp.at("entity_b"), int(p.entity_b.size()),
                            "entity_b");
    ReadMatrix(jp.at("attribute_w"), p.attribute_w, "attribute_w");
    p.attribute_b = ReadVector(jp.at("attribute_b"),
                               int(p.attribute_b.size()), "attribute_b");
    ReadMatrix(jp.at("relation_w"), p.relation_w, "relation_w");
    p.relation_b = ReadVector(jp.at("relation_b"), int(p.relation_b.size()),
                              "relation_b");
    return Model(std::move(schema), std::move(encoder), config, std::move(p));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
}

}  // namespace causalkg
