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

#include "causalkg/training.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "causalkg/error.h"

namespace causalkg {
namespace {

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return Mix(seed ^ Mix(a * 0x100000001b3ULL + Mix(b)));
}

// Unbiased draw from [0, bound).
std::size_t UniformBelow(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

// First `count` items of a seeded Fisher-Yates shuffle.
template <typename T>
std::vector<T> SampleWithoutReplacement(std::vector<T> pool, int count,
                                        std::mt19937_64& rng) {
  const std::size_t k = std::min<std::size_t>(std::max(count, 0), pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + UniformBelow(rng, pool.size() - i)]);
  }
  pool.resize(k);
  return pool;
}

void CheckSchemaType(bool known, const std::string& what,
                     const std::string& type, const std::string& example) {
  if (!known) {
    throw Error(ErrorCode::kSchemaMismatch, "example " + example + " uses " +
                                                what + " type '" + type +
                                                "' not declared in schema");
  }
}

void CheckExampleTypes(const Example& ex, const Schema& schema) {
  for (const auto& e : ex.entities) {
    CheckSchemaType(schema.HasEntityType(e.type), "entity", e.type, ex.id);
  }
  for (const auto& a : ex.attributes) {
    CheckSchemaType(schema.HasAttributeType(a.type), "attribute", a.type,
                    ex.id);
  }
  for (const auto& r : ex.relations) {
    CheckSchemaType(schema.HasRelationType(r.type), "relation", r.type, ex.id);
  }
}

double ClampProbability(double p) {
  return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

bool Clamped(double p) {
  return p < kProbabilityFloor || p > 1.0 - kProbabilityFloor;
}

double BinaryCrossEntropy(double p, int y) {
  const double q = ClampProbability(p);
  return -(y * std::log(q) + (1 - y) * std::log(1.0 - q));
}

// d(mean BCE)/dz for a sigmoid output, zero where the clamp is active.
double BinaryGradient(double p, int y, double scale) {
  const double active = y ? p : 1.0 - p;
  if (Clamped(active)) return 0.0;
  return (p - y) * scale;
}

// Gathers the spans an example touches and their attention results.
class SpanTable {
 public:
  SpanTable(const Parameters& p, const TokenEncoding& encoding)
      : params_(p), encoding_(encoding) {}

  int Index(Span s) {
    auto [it, inserted] = index_.emplace(s, static_cast<int>(spans_.size()));
    if (inserted) {
      spans_.push_back(s);
      attention_.push_back(AttendSpan(encoding_.tokens, s, params_.attention_w,
                                      params_.attention_b));
      grads_.emplace_back(params_.attention_w.size(), 0.0);
    }
    return it->second;
  }

  const SpanAttention& attention(int i) const { return attention_[i]; }
  Span span(int i) const { return spans_[i]; }
  Vector& grad(int i) { return grads_[i]; }

  // Pushes the accumulated span-vector gradients through the attention
  // softmax into the attention parameters.
  void Backward(Parameters& grad) const {
    const int d = static_cast<int>(params_.attention_w.size());
    for (std::size_t i = 0; i < spans_.size(); ++i) {
      const Span s = spans_[i];
      const Vector& alpha = attention_[i].weights;
      const Vector& upstream = grads_[i];
      Vector d_alpha(alpha.size(), 0.0);
      double mean = 0.0;
      for (int t = s.start; t < s.end; ++t) {
        const Vector& h = encoding_.tokens[t];
        double dot = 0.0;
        for (int k = 0; k < d; ++k) dot += upstream[k] * h[k];
        d_alpha[t - s.start] = dot;
        mean += alpha[t - s.start] * dot;
      }
      for (int t = s.start; t < s.end; ++t) {
        const double d_score =
            alpha[t - s.start] * (d_alpha[t - s.start] - mean);
        const Vector& h = encoding_.tokens[t];
        for (int k = 0; k < d; ++k) grad.attention_w[k] += d_score * h[k];
        grad.attention_b += d_score;
      }
    }
  }

 private:
  const Parameters& params_;
  const TokenEncoding& encoding_;
  std::map<Span, int> index_;
  std::vector<Span> spans_;
  std::vector<SpanAttention> attention_;
  std::vector<Vector> grads_;
};

// dW += g x^T, db += g, returns W^T g.
Vector LinearBackward(const Matrix& w, std::span<const double> x,
                      std::span<const double> g, Matrix& dw, Vector& db) {
  Vector dx(w.cols(), 0.0);
  for (int r = 0; r < w.rows(); ++r) {
    if (g[r] == 0.0) continue;
    db[r] += g[r];
    auto wr = w.row(r);
    auto dwr = dw.row(r);
    for (int c = 0; c < w.cols(); ++c) {
      dwr[c] += g[r] * x[c];
      dx[c] += g[r] * wr[c];
    }
  }
  return dx;
}

void AddToRow(Matrix& m, int row, std::span<const double> values) {
  auto r = m.row(row);
  for (std::size_t c = 0; c < values.size(); ++c) r[c] += values[c];
}

void AddTo(Vector& v, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) v[k] += values[k];
}

struct Pass {
  ForwardResult forward;
  Parameters gradient;
};

Pass Run(const Model& model, const TrainingBatchItem& item, bool backward) {
  const Parameters& p = model.parameters();
  const Schema& schema = model.schema();
  const Example& ex = *item.example;
  const TokenEncoding& enc = *item.encoding;
  const int d = model.dimension();
  const int dw = model.config().width_dim;
  const int num_attribute = static_cast<int>(schema.attribute_types.size());
  const int num_relation = static_cast<int>(schema.relation_types.size());

  if (enc.tokens.size() != ex.tokens.size()) {
    throw Error(ErrorCode::kAlignmentError, "encoding/token count mismatch");
  }
  for (const auto& e : ex.entities) {
    if (e.span.length() > model.config().max_span_len) {
      throw Error(ErrorCode::kInvalidConfig,
                  "gold span longer than max span length in " + ex.id);
    }
  }

  Pass pass;
  Predictions& pred = pass.forward.predictions;
  Targets& tgt = pass.forward.targets;
  SpanTable table(p, enc);

  struct EntitySample {
    int span;
    Vector rep;
  };
  std::vector<EntitySample> entity_samples;
  for (const auto& e : ex.entities) {
    entity_samples.push_back({table.Index(e.span), {}});
    tgt.entity.push_back(schema.EntityIndex(e.type) + 1);
  }
  for (Span s : item.sample.spans) {
    entity_samples.push_back({table.Index(s), {}});
    tgt.entity.push_back(0);
  }
  std::vector<Vector> entity_logits;
  for (EntitySample& sample : entity_samples) {
    const Span s = table.span(sample.span);
    sample.rep = EntityRep(s, table.attention(sample.span).vector, enc.passage,
                           p.width);
    pred.entity.push_back(Softmax(p.entity_w.Affine(sample.rep, p.entity_b)));
  }

  // Attribute head sees gold entities only.
  std::vector<std::vector<int>> attribute_targets(
      ex.entities.size(), std::vector<int>(num_attribute, 0));
  for (const auto& a : ex.attributes) {
    attribute_targets[a.entity][schema.AttributeIndex(a.type)] = 1;
  }
  for (std::size_t i = 0; i < ex.entities.size(); ++i) {
    Vector z = p.attribute_w.Affine(entity_samples[i].rep, p.attribute_b);
    for (double& v : z) v = Sigmoid(v);
    pred.attribute.push_back(std::move(z));
    tgt.attribute.push_back(attribute_targets[i]);
  }

  // Relation head: gold pairs with at least one relation, then negatives.
  std::map<std::pair<int, int>, std::vector<int>> positive;
  for (const auto& r : ex.relations) {
    auto& labels = positive[{r.head, r.tail}];
    labels.resize(num_relation, 0);
    labels[schema.RelationIndex(r.type)] = 1;
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [pair, labels] : positive) {
    pairs.push_back(pair);
    tgt.relation.push_back(labels);
  }
  for (const auto& pair : item.sample.pairs) {
    pairs.push_back(pair);
    tgt.relation.push_back(std::vector<int>(num_relation, 0));
  }
  std::vector<Vector> relation_reps;
  for (const auto& [head, tail] : pairs) {
    const int hi = entity_samples[head].span;
    const int ti = entity_samples[tail].span;
    relation_reps.push_back(RelationRep(
        table.span(hi), table.attention(hi).vector, table.span(ti),
        table.attention(ti).vector, enc.tokens, p.width));
    Vector z = p.relation_w.Affine(relation_reps.back(), p.relation_b);
    for (double& v : z) v = Sigmoid(v);
    pred.relation.push_back(std::move(z));
  }

  pass.forward.loss = JointLoss(pred, tgt);
  if (!backward) return pass;

  Parameters& g = pass.gradient;
  g = Parameters::Zeros(schema, d, model.config());

  const double entity_scale = 1.0 / std::max<std::size_t>(1, pred.entity.size());
  for (std::size_t i = 0; i < entity_samples.size(); ++i) {
    const Vector& prob = pred.entity[i];
    const int y = tgt.entity[i];
    if (Clamped(prob[y])) continue;
    Vector dz(prob.size());
    for (std::size_t c = 0; c < prob.size(); ++c) {
      dz[c] = (prob[c] - (static_cast<int>(c) == y ? 1.0 : 0.0)) * entity_scale;
    }
    const Vector dx =
        LinearBackward(p.entity_w, entity_samples[i].rep, dz, g.entity_w,
                       g.entity_b);
    const int si = entity_samples[i].span;
    AddTo(table.grad(si), std::span(dx).subspan(0, d));
    AddToRow(g.width, table.span(si).length() - 1,
             std::span(dx).subspan(2 * d, dw));
  }

  const std::size_t attribute_count = pred.attribute.size() * num_attribute;
  const double attribute_scale =
      attribute_count ? 1.0 / static_cast<double>(attribute_count) : 0.0;
  for (std::size_t i = 0; i < pred.attribute.size(); ++i) {
    Vector dz(num_attribute);
    for (int k = 0; k < num_attribute; ++k) {
      dz[k] = BinaryGradient(pred.attribute[i][k], tgt.attribute[i][k],
                             attribute_scale);
    }
    const Vector dx = LinearBackward(p.attribute_w, entity_samples[i].rep, dz,
                                     g.attribute_w, g.attribute_b);
    const int si = entity_samples[i].span;
    AddTo(table.grad(si), std::span(dx).subspan(0, d));
    AddToRow(g.width, table.span(si).length() - 1,
             std::span(dx).subspan(2 * d, dw));
  }

  const std::size_t relation_count = pred.relation.size() * num_relation;
  const double relation_scale =
      relation_count ? 1.0 / static_cast<double>(relation_count) : 0.0;
  for (std::size_t i = 0; i < pred.relation.size(); ++i) {
    Vector dz(num_relation);
    for (int k = 0; k < num_relation; ++k) {
      dz[k] = BinaryGradient(pred.relation[i][k], tgt.relation[i][k],
                             relation_scale);
    }
    const Vector dx = LinearBackward(p.relation_w, relation_reps[i], dz,
                                     g.relation_w, g.relation_b);
    const std::span<const double> dxs(dx);
    const int hi = entity_samples[pairs[i].first].span;
    const int ti = entity_samples[pairs[i].second].span;
    AddTo(table.grad(hi), dxs.subspan(0, d));
    AddToRow(g.width, table.span(hi).length() - 1, dxs.subspan(d, dw));
    AddTo(table.grad(ti), dxs.subspan(2 * d + dw, d));
    AddToRow(g.width, table.span(ti).length() - 1, dxs.subspan(3 * d + dw, dw));
  }

  table.Backward(g);
  return pass;
}

void AddScaled(Parameters& into, const Parameters& from, double scale) {
  auto dst = Groups(into);
  auto src = Groups(from);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    for (std::size_t k = 0; k < dst[i].values.size(); ++k) {
      dst[i].values[k] += scale * src[i].values[k];
    }
  }
}

}  // namespace

KnowledgeGraph ExampleGraph(const Example& example) {
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < example.entities.size(); ++i) {
    Entity e;
    e.id = "e" + std::to_string(i);
    e.span = example.entities[i].span;
    e.type = example.entities[i].type;
    entities.push_back(std::move(e));
  }
  auto entity_id = [&](int index) {
    if (index < 0 || index >= static_cast<int>(entities.size())) {
      throw Error(ErrorCode::kDanglingReference,
                  "entity index " + std::to_string(index) + " in example " +
                      example.id);
    }
    return entities[index].id;
  };
  std::vector<AttributeAssertion> attributes;
  for (const auto& a : example.attributes) {
    attributes.push_back({entity_id(a.entity), a.type, 1.0});
  }
  std::vector<Relation> relations;
  for (const auto& r : example.relations) {
    relations.push_back({entity_id(r.head), entity_id(r.tail), r.type, 1.0});
  }
  return AssembleGraph(example.tokens, example.lemmas, std::move(entities),
                       attributes, std::move(relations), example.id);
}

Dataset ParseDataset(const nlohmann::json& j, const Schema& schema) {
  if (!j.is_array()) {
    throw Error(ErrorCode::kParseError, "dataset must be a JSON array");
  }
  Dataset dataset;
  try {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& je = j[i];
      Example ex;
      ex.id = je.value("id", "s" + std::to_string(i));
      ex.tokens = je.at("tokens").get<std::vector<std::string>>();
      ex.lemmas = je.value("lemmas", std::vector<std::string>{});
      if (ex.lemmas.empty()) {
        for (const auto& t : ex.tokens) ex.lemmas.push_back(DefaultLemma(t));
      }
      for (const auto& e : je.value("entities", nlohmann::json::array())) {
        ex.entities.push_back({{e.at("start").get<int>(), e.at("end").get<int>()},
                               e.at("type").get<std::string>()});
      }
      for (const auto& a : je.value("attributes", nlohmann::json::array())) {
        ex.attributes.push_back(
            {a.at("entity").get<int>(), a.at("type").get<std::string>()});
      }
      for (const auto& r : je.value("relations", nlohmann::json::array())) {
        ex.relations.push_back({r.at("head").get<int>(),
                                r.at("tail").get<int>(),
                                r.at("type").get<std::string>()});
      }
      CheckExampleTypes(ex, schema);
      ExampleGraph(ex);  // structural validation
      dataset.push_back(std::move(ex));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  return dataset;
}

nlohmann::json DatasetToJson(const Dataset& dataset) {
  nlohmann::json out = nlohmann::json::array();
  for (const Example& ex : dataset) {
    nlohmann::json entities = nlohmann::json::array();
    for (const auto& e : ex.entities) {
      entities.push_back(
          {{"start", e.span.start}, {"end", e.span.end}, {"type", e.type}});
    }
    nlohmann::json attributes = nlohmann::json::array();
    for (const auto& a : ex.attributes) {
      attributes.push_back({{"entity", a.entity}, {"type", a.type}});
    }
    nlohmann::json relations = nlohmann::json::array();
    for (const auto& r : ex.relations) {
      relations.push_back(
          {{"head", r.head}, {"tail", r.tail}, {"type", r.type}});
    }
    out.push_back({{"id", ex.id},
                   {"tokens", ex.tokens},
                   {"lemmas", ex.lemmas},
                   {"entities", std::move(entities)},
                   {"attributes", std::move(attributes)},
                   {"relations", std::move(relations)}});
  }
  return out;
}

void ValidateTrainConfig(const TrainConfig& c) {
  if (c.epochs < 0 || c.batch_size < 1 || c.negative_entity_count < 0 ||
      c.negative_relation_count < 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "epochs and sample counts must be >= 0, batch size >= 1");
  }
  if (!(c.learning_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "learning rate must be > 0");
  }
  ValidateModelConfig(c.model_config());
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{{"epochs", c.epochs},
                     {"learning_rate", c.learning_rate},
                     {"batch_size", c.batch_size},
                     {"negative_entity_count", c.negative_entity_count},
                     {"negative_relation_count", c.negative_relation_count},
                     {"seed", c.seed},
                     {"max_span_len", c.max_span_len},
                     {"width_dim", c.width_dim},
                     {"relation_threshold", c.relation_threshold},
                     {"attribute_threshold", c.attribute_threshold}};
}

void from_json(const nlohmann::json& j, TrainConfig& config) {
  TrainConfig c;
  try {
    c.epochs = j.value("epochs", c.epochs);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.negative_entity_count =
        j.value("negative_entity_count", c.negative_entity_count);
    c.negative_relation_count =
        j.value("negative_relation_count", c.negative_relation_count);
    c.seed = j.value("seed", c.seed);
    c.max_span_len = j.value("max_span_len", c.max_span_len);
    c.width_dim = j.value("width_dim", c.width_dim);
    c.relation_threshold = j.value("relation_threshold", c.relation_threshold);
    c.attribute_threshold =
        j.value("attribute_threshold", c.attribute_threshold);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  ValidateTrainConfig(c);
  config = c;
}

NegativeSample SampleNegatives(const Example& example,
                               const TrainConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<Span> gold;
  for (const auto& e : example.entities) gold.insert(e.span);
  std::vector<Span> candidates;
  for (Span s : EnumerateSpans(static_cast<int>(example.tokens.size()),
                               config.max_span_len)) {
    if (!gold.count(s)) candidates.push_back(s);
  }

  std::set<std::pair<int, int>> related;
  for (const auto& r : example.relations) related.emplace(r.head, r.tail);
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(example.entities.size());
  for (int h = 0; h < n; ++h) {
    for (int t = 0; t < n; ++t) {
      if (h != t && !related.count({h, t})) pairs.emplace_back(h, t);
    }
  }

  NegativeSample sample;
  sample.spans = SampleWithoutReplacement(std::move(candidates),
                                          config.negative_entity_count, rng);
  sample.pairs = SampleWithoutReplacement(std::move(pairs),
                                          config.negative_relation_count, rng);
  return sample;
}

LossBreakdown JointLoss(const Predictions& predictions,
                        const Targets& targets) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kAlignmentError, what);
  };
  require(predictions.entity.size() == targets.entity.size(),
          "entity predictions and targets differ in count");
  require(predictions.attribute.size() == targets.attribute.size(),
          "attribute predictions and targets differ in count");
  require(predictions.relation.size() == targets.relation.size(),
          "relation predictions and targets differ in count");

  LossBreakdown loss;
  for (std::size_t i = 0; i < predictions.entity.size(); ++i) {
    const int y = targets.entity[i];
    require(y >= 0 && y < static_cast<int>(predictions.entity[i].size()),
            "entity target outside class range");
    loss.entity -= std::log(ClampProbability(predictions.entity[i][y]));
  }
  if (!predictions.entity.empty()) loss.entity /= predictions.entity.size();

  auto binary = [&](const std::vector<Vector>& p,
                    const std::vector<std::vector<int>>& y) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      require(p[i].size() == y[i].size(), "binary output width mismatch");
      for (std::size_t k = 0; k < p[i].size(); ++k) {
        sum += BinaryCrossEntropy(p[i][k], y[i][k]);
        ++count;
      }
    }
    return count ? sum / static_cast<double>(count) : 0.0;
  };
  loss.relation = binary(predictions.relation, targets.relation);
  loss.attribute = binary(predictions.attribute, targets.attribute);
  loss.total = loss.entity + loss.relation + loss.attribute;
  return loss;
}

ForwardResult Forward(const Model& model, const TrainingBatchItem& item) {
  return Run(model, item, false).forward;
}

std::pair<LossBreakdown, Parameters> LossAndGradient(
    const Model& model, const TrainingBatchItem& item) {
  Pass pass = Run(model, item, true);
  return {pass.forward.loss, std::move(pass.gradient)};
}

GradCheckReport GradCheck(const Model& model, const TrainingBatchItem& item,
                          double epsilon) {
  if (!(epsilon >= 1e-6 && epsilon <= 1e-3)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon outside [1e-6, 1e-3]");
  }
  const auto [loss, analytic] = LossAndGradient(model, item);
  Model probe = model;
  GradCheckReport report;
  auto analytic_groups = Groups(analytic);
  auto probe_groups = Groups(probe.mutable_parameters());
  for (std::size_t gi = 0; gi < probe_groups.size(); ++gi) {
    std::span<double> values = probe_groups[gi].values;
    std::span<const double> expected = analytic_groups[gi].values;
    double diff_sq = 0.0, analytic_sq = 0.0, numeric_sq = 0.0, max_abs = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double saved = values[k];
      values[k] = saved + epsilon;
      const double up = Forward(probe, item).loss.total;
      values[k] = saved - epsilon;
      const double down = Forward(probe, item).loss.total;
      values[k] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      if (!std::isfinite(numeric) || !std::isfinite(expected[k])) {
        throw Error(ErrorCode::kNonFiniteGradient,
                    std::string(probe_groups[gi].name) + "[" +
                        std::to_string(k) + "]");
      }
      const double diff = expected[k] - numeric;
      diff_sq += diff * diff;
      analytic_sq += expected[k] * expected[k];
      numeric_sq += numeric * numeric;
      max_abs = std::max(max_abs, std::abs(diff));
    }
    GroupGradCheck group;
    group.name = std::string(probe_groups[gi].name);
    group.size = values.size();
    group.relative_error =
        std::sqrt(diff_sq) / std::max(std::sqrt(analytic_sq) +
                                          std::sqrt(numeric_sq),
                                      kGradCheckNormFloor);
    group.max_abs_error = max_abs;
    report.max_relative_error =
        std::max(report.max_relative_error, group.relative_error);
    report.groups.push_back(std::move(group));
  }
  return report;
}

TrainResult Train(const Dataset& dataset, const Schema& schema,
                  const EncoderConfig& encoder_config,
                  const TrainConfig& config) {
  ValidateTrainConfig(config);
  if (dataset.empty()) throw Error(ErrorCode::kEmptyInput, "empty dataset");
  for (const Example& ex : dataset) {
    CheckExampleTypes(ex, schema);
    for (const auto& e : ex.entities) {
      if (e.span.length() > config.max_span_len) {
        throw Error(ErrorCode::kInvalidConfig,
                    "example " + ex.id + " has a gold span longer than " +
                        std::to_string(config.max_span_len));
      }
    }
  }

  Model model = Model::Initialize(schema, encoder_config,
                                  config.model_config(), config.seed);
  std::vector<TokenEncoding> encodings;
  encodings.reserve(dataset.size());
  for (const Example& ex : dataset) {
    encodings.push_back(model.encoder().Encode(ex.tokens));
  }

  TrainResult result{model, {}};
  Model& m = result.model;
  std::vector<std::size_t> order(dataset.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 shuffle_rng(DeriveSeed(config.seed, epoch, ~0ULL));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[UniformBelow(shuffle_rng, i)]);
    }

    LossBreakdown epoch_loss;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      Parameters batch_grad =
          Parameters::Zeros(schema, m.dimension(), m.config());
      for (std::size_t b = start; b < stop; ++b) {
        const std::size_t idx = order[b];
        TrainingBatchItem item{
            &dataset[idx], &encodings[idx],
            SampleNegatives(dataset[idx], config,
                            DeriveSeed(config.seed, epoch, idx))};
        auto [loss, grad] = LossAndGradient(m, item);
        AddScaled(batch_grad, grad, 1.0 / static_cast<double>(stop - start));
        epoch_loss.entity += loss.entity;
        epoch_loss.relation += loss.relation;
        epoch_loss.attribute += loss.attribute;
      }
      AddScaled(m.mutable_parameters(), batch_grad, -config.learning_rate);
    }
    const double n = static_cast<double>(dataset.size());
    epoch_loss.entity /= n;
    epoch_loss.relation /= n;
    epoch_loss.attribute /= n;
    epoch_loss.total =
        epoch_loss.entity + epoch_loss.relation + epoch_loss.attribute;
    result.epoch_losses.push_back(epoch_loss);
  }
  return result;
}

}  // namespace causalkg
