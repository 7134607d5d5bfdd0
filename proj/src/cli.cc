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

#include "causalkg/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "causalkg/dot.h"
#include "causalkg/error.h"
#include "causalkg/evaluation.h"
#include "causalkg/io.h"
#include "causalkg/reasoning.h"
#include "causalkg/rectifier.h"
#include "causalkg/schema.h"
#include "causalkg/senses.h"
#include "causalkg/training.h"

namespace causalkg {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string schema;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string model;
  std::string out;
  std::optional<double> threshold_relation;
  std::optional<double> threshold_attribute;

  std::string data;
  std::string input;
  std::string pred;
  std::string query;
  std::string inventory;
  std::string glosses;
  std::string skip;
  double sense_threshold = kDefaultSenseThreshold;
  bool rectify = false;
  bool no_lemma_link = false;
};

Schema ResolveSchema(const std::string& arg) {
  if (arg == "sciclaim" || arg == "ethno") return LoadSchema(arg);
  return LoadSchema(ReadTextFile(arg));
}

void ApplyThresholds(const Options& o, ModelConfig& config) {
  if (o.threshold_relation) config.relation_threshold = *o.threshold_relation;
  if (o.threshold_attribute) {
    config.attribute_threshold = *o.threshold_attribute;
  }
  ValidateModelConfig(config);
}

std::string GraphFileName(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "graph-%04zu.json", index);
  return buf;
}

std::string WithExtension(const std::string& name, const char* ext) {
  return fs::path(name).replace_extension(ext).string();
}

// Writes per-graph outputs: a single file for a graph input, a directory
// with a manifest for a manifest input.
void WriteGraphDocuments(const GraphSet& set, const std::string& out,
                         const std::vector<nlohmann::json>& documents) {
  if (set.from_manifest) {
    WriteGraphSet(out, set.names, documents);
  } else {
    WriteJsonFile(out, documents.front());
  }
}

void WriteOrPrint(const std::string& out, const nlohmann::json& j,
                  std::ostream& stream) {
  if (out.empty()) {
    stream << j.dump(2) << "\n";
  } else {
    WriteJsonFile(out, j);
  }
}

int RunTrain(const Options& o, std::ostream& out) {
  RunConfig config = o.config.empty() ? RunConfig{} : LoadRunConfig(o.config);
  if (o.seed) {
    config.train.seed = *o.seed;
    config.encoder.seed = *o.seed;
  }
  ModelConfig thresholds = config.train.model_config();
  ApplyThresholds(o, thresholds);
  config.train.relation_threshold = thresholds.relation_threshold;
  config.train.attribute_threshold = thresholds.attribute_threshold;

  const Schema schema = ResolveSchema(o.schema.empty() ? "sciclaim" : o.schema);
  const Dataset dataset = ParseDataset(ReadJsonFile(o.data), schema);
  const TrainResult result =
      Train(dataset, schema, config.encoder, config.train);
  for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
    const LossBreakdown& l = result.epoch_losses[e];
    char line[160];
    std::snprintf(line, sizeof(line),
                  "epoch %zu loss %.6f (entity %.6f relation %.6f attribute "
                  "%.6f)\n",
                  e + 1, l.total, l.entity, l.relation, l.attribute);
    out << line;
  }
  WriteJsonFile(o.out, nlohmann::json(result.model));
  return kExitOk;
}

int RunExtract(const Options& o, std::ostream& out) {
  Model model = LoadModel(o.model);
  ApplyThresholds(o, model.mutable_config());
  const std::vector<Sentence> sentences = LoadSentences(o.input);
  std::vector<std::string> names;
  std::vector<nlohmann::json> documents;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const Sentence& s = sentences[i];
    names.push_back(GraphFileName(i));
    documents.push_back(model.Extract(s.tokens, s.lemmas, s.id));
  }
  WriteGraphSet(o.out, names, documents);
  out << "extracted " << sentences.size() << " graphs into " << o.out << "\n";
  return kExitOk;
}

int RunEval(const Options& o, std::ostream& out) {
  std::optional<Model> model;
  if (!o.model.empty()) {
    model.emplace(LoadModel(o.model));
    ApplyThresholds(o, model->mutable_config());
  }
  const Schema schema = !o.schema.empty() ? ResolveSchema(o.schema)
                        : model           ? model->schema()
                                          : SciClaimSchema();
  const Dataset dataset = ParseDataset(ReadJsonFile(o.data), schema);
  std::vector<KnowledgeGraph> gold;
  for (const Example& ex : dataset) gold.push_back(ExampleGraph(ex));

  std::vector<KnowledgeGraph> predicted;
  if (!o.pred.empty()) {
    predicted = LoadGraphs(o.pred).graphs;
  } else if (model) {
    for (const Example& ex : dataset) {
      predicted.push_back(model->Extract(ex.tokens, ex.lemmas, ex.id));
    }
  } else {
    throw CLI::RequiredError("--model or --pred");
  }
  if (o.rectify) {
    for (KnowledgeGraph& g : predicted) g = Rectify(g, schema).graph;
  }
  const ScoreReport report = Score(predicted, gold, &schema);
  out << FormatReport(report);
  if (!o.out.empty()) WriteJsonFile(o.out, nlohmann::json(report));
  return kExitOk;
}

int RunRectify(const Options& o, std::ostream& out) {
  const Schema schema = ResolveSchema(o.schema.empty() ? "sciclaim" : o.schema);
  const GraphSet set = LoadGraphs(o.input);
  std::vector<nlohmann::json> documents;
  std::size_t removed = 0;
  for (const KnowledgeGraph& g : set.graphs) {
    const Rectified r = Rectify(g, schema);
    nlohmann::json doc = r.graph;
    doc["rectification"] = r.log;
    removed += r.log.size();
    documents.push_back(std::move(doc));
  }
  WriteGraphDocuments(set, o.out, documents);
  out << "removed " << removed << " elements from " << set.graphs.size()
      << " graphs\n";
  return kExitOk;
}

int RunSenses(const Options& o, std::ostream& out) {
  EncoderConfig encoder;
  if (!o.model.empty()) {
    encoder = LoadModel(o.model).encoder_config();
  } else if (!o.config.empty()) {
    encoder = LoadRunConfig(o.config).encoder;
  }
  if (o.seed) encoder.seed = *o.seed;
  const Encoder enc(encoder);
  const SenseInventory inventory = ParseSenseInventory(
      ReadTextFile(o.inventory),
      o.glosses.empty() ? std::string() : ReadTextFile(o.glosses),
      o.skip.empty() ? std::string() : ReadTextFile(o.skip));
  const GraphSet set = LoadGraphs(o.input);
  std::vector<nlohmann::json> documents;
  for (const KnowledgeGraph& g : set.graphs) {
    const TokenEncoding encoding = enc.Encode(g.tokens);
    documents.push_back(
        LinkSenses(g, encoding.tokens, inventory, o.sense_threshold));
  }
  WriteGraphDocuments(set, o.out, documents);
  out << "linked senses for " << set.graphs.size() << " graphs\n";
  return kExitOk;
}

int RunValence(const Options& o, std::ostream& out) {
  const GraphSet set = LoadGraphs(o.input);
  nlohmann::json graphs = nlohmann::json::array();
  for (const KnowledgeGraph& g : set.graphs) {
    graphs.push_back(
        {{"provenance", g.provenance}, {"assertions", ComputeValence(g)}});
  }
  WriteOrPrint(o.out, {{"graphs", std::move(graphs)}}, out);
  return kExitOk;
}

int RunQuery(const Options& o, std::ostream& out) {
  const Query query = ParseQuery(ReadJsonFile(o.query));
  GraphSet set = LoadGraphs(o.input);
  const CorpusGraph corpus =
      MergeCorpus(std::move(set.graphs), !o.no_lemma_link);
  const QueryResult result =
      FindPaths(corpus, query.start, query.end, query.max_len);
  WriteOrPrint(o.out, QueryResultToJson(corpus, result), out);
  return kExitOk;
}

int RunDot(const Options& o, std::ostream& out) {
  const Schema schema = ResolveSchema(o.schema.empty() ? "sciclaim" : o.schema);
  const GraphSet set = LoadGraphs(o.input);
  if (!set.from_manifest) {
    WriteTextFile(o.out, EmitDot(set.graphs.front(), schema));
  } else {
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
      WriteTextFile(fs::path(o.out) / WithExtension(set.names[i], ".dot"),
                    EmitDot(set.graphs[i], schema));
    }
  }
  out << "wrote " << set.graphs.size() << " dot files\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Causal knowledge graph extraction and reasoning", "causalkg"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--schema", o.schema,
                    "Built-in schema (sciclaim, ethno) or schema JSON file");
    sub->add_option("--config", o.config, "Run config JSON");
    sub->add_option("--seed", o.seed, "Seed for all randomness");
    sub->add_option("--threshold-relation", o.threshold_relation,
                    "Relation score threshold");
    sub->add_option("--threshold-attribute", o.threshold_attribute,
                    "Attribute score threshold");
  };

  CLI::App* train = app.add_subcommand("train", "Train an extraction model");
  common(train);
  train->add_option("--data", o.data, "Dataset JSON")->required();
  train->add_option("--out", o.out, "Model file to write")->required();

  CLI::App* extract = app.add_subcommand("extract", "Extract graphs");
  common(extract);
  extract->add_option("--model", o.model, "Model file")->required();
  extract->add_option("--input", o.input, "Sentences (JSON or text)")
      ->required();
  extract->add_option("--out", o.out, "Output directory")->required();

  CLI::App* eval = app.add_subcommand("eval", "Score predictions");
  common(eval);
  eval->add_option("--data", o.data, "Gold dataset JSON")->required();
  auto* model_opt = eval->add_option("--model", o.model, "Model file");
  auto* pred_opt =
      eval->add_option("--pred", o.pred, "Predicted graph or manifest");
  model_opt->excludes(pred_opt);
  eval->add_flag("--rectify", o.rectify, "Rectify predictions first");
  eval->add_option("--out", o.out, "JSON report file");

  CLI::App* rectify = app.add_subcommand("rectify", "Prune schema conflicts");
  common(rectify);
  rectify->add_option("--input", o.input, "Graph or manifest")->required();
  rectify->add_option("--out", o.out, "Output file or directory")->required();

  CLI::App* senses = app.add_subcommand("senses", "Link word senses");
  common(senses);
  senses->add_option("--model", o.model, "Model file (for its encoder)");
  senses->add_option("--inventory", o.inventory, "Sense inventory TSV")
      ->required();
  senses->add_option("--glosses", o.glosses, "Gloss TSV");
  senses->add_option("--skip", o.skip, "Skip-list of lemmas");
  senses->add_option("--threshold", o.sense_threshold,
                     "Report senses scoring above this");
  senses->add_option("--input", o.input, "Graph or manifest")->required();
  senses->add_option("--out", o.out, "Output file or directory")->required();

  CLI::App* valence = app.add_subcommand("valence", "Compute valence");
  common(valence);
  valence->add_option("--input", o.input, "Graph or manifest")->required();
  valence->add_option("--out", o.out, "JSON output (stdout if absent)");

  CLI::App* query = app.add_subcommand("query", "Find paths in a corpus");
  common(query);
  query->add_option("--query", o.query, "Query JSON")->required();
  query->add_option("--input", o.input, "Graph or manifest")->required();
  query->add_flag("--no-lemma-link", o.no_lemma_link,
                  "Do not link same-lemma nodes across sentences");
  query->add_option("--out", o.out, "JSON output (stdout if absent)");

  CLI::App* dot = app.add_subcommand("dot", "Emit Graphviz DOT");
  common(dot);
  dot->add_option("--input", o.input, "Graph or manifest")->required();
  dot->add_option("--out", o.out, "DOT file or directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (train->parsed()) return RunTrain(o, out);
    if (extract->parsed()) return RunExtract(o, out);
    if (eval->parsed()) return RunEval(o, out);
    if (rectify->parsed()) return RunRectify(o, out);
    if (senses->parsed()) return RunSenses(o, out);
    if (valence->parsed()) return RunValence(o, out);
    if (query->parsed()) return RunQuery(o, out);
    if (dot->parsed()) return RunDot(o, out);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace causalkg
