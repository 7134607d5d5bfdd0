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

#ifndef CAUSALKG_IO_H_
#define CAUSALKG_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "causalkg/encoder.h"
#include "causalkg/graph.h"
#include "causalkg/model.h"
#include "causalkg/training.h"
#include "json.hpp"

namespace causalkg {

std::string ReadTextFile(const std::filesystem::path& path);
// Creates missing parent directories.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
// Pretty-printed with a trailing newline, so output is byte-stable.
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j);

// A graph file or a manifest {"graphs": [relative paths]}.
struct GraphSet {
  bool from_manifest = false;
  std::vector<std::string> names;  // file names as listed in the manifest
  std::vector<KnowledgeGraph> graphs;
};

GraphSet LoadGraphs(const std::filesystem::path& path);

// Writes each document under its name, plus manifest.json listing them.
void WriteGraphSet(const std::filesystem::path& dir,
                   const std::vector<std::string>& names,
                   const std::vector<nlohmann::json>& documents);

// Config file: {"train": {...}, "encoder": {...}, "threshold_relation": x,
// "threshold_attribute": y}; every part optional.
struct RunConfig {
  TrainConfig train;
  EncoderConfig encoder;
};

RunConfig LoadRunConfig(const std::filesystem::path& path);

// A tokenized sentence to run extraction on.
struct Sentence {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
};

// JSON array of {"id"?, "tokens", "lemmas"?} (dataset files qualify), or
// plain text with one whitespace-tokenized sentence per line.
std::vector<Sentence> LoadSentences(const std::filesystem::path& path);

Model LoadModel(const std::filesystem::path& path);

}  // namespace causalkg

#endif  // CAUSALKG_IO_H_
