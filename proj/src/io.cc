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

#include "causalkg/io.h"

#include <fstream>
#include <sstream>

#include "causalkg/error.h"

namespace causalkg {

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + ex.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

GraphSet LoadGraphs(const std::filesystem::path& path) {
  const nlohmann::json j = ReadJsonFile(path);
  GraphSet set;
  if (j.is_object() && j.contains("graphs")) {
    set.from_manifest = true;
    for (const auto& entry : j.at("graphs")) {
      const std::string name = entry.get<std::string>();
      set.names.push_back(name);
      set.graphs.push_back(
          ReadJsonFile(path.parent_path() / name).get<KnowledgeGraph>());
    }
  } else {
    set.names.push_back(path.filename().string());
    set.graphs.push_back(j.get<KnowledgeGraph>());
  }
  return set;
}

void WriteGraphSet(const std::filesystem::path& dir,
                   const std::vector<std::string>& names,
                   const std::vector<nlohmann::json>& documents) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    WriteJsonFile(dir / names[i], documents[i]);
  }
  WriteJsonFile(dir / "manifest.json", {{"graphs", names}});
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  const nlohmann::json j = ReadJsonFile(path);
  RunConfig config;
  if (j.contains("train")) config.train = j["train"].get<TrainConfig>();
  if (j.contains("encoder")) config.encoder = j["encoder"].get<EncoderConfig>();
  try {
    config.train.relation_threshold =
        j.value("threshold_relation", config.train.relation_threshold);
    config.train.attribute_threshold =
        j.value("threshold_attribute", config.train.attribute_threshold);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  ValidateTrainConfig(config.train);
  return config;
}

std::vector<Sentence> LoadSentences(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<Sentence> out;
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_array()) {
    try {
      for (std::size_t i = 0; i < j.size(); ++i) {
        Sentence s;
        s.id = j[i].value("id", "s" + std::to_string(i));
        s.tokens = j[i].at("tokens").get<std::vector<std::string>>();
        s.lemmas = j[i].value("lemmas", std::vector<std::string>{});
        out.push_back(std::move(s));
      }
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kParseError, ex.what());
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    Sentence s;
    std::string w;
    while (words >> w) s.tokens.push_back(w);
    if (s.tokens.empty()) continue;
    s.id = "s" + std::to_string(out.size());
    out.push_back(std::move(s));
  }
  return out;
}

Model LoadModel(const std::filesystem::path& path) {
  return ModelFromJson(ReadJsonFile(path));
}

}  // namespace causalkg
