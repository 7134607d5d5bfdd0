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

#include "causalkg/encoder.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "causalkg/error.h"

namespace causalkg {
namespace {

std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void Normalize(Vector& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
}

}  // namespace

void ValidateEncoderConfig(const EncoderConfig& config) {
  if (config.dimension < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "encoder dimension must be >= 2, got " +
                    std::to_string(config.dimension));
  }
  if (config.context_window < 0) {
    throw Error(ErrorCode::kInvalidConfig, "negative context window");
  }
  if (config.kind == EncoderKind::kFile && config.embedding_path.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "file encoder needs an embedding path");
  }
}

void to_json(nlohmann::json& j, const EncoderConfig& config) {
  j = nlohmann::json{
      {"kind", config.kind == EncoderKind::kFile ? "file" : "synthetic"},
      {"dimension", config.dimension},
      {"seed", config.seed},
      {"context_window", config.context_window},
      {"embedding_path", config.embedding_path}};
}

void from_json(const nlohmann::json& j, EncoderConfig& config) {
  EncoderConfig c;
  try {
    const std::string kind = j.value("kind", "synthetic");
    if (kind == "synthetic") {
      c.kind = EncoderKind::kSynthetic;
    } else if (kind == "file") {
      c.kind = EncoderKind::kFile;
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown encoder kind " + kind);
    }
    c.dimension = j.value("dimension", c.dimension);
    c.seed = j.value("seed", c.seed);
    c.context_window = j.value("context_window", c.context_window);
    c.embedding_path = j.value("embedding_path", c.embedding_path);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  ValidateEncoderConfig(c);
  config = c;
}

Vector HashedUnitVector(std::string_view token, std::uint64_t seed,
                        int dimension) {
  std::uint64_t state = seed ^ Fnv1a64(token);
  Vector v(dimension);
  for (double& x : v) {
    const double unit = static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53;
    x = 2.0 * unit - 1.0;
  }
  Normalize(v);
  return v;
}

std::map<std::string, Vector> ParseEmbeddingTable(std::string_view text,
                                                  int dimension) {
  std::map<std::string, Vector> table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    Vector v;
    double x;
    while (fields >> x) v.push_back(x);
    if (!fields.eof() || static_cast<int>(v.size()) != dimension) {
      throw Error(ErrorCode::kParseError,
                  "embedding line " + std::to_string(line_number) +
                      ": expected " + std::to_string(dimension) +
                      " floats for '" + token + "'");
    }
    for (double value : v) {
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::kParseError,
                    "non-finite value on line " + std::to_string(line_number));
      }
    }
    table[token] = std::move(v);
  }
  return table;
}

Encoder::Encoder(EncoderConfig config) : config_(std::move(config)) {
  ValidateEncoderConfig(config_);
  if (config_.kind == EncoderKind::kFile) {
    std::ifstream in(config_.embedding_path);
    if (!in) {
      throw Error(ErrorCode::kIoError,
                  "cannot read embeddings " + config_.embedding_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    table_ = std::make_shared<const std::map<std::string, Vector>>(
        ParseEmbeddingTable(buffer.str(), config_.dimension));
  }
}

TokenEncoding Encoder::Encode(std::span<const std::string> tokens) const {
  if (tokens.empty()) throw Error(ErrorCode::kEmptyInput, "no tokens");
  const int n = static_cast<int>(tokens.size());
  const int d = config_.dimension;
  TokenEncoding out;
  out.tokens.reserve(n);

  if (config_.kind == EncoderKind::kFile) {
    for (const std::string& t : tokens) {
      auto it = table_->find(t);
      if (it == table_->end()) {
        throw Error(ErrorCode::kOutOfVocabulary, "'" + t + "'");
      }
      out.tokens.push_back(it->second);
    }
  } else {
    std::vector<Vector> base;
    base.reserve(n);
    for (const std::string& t : tokens) {
      base.push_back(HashedUnitVector(t, config_.seed, d));
    }
    const int w = config_.context_window;
    for (int i = 0; i < n; ++i) {
      Vector v(d, 0.0);
      for (int j = std::max(0, i - w); j <= std::min(n - 1, i + w); ++j) {
        const double weight = std::ldexp(1.0, -std::abs(i - j));
        for (int k = 0; k < d; ++k) v[k] += weight * base[j][k];
      }
      Normalize(v);
      out.tokens.push_back(std::move(v));
    }
  }

  out.passage.assign(d, 0.0);
  for (const Vector& v : out.tokens) {
    for (int k = 0; k < d; ++k) out.passage[k] += v[k];
  }
  for (double& x : out.passage) x /= n;
  return out;
}

TokenEncoding EncodeTokens(std::span<const std::string> tokens,
                           const EncoderConfig& config) {
  return Encoder(config).Encode(tokens);
}

}  // namespace causalkg
