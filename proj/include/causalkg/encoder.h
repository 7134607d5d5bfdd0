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

#ifndef CAUSALKG_ENCODER_H_
#define CAUSALKG_ENCODER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace causalkg {

using Vector = std::vector<double>;

enum class EncoderKind { kSynthetic, kFile };

struct EncoderConfig {
  EncoderKind kind = EncoderKind::kSynthetic;
  int dimension = 64;
  std::uint64_t seed = 0;
  int context_window = 1;
  std::string embedding_path;

  bool operator==(const EncoderConfig&) const = default;
};

void ValidateEncoderConfig(const EncoderConfig& config);
void to_json(nlohmann::json& j, const EncoderConfig& config);
void from_json(const nlohmann::json& j, EncoderConfig& config);

// Passage vector plus one contextual vector per token, all of the encoder's
// dimension.
struct TokenEncoding {
  Vector passage;
  std::vector<Vector> tokens;

  bool operator==(const TokenEncoding&) const = default;
};

// Deterministic unit vector for a token: FNV-1a of the token bytes, xor-ed
// with the seed, drives a splitmix64 stream whose outputs map to [-1, 1).
Vector HashedUnitVector(std::string_view token, std::uint64_t seed,
                        int dimension);

// Frozen token encoder. The synthetic kind mixes each hashed token vector
// with its neighbours inside the context window (weight 2^-|offset|) and
// renormalizes; the file kind looks vectors up in an embedding table. In both
// cases the passage vector is the mean of the token vectors.
class Encoder {
 public:
  explicit Encoder(EncoderConfig config);

  const EncoderConfig& config() const { return config_; }
  int dimension() const { return config_.dimension; }

  // Throws kEmptyInput, or kOutOfVocabulary for the file kind.
  TokenEncoding Encode(std::span<const std::string> tokens) const;

 private:
  EncoderConfig config_;
  std::shared_ptr<const std::map<std::string, Vector>> table_;
};

TokenEncoding EncodeTokens(std::span<const std::string> tokens,
                           const EncoderConfig& config);

// Embedding table parser: one record per line, the token followed by
// `dimension` whitespace-separated floats. Throws kParseError.
std::map<std::string, Vector> ParseEmbeddingTable(std::string_view text,
                                                  int dimension);

}  // namespace causalkg

#endif  // CAUSALKG_ENCODER_H_
