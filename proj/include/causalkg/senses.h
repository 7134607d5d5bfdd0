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

#ifndef CAUSALKG_SENSES_H_
#define CAUSALKG_SENSES_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalkg/encoder.h"
#include "causalkg/graph.h"

namespace causalkg {

struct Sense {
  std::string id;
  std::string lemma;
  std::string gloss;
  std::optional<std::string> parent;
  Vector vector;  // unit norm
};

// A taxonomy of word senses. Parent links must form a forest.
class SenseInventory {
 public:
  // Normalizes every vector. Throws kParseError on repeated ids, unknown
  // parents, cycles, ragged dimensions, or zero vectors.
  SenseInventory(std::vector<Sense> senses, std::set<std::string> skip_lemmas);

  const std::vector<Sense>& senses() const { return senses_; }
  const std::set<std::string>& skip_lemmas() const { return skip_lemmas_; }
  int dimension() const { return dimension_; }

  // Throws kUnknownSense.
  const Sense& Get(const std::string& id) const;
  // Root first; the sense itself last.
  std::vector<std::string> PathFromRoot(const std::string& id) const;

 private:
  std::vector<Sense> senses_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> skip_lemmas_;
  int dimension_ = 0;
};

// Inventory file: tab-separated sense_id, lemma, parent id or "-", then the
// vector components. Optional gloss file: sense_id TAB gloss. Optional skip
// file: one lemma per line.
SenseInventory ParseSenseInventory(std::string_view records,
                                   std::string_view glosses = {},
                                   std::string_view skip_lemmas = {});

// Mean of the span's token vectors, unit-normalized. Throws kZeroVector.
Vector NodeVector(const Entity& node, std::span<const Vector> token_vectors);

// Every sense with its dot product against `node_vector`, descending; ties
// broken by sense id.
std::vector<SenseScore> RankSenses(std::span<const double> node_vector,
                                   const SenseInventory& inventory);

inline constexpr double kDefaultSenseThreshold = 0.5;

// Fills each entity's senses with those scoring strictly above the
// threshold. Nodes whose lemmas are all on the skip list get none. Throws
// kDimensionMismatch.
KnowledgeGraph LinkSenses(const KnowledgeGraph& graph,
                          std::span<const Vector> token_vectors,
                          const SenseInventory& inventory,
                          double threshold = kDefaultSenseThreshold);

// 2 depth(lca) / (depth(a) + depth(b)) with depth(root) = 1. Throws
// kDisjointTrees or kUnknownSense.
double LcaSimilarity(const std::string& a, const std::string& b,
                     const SenseInventory& inventory);

}  // namespace causalkg

#endif  // CAUSALKG_SENSES_H_
