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

#include "causalkg/senses.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "causalkg/error.h"

namespace causalkg {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t from = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', from);
    out.push_back(line.substr(from, tab - from));
    if (tab == std::string::npos) break;
    from = tab + 1;
  }
  return out;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

}  // namespace

SenseInventory::SenseInventory(std::vector<Sense> senses,
                               std::set<std::string> skip_lemmas)
    : senses_(std::move(senses)), skip_lemmas_(std::move(skip_lemmas)) {
  for (std::size_t i = 0; i < senses_.size(); ++i) {
    Sense& s = senses_[i];
    if (!index_.emplace(s.id, i).second) {
      throw Error(ErrorCode::kParseError, "repeated sense id " + s.id);
    }
    if (i == 0) dimension_ = static_cast<int>(s.vector.size());
    if (static_cast<int>(s.vector.size()) != dimension_ || dimension_ == 0) {
      throw Error(ErrorCode::kParseError, "sense " + s.id + " has dimension " +
                                              std::to_string(s.vector.size()));
    }
    const double norm = std::sqrt(Dot(s.vector, s.vector));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw Error(ErrorCode::kParseError, "sense " + s.id + " has zero vector");
    }
    for (double& x : s.vector) x /= norm;
  }
  for (const Sense& s : senses_) {
    if (s.parent && !index_.count(*s.parent)) {
      throw Error(ErrorCode::kParseError,
                  "sense " + s.id + " has unknown parent " + *s.parent);
    }
  }
  // A parent chain longer than the inventory means a cycle.
  for (const Sense& s : senses_) {
    const Sense* cur = &s;
    std::size_t steps = 0;
    while (cur->parent) {
      if (++steps > senses_.size()) {
        throw Error(ErrorCode::kParseError, "cycle through sense " + s.id);
      }
      cur = &senses_[index_.at(*cur->parent)];
    }
  }
}

const Sense& SenseInventory::Get(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownSense, id);
  return senses_[it->second];
}

std::vector<std::string> SenseInventory::PathFromRoot(
    const std::string& id) const {
  std::vector<std::string> path;
  for (const Sense* cur = &Get(id);;
       cur = &senses_[index_.at(*cur->parent)]) {
    path.push_back(cur->id);
    if (!cur->parent) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

SenseInventory ParseSenseInventory(std::string_view records,
                                   std::string_view glosses,
                                   std::string_view skip_lemmas) {
  std::map<std::string, std::string> gloss_by_id;
  {
    std::istringstream in{std::string(glosses)};
    std::string line;
    while (std::getline(in, line)) {
      if (Trim(line).empty()) continue;
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        throw Error(ErrorCode::kParseError, "gloss line without tab: " + line);
      }
      gloss_by_id[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }

  std::vector<Sense> senses;
  std::istringstream in{std::string(records)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() < 4) {
      throw Error(ErrorCode::kParseError,
                  "inventory line " + std::to_string(line_number) +
                      " needs id, lemma, parent and a vector");
    }
    Sense s;
    s.id = fields[0];
    s.lemma = fields[1];
    if (fields[2] != "-") s.parent = fields[2];
    for (std::size_t k = 3; k < fields.size(); ++k) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(fields[k], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != fields[k].size() || !std::isfinite(x)) {
        throw Error(ErrorCode::kParseError,
                    "inventory line " + std::to_string(line_number) +
                        ": bad number '" + fields[k] + "'");
      }
      s.vector.push_back(x);
    }
    if (auto it = gloss_by_id.find(s.id); it != gloss_by_id.end()) {
      s.gloss = it->second;
    }
    senses.push_back(std::move(s));
  }

  std::set<std::string> skip;
  std::istringstream skip_in{std::string(skip_lemmas)};
  while (std::getline(skip_in, line)) {
    line = Trim(line);
    if (!line.empty()) skip.insert(line);
  }
  return SenseInventory(std::move(senses), std::move(skip));
}

Vector NodeVector(const Entity& node, std::span<const Vector> token_vectors) {
  if (node.span.start < 0 || node.span.end > static_cast<int>(token_vectors.size()) ||
      node.span.length() < 1) {
    throw Error(ErrorCode::kInvalidSpan, "node " + node.id);
  }
  const std::size_t d = token_vectors[node.span.start].size();
  Vector mean(d, 0.0);
  for (int t = node.span.start; t < node.span.end; ++t) {
    for (std::size_t k = 0; k < d; ++k) mean[k] += token_vectors[t][k];
  }
  for (double& x : mean) x /= node.span.length();
  const double norm = std::sqrt(Dot(mean, mean));
  if (!(norm > 0.0)) throw Error(ErrorCode::kZeroVector, "node " + node.id);
  for (double& x : mean) x /= norm;
  return mean;
}

std::vector<SenseScore> RankSenses(std::span<const double> node_vector,
                                   const SenseInventory& inventory) {
  if (static_cast<int>(node_vector.size()) != inventory.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "node dimension " + std::to_string(node_vector.size()) +
                    " vs inventory " + std::to_string(inventory.dimension()));
  }
  std::vector<SenseScore> ranked;
  ranked.reserve(inventory.senses().size());
  for (const Sense& s : inventory.senses()) {
    ranked.push_back({s.id, std::min(1.0, Dot(node_vector, s.vector))});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const SenseScore& a, const SenseScore& b) {
              if (a.confidence != b.confidence) {
                return a.confidence > b.confidence;
              }
              return a.sense < b.sense;
            });
  return ranked;
}

KnowledgeGraph LinkSenses(const KnowledgeGraph& graph,
                          std::span<const Vector> token_vectors,
                          const SenseInventory& inventory, double threshold) {
  if (token_vectors.size() != graph.tokens.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "token vectors do not match graph tokens");
  }
  KnowledgeGraph out = graph;
  for (Entity& e : out.entities) {
    e.senses.clear();
    const std::set<std::string> lemmas = graph.SpanLemmas(e.span);
    const bool skipped = std::all_of(
        lemmas.begin(), lemmas.end(),
        [&](const std::string& l) { return inventory.skip_lemmas().count(l); });
    if (skipped) continue;
    for (const SenseScore& s : RankSenses(NodeVector(e, token_vectors),
                                          inventory)) {
      if (s.confidence <= threshold) break;
      e.senses.push_back(s);
    }
  }
  return out;
}

double LcaSimilarity(const std::string& a, const std::string& b,
                     const SenseInventory& inventory) {
  const std::vector<std::string> pa = inventory.PathFromRoot(a);
  const std::vector<std::string> pb = inventory.PathFromRoot(b);
  std::size_t common = 0;
  while (common < pa.size() && common < pb.size() && pa[common] == pb[common]) {
    ++common;
  }
  if (common == 0) {
    throw Error(ErrorCode::kDisjointTrees, a + " and " + b);
  }
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(pa.size() + pb.size());
}

}  // namespace causalkg
