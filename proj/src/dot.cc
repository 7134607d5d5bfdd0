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

#include "causalkg/dot.h"

namespace causalkg {
namespace {

constexpr const char* kPalette[] = {
    "#1F78B4", "#33A02C", "#E31A1C", "#FF7F00",
    "#6A3D9A", "#B15928", "#A6CEE3", "#B2DF8A",
};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(*kPalette);

}  // namespace

std::string DotQuote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string EmitDot(const KnowledgeGraph& graph, const Schema& schema) {
  std::string out = "digraph kg {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=box, style=rounded];\n";
  for (const Entity& e : graph.entities) {
    std::string label = graph.SpanText(e.span);
    if (!e.attributes.empty()) {
      label += "\n(";
      for (std::size_t i = 0; i < e.attributes.size(); ++i) {
        if (i > 0) label += ", ";
        label += e.attributes[i].type;
      }
      label += ")";
    }
    const int type_index = schema.EntityIndex(e.type);
    const char* color =
        type_index < 0 ? "black" : kPalette[type_index % kPaletteSize];
    out += "  " + DotQuote(e.id) + " [label=" + DotQuote(label) +
           ", tooltip=" + DotQuote(e.type) + ", color=" + DotQuote(color) +
           "];\n";
  }
  for (const Relation& r : graph.relations) {
    const bool causal = schema.IsCausal(r.type);
    out += "  " + DotQuote(r.head) + " -> " + DotQuote(r.tail) +
           " [label=" + DotQuote(r.type) +
           (causal ? ", style=bold, penwidth=2" : ", style=solid, penwidth=1") +
           "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace causalkg
