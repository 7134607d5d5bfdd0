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

#ifndef CAUSALKG_DOT_H_
#define CAUSALKG_DOT_H_

#include <string>

#include "causalkg/graph.h"
#include "causalkg/schema.h"

namespace causalkg {

// Graphviz digraph for one sentence graph. Nodes show the span text with the
// attribute list in parentheses; causal relation types are drawn bold.
std::string EmitDot(const KnowledgeGraph& graph, const Schema& schema);

// Quoted DOT identifier with backslashes, quotes and newlines escaped.
std::string DotQuote(const std::string& text);

}  // namespace causalkg

#endif  // CAUSALKG_DOT_H_
