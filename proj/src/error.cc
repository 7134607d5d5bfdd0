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

#include "causalkg/error.h"

namespace causalkg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateSpanType: return "DuplicateSpanType";
    case ErrorCode::kDuplicateElement: return "DuplicateElement";
    case ErrorCode::kBadConfidence: return "BadConfidence";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kInvalidSpan: return "InvalidSpan";
    case ErrorCode::kDuplicateProvenance: return "DuplicateProvenance";
    case ErrorCode::kUnknownTypeReference: return "UnknownTypeReference";
    case ErrorCode::kUnknownType: return "UnknownType";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kOutOfVocabulary: return "OutOfVocabulary";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kAlignmentError: return "AlignmentError";
    case ErrorCode::kNonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDisjointTrees: return "DisjointTrees";
    case ErrorCode::kUnknownSense: return "UnknownSense";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace causalkg
