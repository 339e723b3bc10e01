// Copyright 2026 The copysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "copysim/error.hpp"

namespace copysim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kDuplicateLabel: return "DuplicateLabel";
    case ErrorKind::kInvalidLayout: return "InvalidLayout";
    case ErrorKind::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::kZeroNorm: return "ZeroNorm";
    case ErrorKind::kWrongAmplitudeCount: return "WrongAmplitudeCount";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kInvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorKind::kEmptySubsystemSet: return "EmptySubsystemSet";
    case ErrorKind::kLayoutMismatch: return "LayoutMismatch";
    case ErrorKind::kNonBijectivePermutation: return "NonBijectivePermutation";
    case ErrorKind::kTargetNotPrepared: return "TargetNotPrepared";
    case ErrorKind::kEscapedSubsystem: return "EscapedSubsystem";
    case ErrorKind::kNonSuffixErasure: return "NonSuffixErasure";
    case ErrorKind::kUnknownRecord: return "UnknownRecord";
    case ErrorKind::kAllZeroProbabilities: return "AllZeroProbabilities";
    case ErrorKind::kDegenerateSource: return "DegenerateSource";
    case ErrorKind::kUnsupportedBasis: return "UnsupportedBasis";
    case ErrorKind::kInconsistentKnowledge: return "InconsistentKnowledge";
    case ErrorKind::kInvalidObserver: return "InvalidObserver";
    case ErrorKind::kInvalidDistribution: return "InvalidDistribution";
    case ErrorKind::kOverlappingPartitions: return "OverlappingPartitions";
    case ErrorKind::kCorpusTooShort: return "CorpusTooShort";
    case ErrorKind::kSymbolNotInAlphabet: return "SymbolNotInAlphabet";
    case ErrorKind::kInvalidEncoding: return "InvalidEncoding";
    case ErrorKind::kSyntax: return "Syntax";
  }
  return "Unknown";
}

}  // namespace copysim
