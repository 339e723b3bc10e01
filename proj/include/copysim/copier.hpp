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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "copysim/qstate.hpp"

namespace copysim {

/// Parameters of an information copier from `source` to `target`.
///
/// Symbol i of the source is copied to basis state i of the target. The
/// target's "pure medium" is its basis index `target_pm_index`; a target
/// starting at index j (relative to the pure medium) ends in (i + j) mod d.
struct CopierSpec {
  std::string source;
  std::string target;
  /// States-symbols of the source in symbol order. Empty means the source's
  /// declared basis order; otherwise a reordering of those labels.
  std::vector<std::string> source_basis;
  std::size_t target_pm_index = 0;
  /// Optional relabeling i -> i' of the source symbol during the copy.
  std::optional<std::vector<std::size_t>> permutation;
};

/// Condition of the target medium just before a copy.
enum class MediumCondition {
  kPure,        // entirely in the pure-medium state
  kUnprepared,  // no weight on the pure-medium state: the record is convention-inverted
  kPartial,     // some superposition of the two
};

struct CopyRecord {
  std::uint64_t seq = 0;
  std::string source;
  std::string target;
  CopierSpec spec;
  bool escaped = false;
  MediumCondition medium = MediumCondition::kPure;

  bool convention_inverted() const { return medium == MediumCondition::kUnprepared; }
};

/// Ordered provenance of copies performed in one run. Sequence numbers keep
/// increasing after erasures, so a record is never confused with a later one.
struct CopyLog {
  std::vector<CopyRecord> records;
  std::uint64_t next_seq = 1;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

struct CopyResult {
  StateVector state;
  CopyLog log;
};

enum class ChainMode { kFromSource, kChained };

UnitaryOp build_copier(const CopierSpec& spec, const SubsystemLayout& layout);

CopyResult apply_copy(const StateVector& state, const CopierSpec& spec, CopyLog log = {});

/// Copies `source` into every target in order. In chained mode each target
/// copies from the previous one. Every target must start in its pure medium.
CopyResult multi_copy(const StateVector& state, const std::string& source,
                      std::span<const std::string> targets, ChainMode mode, CopyLog log = {});

/// Marks every record touching `label` as escaped (monotone).
CopyLog mark_escaped(CopyLog log, const std::string& label);

/// Undoes the records with the given sequence numbers, newest first.
///
/// The selection must be the most recent records among all records that touch
/// the subsystems involved in the selection, otherwise kNonSuffixErasure. Any
/// escaped record in the selection raises kEscapedSubsystem.
CopyResult erase_copies(const StateVector& state, CopyLog log, std::span<const std::uint64_t> which);

/// Undoes every record in the log.
CopyResult erase_all(const StateVector& state, CopyLog log);

}  // namespace copysim
