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

#include "copysim/copier.hpp"

#include <algorithm>
#include <set>

namespace copysim {
namespace {

std::vector<std::size_t> source_symbol_order(const CopierSpec& spec, const SubsystemLayout& layout) {
  const std::size_t d = layout.dim(spec.source);
  std::vector<std::size_t> index_of_symbol(d);
  if (spec.source_basis.empty()) {
    for (std::size_t i = 0; i < d; ++i) index_of_symbol[i] = i;
    return index_of_symbol;
  }
  if (spec.source_basis.size() != d) {
    throw Error(ErrorKind::kDimensionMismatch,
                "copier source basis lists " + std::to_string(spec.source_basis.size()) +
                    " symbols for a " + std::to_string(d) + "-level source");
  }
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < d; ++i) {
    index_of_symbol[i] = layout.basis_index(spec.source, spec.source_basis[i]);
    if (!seen.insert(index_of_symbol[i]).second) {
      throw Error(ErrorKind::kNonBijectivePermutation, "copier source basis repeats a symbol");
    }
  }
  return index_of_symbol;
}

bool touches(const CopyRecord& r, const std::set<std::string>& labels) {
  return labels.count(r.source) > 0 || labels.count(r.target) > 0;
}

}  // namespace

UnitaryOp build_copier(const CopierSpec& spec, const SubsystemLayout& layout) {
  if (spec.source == spec.target) {
    throw Error(ErrorKind::kDuplicateLabel, "copier source and target must differ");
  }
  const std::size_t d = layout.dim(spec.source);
  if (layout.dim(spec.target) != d) {
    throw Error(ErrorKind::kDimensionMismatch, "copier needs equal dimensions, got " +
                                                   std::to_string(d) + " and " +
                                                   std::to_string(layout.dim(spec.target)));
  }
  if (spec.target_pm_index >= d) {
    throw Error(ErrorKind::kDimensionMismatch, "pure-medium index out of range");
  }
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  if (spec.permutation) {
    perm = *spec.permutation;
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    bool bijective = sorted.size() == d;
    for (std::size_t i = 0; bijective && i < d; ++i) bijective = sorted[i] == i;
    if (!bijective) {
      throw Error(ErrorKind::kNonBijectivePermutation,
                  "copier permutation is not a bijection on 0.." + std::to_string(d - 1));
    }
  }
  const auto index_of_symbol = source_symbol_order(spec, layout);
  std::vector<std::size_t> symbol_of_index(d);
  for (std::size_t i = 0; i < d; ++i) symbol_of_index[index_of_symbol[i]] = i;

  const auto side = static_cast<Eigen::Index>(d * d);
  CMatrix<double> m = CMatrix<double>::Zero(side, side);
  for (std::size_t a = 0; a < d; ++a) {
    const std::size_t symbol = symbol_of_index[a];
    for (std::size_t t = 0; t < d; ++t) {
      const std::size_t relative = (t + d - spec.target_pm_index) % d;
      const std::size_t out_a = index_of_symbol[perm[symbol]];
      const std::size_t out_t = (symbol + relative) % d;
      m(static_cast<Eigen::Index>(out_a * d + out_t), static_cast<Eigen::Index>(a * d + t)) = 1.0;
    }
  }
  return UnitaryOp({spec.source, spec.target}, std::move(m));
}

CopyResult apply_copy(const StateVector& state, const CopierSpec& spec, CopyLog log) {
  const UnitaryOp op = build_copier(spec, state.layout());
  const double p_pm = basis_probability(state, spec.target, spec.target_pm_index);
  CopyRecord record;
  record.seq = log.next_seq++;
  record.source = spec.source;
  record.target = spec.target;
  record.spec = spec;
  if (p_pm >= 1.0 - kTolerance) {
    record.medium = MediumCondition::kPure;
  } else if (p_pm <= kTolerance) {
    record.medium = MediumCondition::kUnprepared;
  } else {
    record.medium = MediumCondition::kPartial;
  }
  log.records.push_back(std::move(record));
  return {apply_unitary(state, op), std::move(log)};
}

CopyResult multi_copy(const StateVector& state, const std::string& source,
                      std::span<const std::string> targets, ChainMode mode, CopyLog log) {
  state.layout().position(source);
  for (const auto& t : targets) {
    if (t == source) {
      throw Error(ErrorKind::kDuplicateLabel, "multi-copy target equals source '" + t + "'");
    }
    const double p_pm = basis_probability(state, t, 0);
    if (p_pm < 1.0 - kTolerance) {
      throw Error(ErrorKind::kTargetNotPrepared,
                  "multi-copy target '" + t + "' is not in its pure-medium state (P=" +
                      std::to_string(p_pm) + ")");
    }
  }
  CopyResult result{state, std::move(log)};
  std::string from = source;
  for (const auto& t : targets) {
    CopierSpec spec;
    spec.source = from;
    spec.target = t;
    result = apply_copy(result.state, spec, std::move(result.log));
    if (mode == ChainMode::kChained) from = t;
  }
  return result;
}

CopyLog mark_escaped(CopyLog log, const std::string& label) {
  for (auto& r : log.records) {
    if (r.source == label || r.target == label) r.escaped = true;
  }
  return log;
}

CopyResult erase_copies(const StateVector& state, CopyLog log, std::span<const std::uint64_t> which) {
  if (which.empty()) return {state, std::move(log)};
  std::set<std::uint64_t> selected(which.begin(), which.end());
  std::set<std::string> involved;
  for (const auto seq : selected) {
    auto it = std::find_if(log.records.begin(), log.records.end(),
                           [&](const CopyRecord& r) { return r.seq == seq; });
    if (it == log.records.end()) {
      throw Error(ErrorKind::kUnknownRecord, "no copy record with seq " + std::to_string(seq));
    }
    if (it->escaped) {
      throw Error(ErrorKind::kEscapedSubsystem,
                  "copy #" + std::to_string(seq) + " (" + it->source + " -> " + it->target +
                      ") involves a subsystem that escaped; it cannot be revoked locally");
    }
    involved.insert(it->source);
    involved.insert(it->target);
  }
  std::vector<const CopyRecord*> related;
  for (const auto& r : log.records) {
    if (touches(r, involved)) related.push_back(&r);
  }
  const std::size_t n = selected.size();
  for (std::size_t i = 0; i < related.size(); ++i) {
    const bool in_suffix = i + n >= related.size();
    if (in_suffix != (selected.count(related[i]->seq) > 0)) {
      throw Error(ErrorKind::kNonSuffixErasure,
                  "erasure must undo the most recent copies first (copy #" +
                      std::to_string(related[i]->seq) + " is out of order)");
    }
  }
  StateVector current = state;
  for (auto it = log.records.rbegin(); it != log.records.rend(); ++it) {
    if (selected.count(it->seq) == 0) continue;
    current = apply_unitary(current, build_copier(it->spec, current.layout()).inverse());
  }
  std::erase_if(log.records, [&](const CopyRecord& r) { return selected.count(r.seq) > 0; });
  return {std::move(current), std::move(log)};
}

CopyResult erase_all(const StateVector& state, CopyLog log) {
  std::vector<std::uint64_t> seqs;
  for (const auto& r : log.records) seqs.push_back(r.seq);
  return erase_copies(state, std::move(log), seqs);
}

}  // namespace copysim
