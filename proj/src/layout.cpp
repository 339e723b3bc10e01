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

#include "copysim/layout.hpp"

#include <algorithm>
#include <set>

#include "copysim/error.hpp"

namespace copysim {

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorKind::kInvalidLayout, "layout must declare at least one subsystem");
  }
  std::set<std::string> seen;
  for (auto& e : entries_) {
    if (e.label.empty()) {
      throw Error(ErrorKind::kInvalidLayout, "subsystem label must be nonempty");
    }
    if (!seen.insert(e.label).second) {
      throw Error(ErrorKind::kDuplicateLabel, "duplicate subsystem label '" + e.label + "'");
    }
    if (e.dim < 2) {
      throw Error(ErrorKind::kInvalidLayout,
                  "subsystem '" + e.label + "' must have dim >= 2");
    }
    if (e.basis.empty()) {
      for (std::size_t i = 0; i < e.dim; ++i) e.basis.push_back(std::to_string(i));
    }
    if (e.basis.size() != e.dim) {
      throw Error(ErrorKind::kInvalidLayout,
                  "subsystem '" + e.label + "' declares " + std::to_string(e.basis.size()) +
                      " basis labels for dim " + std::to_string(e.dim));
    }
    std::set<std::string> names(e.basis.begin(), e.basis.end());
    if (names.size() != e.basis.size()) {
      throw Error(ErrorKind::kDuplicateLabel,
                  "subsystem '" + e.label + "' has repeated basis labels");
    }
    if (total_dim_ > kMaxTotalDim / e.dim) {
      throw Error(ErrorKind::kDimensionTooLarge, "total dimension exceeds 2^20");
    }
    total_dim_ *= e.dim;
  }
  strides_.assign(entries_.size(), 1);
  for (std::size_t i = entries_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * entries_[i].dim;
  }
}

SubsystemLayout SubsystemLayout::qubits(std::span<const std::string> labels) {
  std::vector<Subsystem> entries;
  for (const auto& l : labels) entries.push_back({l, 2, {}});
  return SubsystemLayout(std::move(entries));
}

SubsystemLayout SubsystemLayout::qubits(std::initializer_list<std::string> labels) {
  return qubits(std::span<const std::string>(labels.begin(), labels.size()));
}

bool SubsystemLayout::contains(std::string_view label) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Subsystem& e) { return e.label == label; });
}

std::size_t SubsystemLayout::position(std::string_view label) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].label == label) return i;
  }
  throw Error(ErrorKind::kUnknownLabel, "unknown subsystem label '" + std::string(label) + "'");
}

std::vector<std::size_t> SubsystemLayout::positions(std::span<const std::string> labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    std::size_t p = position(l);
    if (std::find(out.begin(), out.end(), p) != out.end()) {
      throw Error(ErrorKind::kDuplicateLabel, "subsystem '" + l + "' listed twice");
    }
    out.push_back(p);
  }
  return out;
}

std::size_t SubsystemLayout::basis_index(std::string_view label,
                                         std::string_view basis_label) const {
  const Subsystem& e = entries_[position(label)];
  for (std::size_t i = 0; i < e.basis.size(); ++i) {
    if (e.basis[i] == basis_label) return i;
  }
  if (basis_label == "pm") return 0;
  if (basis_label == "um" && e.dim == 2) return 1;
  throw Error(ErrorKind::kUnknownLabel, "subsystem '" + e.label + "' has no basis state '" +
                                            std::string(basis_label) + "'");
}

SubsystemLayout SubsystemLayout::subset(std::span<const std::string> labels) const {
  if (labels.empty()) {
    throw Error(ErrorKind::kEmptySubsystemSet, "subsystem set must be nonempty");
  }
  auto pos = positions(labels);
  std::sort(pos.begin(), pos.end());
  std::vector<Subsystem> entries;
  for (auto p : pos) entries.push_back(entries_[p]);
  return SubsystemLayout(std::move(entries));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Subsystem> entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return SubsystemLayout(std::move(entries));
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.label);
  return out;
}

std::vector<std::size_t> SubsystemLayout::digits(std::size_t index) const {
  std::vector<std::size_t> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out[i] = (index / strides_[i]) % entries_[i].dim;
  }
  return out;
}

std::size_t SubsystemLayout::flat_index(std::span<const std::size_t> digits) const {
  if (digits.size() != entries_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "digit count does not match layout");
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= entries_[i].dim) {
      throw Error(ErrorKind::kDimensionMismatch, "digit out of range for '" + entries_[i].label + "'");
    }
    k += digits[i] * strides_[i];
  }
  return k;
}

}  // namespace copysim
