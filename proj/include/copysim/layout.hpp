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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace copysim {

/// Largest total Hilbert-space dimension a layout may declare (2^20).
inline constexpr std::size_t kMaxTotalDim = std::size_t{1} << 20;

/// One labeled finite-dimensional subsystem and its states-symbols.
struct Subsystem {
  std::string label;
  std::size_t dim = 2;
  std::vector<std::string> basis;  // empty means "0", "1", ..., "d-1"

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered tensor-product layout.
///
/// Amplitude index k is the mixed-radix number whose digits are the basis
/// indices of the subsystems, the first-listed subsystem being the most
/// significant digit. For layout {A:2, B:3}, k = 3 * a + b.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Subsystem> entries);

  /// Convenience: every label is a two-level system with basis {0, 1}.
  static SubsystemLayout qubits(std::span<const std::string> labels);
  static SubsystemLayout qubits(std::initializer_list<std::string> labels);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Subsystem>& entries() const { return entries_; }
  const Subsystem& entry(std::size_t position) const { return entries_.at(position); }

  bool contains(std::string_view label) const;
  std::size_t position(std::string_view label) const;  // throws kUnknownLabel
  std::size_t dim(std::string_view label) const { return entries_[position(label)].dim; }
  std::size_t dim_at(std::size_t position) const { return entries_[position].dim; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t stride(std::size_t position) const { return strides_[position]; }

  /// Positions of `labels` in the given order; rejects unknown and repeated labels.
  std::vector<std::size_t> positions(std::span<const std::string> labels) const;

  /// Basis index of `basis_label` on `label`. Besides the declared labels,
  /// "pm" names index 0 and "um" names index 1 of a two-level subsystem,
  /// unless the subsystem declares those names itself.
  std::size_t basis_index(std::string_view label, std::string_view basis_label) const;

  /// Sub-layout of `labels`, kept in this layout's order.
  SubsystemLayout subset(std::span<const std::string> labels) const;

  /// Concatenation; labels must be disjoint.
  SubsystemLayout concat(const SubsystemLayout& other) const;

  std::vector<std::string> labels() const;

  /// Digits of a flat index, one per subsystem.
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t flat_index(std::span<const std::size_t> digits) const;

  friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Subsystem> entries_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

}  // namespace copysim
