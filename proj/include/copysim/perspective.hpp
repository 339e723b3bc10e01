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

#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "copysim/qstate.hpp"

namespace copysim {

/// What one observer holds: the subsystems it has records of, and the
/// symbol-basis outcomes it has already read from some of them.
class Observer {
 public:
  Observer(std::string name, std::set<std::string> known_labels,
           std::map<std::string, std::size_t> known_outcomes);

  /// An observer that read `outcomes` from exactly those records.
  static Observer reading(std::string name, std::map<std::string, std::size_t> outcomes);

  const std::string& name() const { return name_; }
  const std::set<std::string>& known_labels() const { return known_labels_; }
  const std::map<std::string, std::size_t>& known_outcomes() const { return known_outcomes_; }

 private:
  std::string name_;
  std::set<std::string> known_labels_;
  std::map<std::string, std::size_t> known_outcomes_;
};

/// The global state conditioned on everything the observer has read.
/// kInconsistentKnowledge if those outcomes have zero joint probability.
StateVector condition_on(const StateVector& global, const Observer& obs);

/// The observer's description of the subsystems in `about`: condition on the
/// observer's read outcomes, then trace out everything outside `about`.
DensityMatrix perspective_state(const StateVector& global, const Observer& obs,
                                std::span<const std::string> about);

inline DensityMatrix perspective_state(const StateVector& global, const Observer& obs,
                                       std::initializer_list<std::string> about) {
  return perspective_state(global, obs, std::span<const std::string>(about.begin(), about.size()));
}

/// True iff some symbol-basis outcome of `about` is possible for every
/// observer. An observer whose own records are contradictory makes the set
/// inconsistent.
bool perspectives_consistent(const StateVector& global, std::span<const Observer> observers,
                             const std::string& about);

}  // namespace copysim
