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

#include "copysim/perspective.hpp"

#include "copysim/measurement.hpp"

namespace copysim {

Observer::Observer(std::string name, std::set<std::string> known_labels,
                   std::map<std::string, std::size_t> known_outcomes)
    : name_(std::move(name)),
      known_labels_(std::move(known_labels)),
      known_outcomes_(std::move(known_outcomes)) {
  for (const auto& [label, outcome] : known_outcomes_) {
    if (known_labels_.count(label) == 0) {
      throw Error(ErrorKind::kInvalidObserver, "observer '" + name_ + "' read '" + label +
                                                   "' without holding a record of it");
    }
  }
}

Observer Observer::reading(std::string name, std::map<std::string, std::size_t> outcomes) {
  std::set<std::string> labels;
  for (const auto& [label, outcome] : outcomes) labels.insert(label);
  return Observer(std::move(name), std::move(labels), std::move(outcomes));
}

StateVector condition_on(const StateVector& global, const Observer& obs) {
  StateVector current = global;
  for (const auto& [label, outcome] : obs.known_outcomes()) {
    if (outcome >= global.layout().dim(label)) {
      throw Error(ErrorKind::kInconsistentKnowledge,
                  "observer '" + obs.name() + "' holds out-of-range outcome for '" + label + "'");
    }
    try {
      current = project(current, label, SymbolBasis{}, outcome);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kAllZeroProbabilities) throw;
      throw Error(ErrorKind::kInconsistentKnowledge,
                  "observer '" + obs.name() + "' knows " + label + "=" + std::to_string(outcome) +
                      ", which has zero probability given its other records");
    }
  }
  return current;
}

DensityMatrix perspective_state(const StateVector& global, const Observer& obs,
                                std::span<const std::string> about) {
  return partial_trace(condition_on(global, obs), about);
}

bool perspectives_consistent(const StateVector& global, std::span<const Observer> observers,
                             const std::string& about) {
  const std::size_t d = global.layout().dim(about);
  std::vector<bool> common(d, true);
  for (const auto& obs : observers) {
    std::vector<double> p;
    try {
      p = outcome_probabilities(condition_on(global, obs), about, SymbolBasis{});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInconsistentKnowledge) return false;
      throw;
    }
    for (std::size_t k = 0; k < d; ++k) common[k] = common[k] && p[k] > 1e-12;
  }
  for (bool c : common) {
    if (c) return true;
  }
  return false;
}

}  // namespace copysim
