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
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "copysim/copier.hpp"
#include "copysim/measurement.hpp"
#include "copysim/qstate.hpp"

namespace copysim {

// ---------------------------------------------------------------------------
// Scenario documents
//
// Line-oriented, one directive per line, '#' starts a comment:
//
//   subsystem <label> dim=<d> [basis=<l0,l1,...>]
//   init <label>=<basis_label|(c0,c1,...)> [<label>=... ...]
//   init amps=<c0,c1,...>
//   copy <src> -> <dst> [pm=<basis_label>] [perm=<i0,i1,...>]
//   multicopy <src> -> <dst1,dst2,...> [mode=source|chain]
//   premeasure <system> -> <apparatus>
//   measure <label> [basis=symbol|basis=theta=<radians>]
//   escape <label>
//   erase <seq|first-last|seq,seq,...|all>
//   metric <entropy|coherence|mutualinfo|qmi|fidelity> <args...>
//   trials <n>
//   seed <n>
//
// Complex literals are a, bi, a+bi or a-bi. Angles accept a number or
// [k*]pi[/m]. Metric lines are evaluated at their position in the script.
// ---------------------------------------------------------------------------

struct CopyStep {
  CopierSpec spec;
};
struct MultiCopyStep {
  std::string source;
  std::vector<std::string> targets;
  ChainMode mode = ChainMode::kFromSource;
};
struct PremeasureStep {
  std::string system;
  std::string apparatus;
};
struct MeasureStep {
  std::string label;
  MeasurementBasis basis;
};
struct EscapeStep {
  std::string label;
};
struct EraseStep {
  bool all = false;
  std::vector<std::uint64_t> seqs;
};

using StepAction =
    std::variant<CopyStep, MultiCopyStep, PremeasureStep, MeasureStep, EscapeStep, EraseStep>;

struct Step {
  StepAction action;
  std::size_t line = 0;
};

enum class MetricKind { kEntropy, kCoherence, kMutualInfo, kQmi, kFidelity };

std::string_view to_string(MetricKind kind);

struct MetricRequest {
  MetricKind kind = MetricKind::kEntropy;
  std::string args;  // as written, whitespace-normalized
  std::vector<std::string> labels;
  std::vector<std::string> other_labels;  // second part for qmi; copy for mutualinfo
  std::size_t row = 0;
  std::optional<std::size_t> col;  // coherence; default is the last index
  MeasurementBasis basis;          // mutualinfo readout basis of the copy
  std::size_t after_step = 0;      // evaluated before script[after_step]
  std::size_t line = 0;
};

struct InitialSpec {
  std::vector<LocalAssignment> assignments;
  std::vector<std::complex<double>> amps;  // used when assignments is empty
};

struct Scenario {
  SubsystemLayout layout;
  InitialSpec initial;
  std::vector<Step> script;
  std::vector<MetricRequest> metrics;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  StateVector initial_state() const;
};

/// Parse failure with the 1-based line it refers to.
class ScenarioError : public Error {
 public:
  ScenarioError(ErrorKind kind, std::size_t line, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line), detail_(message) {}
  std::size_t line() const { return line_; }
  /// The message without the line prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

Scenario parse_scenario(std::string_view text);

std::complex<double> parse_complex(std::string_view text);
double parse_angle(std::string_view text);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

enum class EventStatus { kRevocable, kFixedEvent };

std::string_view to_string(EventStatus status);

/// A branch is a fixed event once any copy in its provenance escaped; the
/// number of copies is irrelevant.
EventStatus event_status(const CopyLog& log);

struct MeasurementRow {
  std::size_t step = 0;
  std::string subsystem;
  MeasurementBasis basis;
  std::size_t outcome = 0;
  double probability = 0.0;
};

struct MetricValue {
  MetricKind kind = MetricKind::kEntropy;
  std::string args;
  double value = 0.0;
};

struct TrialFailure {
  std::size_t step = 0;
  std::string subsystem;
  ErrorKind kind = ErrorKind::kSyntax;
  std::string message;
};

struct TrialResult {
  std::size_t trial = 0;
  std::vector<MeasurementRow> outcomes;
  std::vector<MetricValue> metrics;
  std::optional<TrialFailure> failure;
  CopyLog log;
  EventStatus event = EventStatus::kRevocable;
};

struct RunReport {
  std::vector<TrialResult> trials;

  std::size_t failed_trials() const;
  /// True when every trial aborted on an error other than an escaped-copy
  /// erasure (which is a physical outcome, reported as a fixed event).
  bool all_trials_failed() const;
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Trial t draws from Rng(seed + t). Results are ordered by trial index
/// regardless of how trials are scheduled.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// `trial,step,subsystem,basis,outcome,probability`; an aborted step adds a
/// row with basis "abort" and the error kind as outcome.
void write_outcomes_csv(const RunReport& report, std::ostream& out);

/// `trial,metric,args,value`, plus one `event` row per trial and an `error`
/// row for each aborted trial.
void write_metrics_csv(const RunReport& report, std::ostream& out);

void write_summary(const Scenario& scenario, const RunReport& report, std::ostream& out);

/// Shipped scenario presets, looked up by name without the .scn suffix.
std::optional<std::string_view> find_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace copysim
