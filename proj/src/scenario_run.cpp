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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "copysim/infometrics.hpp"
#include "copysim/scenario.hpp"

namespace copysim {
namespace {

struct Machine {
  StateVector state;
  CopyLog log;
  std::set<std::string> escaped;
};

std::string primary_label(const StepAction& action) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CopyStep>) return s.spec.source;
        if constexpr (std::is_same_v<T, MultiCopyStep>) return s.source;
        if constexpr (std::is_same_v<T, PremeasureStep>) return s.system;
        if constexpr (std::is_same_v<T, MeasureStep>) return s.label;
        if constexpr (std::is_same_v<T, EscapeStep>) return s.label;
        return "";
      },
      action);
}

void require_present(const Machine& m, const std::string& label) {
  if (m.escaped.count(label) > 0) {
    throw Error(ErrorKind::kEscapedSubsystem, "subsystem '" + label + "' has escaped");
  }
}

void execute(const Step& step, std::size_t index, Machine& m, Rng& rng, TrialResult& result) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CopyStep>) {
          require_present(m, s.spec.source);
          require_present(m, s.spec.target);
          auto r = apply_copy(m.state, s.spec, m.log);
          m.state = std::move(r.state);
          m.log = std::move(r.log);
        } else if constexpr (std::is_same_v<T, MultiCopyStep>) {
          require_present(m, s.source);
          for (const auto& t : s.targets) require_present(m, t);
          auto r = multi_copy(m.state, s.source, s.targets, s.mode, m.log);
          m.state = std::move(r.state);
          m.log = std::move(r.log);
        } else if constexpr (std::is_same_v<T, PremeasureStep>) {
          require_present(m, s.system);
          require_present(m, s.apparatus);
          auto r = premeasure(m.state, s.system, s.apparatus, m.log);
          m.state = std::move(r.state);
          m.log = std::move(r.log);
        } else if constexpr (std::is_same_v<T, MeasureStep>) {
          require_present(m, s.label);
          auto outcome = measure(m.state, s.label, s.basis, rng);
          result.outcomes.push_back({index, s.label, s.basis, outcome.result, outcome.probability});
          m.state = std::move(outcome.post_state);
        } else if constexpr (std::is_same_v<T, EscapeStep>) {
          m.escaped.insert(s.label);
          m.log = mark_escaped(m.log, s.label);
        } else if constexpr (std::is_same_v<T, EraseStep>) {
          auto r = s.all ? erase_all(m.state, m.log)
                         : erase_copies(m.state, m.log, s.seqs);
          m.state = std::move(r.state);
          m.log = std::move(r.log);
        }
      },
      step.action);
}

double evaluate(const MetricRequest& req, const Machine& m, const StateVector& initial) {
  switch (req.kind) {
    case MetricKind::kEntropy:
      return von_neumann_entropy(partial_trace(m.state, req.labels));
    case MetricKind::kCoherence: {
      const DensityMatrix rho = partial_trace(m.state, req.labels);
      return std::abs(rho(req.row, req.col.value_or(rho.dim() - 1)));
    }
    case MetricKind::kMutualInfo:
      return transinformation(joint_readout(m.state, req.labels[0], req.other_labels[0], req.basis));
    case MetricKind::kQmi:
      return quantum_mutual_information(m.state, req.labels, req.other_labels);
    case MetricKind::kFidelity:
      return fidelity(m.state, initial);
  }
  return 0.0;
}

class Runner {
 public:
  explicit Runner(const Scenario& s) : s_(s), initial_(s.initial_state()) {}

  /// Runs script[begin, end) and the metrics positioned in (begin, end], plus
  /// those at `begin` when `include_begin_metrics`. Returns false on abort.
  bool run(Machine& m, Rng& rng, TrialResult& result, std::size_t begin, std::size_t end,
           bool include_begin_metrics) const {
    if (include_begin_metrics) emit_metrics(begin, m, result);
    for (std::size_t i = begin; i < end; ++i) {
      try {
        execute(s_.script[i], i, m, rng, result);
      } catch (const Error& e) {
        result.failure = TrialFailure{i, primary_label(s_.script[i].action), e.kind(), e.what()};
        return false;
      }
      emit_metrics(i + 1, m, result);
    }
    return true;
  }

  const StateVector& initial() const { return initial_; }

 private:
  void emit_metrics(std::size_t position, const Machine& m, TrialResult& result) const {
    for (const auto& req : s_.metrics) {
      if (req.after_step != position) continue;
      result.metrics.push_back({req.kind, req.args, evaluate(req, m, initial_)});
    }
  }

  const Scenario& s_;
  StateVector initial_;
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kEntropy: return "entropy";
    case MetricKind::kCoherence: return "coherence";
    case MetricKind::kMutualInfo: return "mutualinfo";
    case MetricKind::kQmi: return "qmi";
    case MetricKind::kFidelity: return "fidelity";
  }
  return "unknown";
}

std::string_view to_string(EventStatus status) {
  return status == EventStatus::kFixedEvent ? "fixed-event" : "revocable";
}

EventStatus event_status(const CopyLog& log) {
  for (const auto& r : log.records) {
    if (r.escaped) return EventStatus::kFixedEvent;
  }
  return EventStatus::kRevocable;
}

std::size_t RunReport::failed_trials() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return t.failure.has_value(); }));
}

bool RunReport::all_trials_failed() const {
  if (trials.empty()) return false;
  return std::all_of(trials.begin(), trials.end(), [](const TrialResult& t) {
    return t.failure && t.failure->kind != ErrorKind::kEscapedSubsystem;
  });
}

RunReport run_scenario(const Scenario& scenario, const RunOptions& options) {
  const Runner runner(scenario);

  // Everything before the first measurement is identical in every trial, so
  // it runs once and each trial resumes from a copy.
  std::size_t first_random = scenario.script.size();
  for (std::size_t i = 0; i < scenario.script.size(); ++i) {
    if (std::holds_alternative<MeasureStep>(scenario.script[i].action)) {
      first_random = i;
      break;
    }
  }
  Machine prefix{runner.initial(), {}, {}};
  TrialResult prefix_result;
  Rng unused(scenario.seed);
  const bool prefix_ok = runner.run(prefix, unused, prefix_result, 0, first_random, true);

  RunReport report;
  report.trials.resize(scenario.trials);
  auto run_trial = [&](std::size_t t) {
    TrialResult result = prefix_result;
    result.trial = t;
    Machine m = prefix;
    if (prefix_ok) {
      Rng rng(scenario.seed + t);
      runner.run(m, rng, result, first_random, scenario.script.size(), false);
    }
    result.log = m.log;
    result.event = event_status(m.log);
    report.trials[t] = std::move(result);
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, scenario.trials));
  if (threads <= 1) {
    for (std::size_t t = 0; t < scenario.trials; ++t) run_trial(t);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < scenario.trials; t = next++) run_trial(t);
    });
  }
  pool.clear();
  return report;
}

void write_outcomes_csv(const RunReport& report, std::ostream& out) {
  out << "trial,step,subsystem,basis,outcome,probability\n";
  for (const auto& t : report.trials) {
    for (const auto& row : t.outcomes) {
      out << t.trial << ',' << row.step << ',' << csv_field(row.subsystem) << ','
          << describe(row.basis) << ',' << row.outcome << ',' << format_value(row.probability)
          << '\n';
    }
    if (t.failure) {
      out << t.trial << ',' << t.failure->step << ',' << csv_field(t.failure->subsystem)
          << ",abort," << to_string(t.failure->kind) << ",\n";
    }
  }
}

void write_metrics_csv(const RunReport& report, std::ostream& out) {
  out << "trial,metric,args,value\n";
  for (const auto& t : report.trials) {
    for (const auto& m : t.metrics) {
      out << t.trial << ',' << to_string(m.kind) << ',' << csv_field(m.args) << ','
          << format_value(m.value) << '\n';
    }
    out << t.trial << ",event,," << to_string(t.event) << '\n';
    if (t.failure) {
      out << t.trial << ",error,step=" << t.failure->step << ',' << to_string(t.failure->kind)
          << '\n';
    }
  }
}

void write_summary(const Scenario& scenario, const RunReport& report, std::ostream& out) {
  out << "subsystems: " << scenario.layout.size() << " (dimension " << scenario.layout.total_dim()
      << ")\n";
  out << "steps: " << scenario.script.size() << ", trials: " << report.trials.size()
      << ", seed: " << scenario.seed << '\n';

  struct MetricMean {
    std::string name;
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::pair<std::size_t, std::string>, std::map<std::size_t, std::size_t>> counts;
  // A trial emits metrics in script order and only truncates on abort, so
  // the i-th value of every trial belongs to the same request.
  std::vector<MetricMean> means;
  std::map<std::string, std::size_t> failures;
  std::size_t fixed = 0;
  for (const auto& t : report.trials) {
    for (const auto& row : t.outcomes) ++counts[{row.step, row.subsystem}][row.outcome];
    for (std::size_t i = 0; i < t.metrics.size(); ++i) {
      if (i == means.size()) {
        const auto& m = t.metrics[i];
        means.push_back({std::string(to_string(m.kind)) + (m.args.empty() ? "" : " " + m.args)});
      }
      means[i].sum += t.metrics[i].value;
      ++means[i].n;
    }
    if (t.failure) {
      ++failures[std::string(to_string(t.failure->kind)) + " at step " +
                 std::to_string(t.failure->step)];
    }
    if (t.event == EventStatus::kFixedEvent) ++fixed;
  }
  if (!counts.empty()) out << "outcomes:\n";
  for (const auto& [key, hist] : counts) {
    out << "  step " << key.first << " " << key.second << ":";
    for (const auto& [outcome, n] : hist) {
      out << "  " << outcome << " x" << n << " ("
          << format_value(static_cast<double>(n) / static_cast<double>(report.trials.size())) << ")";
    }
    out << '\n';
  }
  if (!means.empty()) out << "metrics (mean over trials):\n";
  for (const auto& m : means) {
    out << "  " << m.name << " = " << format_value(m.sum / static_cast<double>(m.n)) << '\n';
  }
  out << "events: " << fixed << " fixed, " << report.trials.size() - fixed << " revocable\n";
  for (const auto& [what, n] : failures) out << "aborted: " << n << " trial(s), " << what << '\n';
}

}  // namespace copysim
