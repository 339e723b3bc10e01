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
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "copysim/scenario.hpp"

namespace copysim {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(start, end - start));
    ++number;
    start = end + 1;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    for (std::size_t pos = raw.find("->"); pos != std::string::npos; pos = raw.find("->", pos + 4)) {
      raw.replace(pos, 2, " -> ");
    }
    std::istringstream in(raw);
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& message,
                       ErrorKind kind = ErrorKind::kSyntax) {
  throw ScenarioError(kind, line.number, message);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    out.emplace_back(s.substr(start, end == std::string_view::npos ? s.size() - start : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string strip_parens(std::string s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
  return s;
}

double parse_real(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorKind::kSyntax, "invalid number '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const Line& line, std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(line, "expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return v;
}

/// key=value option, or nullopt when the token has no '='.
std::optional<std::pair<std::string, std::string>> option(const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos) return std::nullopt;
  return std::make_pair(tok.substr(0, eq), tok.substr(eq + 1));
}

std::vector<std::complex<double>> parse_amp_list(const Line& line, const std::string& text) {
  std::vector<std::complex<double>> amps;
  for (const auto& part : split(strip_parens(text), ',')) {
    try {
      amps.push_back(parse_complex(part));
    } catch (const Error& e) {
      fail(line, e.what());
    }
  }
  return amps;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  Scenario parse() {
    collect_layout();
    for (const auto& line : lines_) {
      const auto& head = line.tokens[0];
      try {
        if (head == "subsystem") continue;
        if (head == "init") parse_init(line);
        else if (head == "copy") parse_copy(line);
        else if (head == "multicopy") parse_multicopy(line);
        else if (head == "premeasure") parse_premeasure(line);
        else if (head == "measure") parse_measure(line);
        else if (head == "escape") parse_escape(line);
        else if (head == "erase") parse_erase(line);
        else if (head == "metric") parse_metric(line);
        else if (head == "trials") parse_trials(line);
        else if (head == "seed") parse_seed(line);
        else fail(line, "unknown directive '" + head + "'");
      } catch (const ScenarioError&) {
        throw;
      } catch (const Error& e) {
        fail(line, e.what(), e.kind());
      }
    }
    finish_init();
    return std::move(scenario_);
  }

 private:
  void collect_layout() {
    std::vector<Subsystem> entries;
    std::set<std::string> seen;
    const Line* first = nullptr;
    for (const auto& line : lines_) {
      if (line.tokens[0] != "subsystem") continue;
      if (!first) first = &line;
      if (line.tokens.size() < 2) fail(line, "subsystem needs a label");
      Subsystem s;
      s.label = line.tokens[1];
      if (option(s.label)) fail(line, "subsystem label may not contain '='");
      if (!seen.insert(s.label).second) {
        fail(line, "duplicate subsystem label '" + s.label + "'", ErrorKind::kDuplicateLabel);
      }
      bool has_dim = false;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        auto opt = option(line.tokens[i]);
        if (!opt) fail(line, "unexpected token '" + line.tokens[i] + "'");
        if (opt->first == "dim") {
          s.dim = parse_unsigned(line, opt->second);
          has_dim = true;
        } else if (opt->first == "basis") {
          s.basis = split(opt->second, ',');
        } else {
          fail(line, "unknown subsystem option '" + opt->first + "'");
        }
      }
      if (!has_dim) s.dim = s.basis.empty() ? 2 : s.basis.size();
      entries.push_back(std::move(s));
      try {
        SubsystemLayout check(entries);
      } catch (const Error& e) {
        fail(line, e.what(), e.kind());
      }
    }
    if (entries.empty()) {
      throw ScenarioError(ErrorKind::kInvalidLayout, lines_.empty() ? 1 : lines_.front().number,
                          "scenario declares no subsystems");
    }
    scenario_.layout = SubsystemLayout(std::move(entries));
  }

  const std::string& label(const Line& line, const std::string& name) {
    if (!scenario_.layout.contains(name)) {
      fail(line, "undeclared subsystem '" + name + "'", ErrorKind::kUnknownLabel);
    }
    return name;
  }

  std::vector<std::string> label_list(const Line& line, const std::string& text) {
    std::vector<std::string> out;
    for (const auto& l : split(text, ',')) out.push_back(label(line, l));
    scenario_.layout.positions(out);
    return out;
  }

  void add_step(const Line& line, StepAction action) {
    scenario_.script.push_back({std::move(action), line.number});
  }

  void expect_arrow(const Line& line, std::size_t min_tokens) {
    if (line.tokens.size() < min_tokens || line.tokens[2] != "->") {
      fail(line, "expected '" + line.tokens[0] + " <from> -> <to>'");
    }
  }

  void parse_init(const Line& line) {
    if (init_line_ == 0) init_line_ = line.number;
    if (line.tokens.size() < 2) fail(line, "init needs at least one assignment");
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      auto opt = option(line.tokens[i]);
      if (!opt) fail(line, "expected <label>=<state>, got '" + line.tokens[i] + "'");
      if (opt->first == "amps") {
        if (!scenario_.initial.amps.empty() || !scenario_.initial.assignments.empty()) {
          fail(line, "init amps= cannot be combined with other initial states");
        }
        scenario_.initial.amps = parse_amp_list(line, opt->second);
        if (scenario_.initial.amps.empty()) fail(line, "empty amplitude list");
        continue;
      }
      if (!scenario_.initial.amps.empty()) {
        fail(line, "init amps= cannot be combined with other initial states");
      }
      LocalAssignment a;
      a.label = label(line, opt->first);
      for (const auto& prev : scenario_.initial.assignments) {
        if (prev.label == a.label) {
          fail(line, "subsystem '" + a.label + "' initialized twice", ErrorKind::kDuplicateLabel);
        }
      }
      if (!opt->second.empty() && opt->second.front() == '(') {
        a.value = parse_amp_list(line, opt->second);
      } else {
        scenario_.layout.basis_index(a.label, opt->second);
        a.value = opt->second;
      }
      scenario_.initial.assignments.push_back(std::move(a));
    }
  }

  void finish_init() {
    const std::size_t line = init_line_ == 0 ? 1 : init_line_;
    if (init_line_ == 0) {
      throw ScenarioError(ErrorKind::kSyntax, line, "scenario has no init directive");
    }
    try {
      scenario_.initial_state();
    } catch (const Error& e) {
      throw ScenarioError(e.kind(), line, e.what());
    }
  }

  void parse_copy(const Line& line) {
    expect_arrow(line, 4);
    CopyStep step;
    step.spec.source = label(line, line.tokens[1]);
    step.spec.target = label(line, line.tokens[3]);
    for (std::size_t i = 4; i < line.tokens.size(); ++i) {
      auto opt = option(line.tokens[i]);
      if (!opt) fail(line, "unexpected token '" + line.tokens[i] + "'");
      if (opt->first == "pm") {
        step.spec.target_pm_index = scenario_.layout.basis_index(step.spec.target, opt->second);
      } else if (opt->first == "perm") {
        std::vector<std::size_t> perm;
        for (const auto& p : split(opt->second, ',')) perm.push_back(parse_unsigned(line, p));
        step.spec.permutation = std::move(perm);
      } else {
        fail(line, "unknown copy option '" + opt->first + "'");
      }
    }
    build_copier(step.spec, scenario_.layout);
    add_step(line, std::move(step));
  }

  void parse_multicopy(const Line& line) {
    expect_arrow(line, 4);
    MultiCopyStep step;
    step.source = label(line, line.tokens[1]);
    step.targets = label_list(line, line.tokens[3]);
    for (std::size_t i = 4; i < line.tokens.size(); ++i) {
      auto opt = option(line.tokens[i]);
      if (!opt || opt->first != "mode") fail(line, "unexpected token '" + line.tokens[i] + "'");
      if (opt->second == "source") step.mode = ChainMode::kFromSource;
      else if (opt->second == "chain") step.mode = ChainMode::kChained;
      else fail(line, "mode must be 'source' or 'chain'");
    }
    std::string from = step.source;
    for (const auto& t : step.targets) {
      build_copier(CopierSpec{from, t, {}, 0, std::nullopt}, scenario_.layout);
      if (step.mode == ChainMode::kChained) from = t;
    }
    add_step(line, std::move(step));
  }

  void parse_premeasure(const Line& line) {
    expect_arrow(line, 4);
    if (line.tokens.size() != 4) fail(line, "premeasure takes no options");
    PremeasureStep step{label(line, line.tokens[1]), label(line, line.tokens[3])};
    build_copier(CopierSpec{step.system, step.apparatus, {}, 0, std::nullopt}, scenario_.layout);
    add_step(line, std::move(step));
  }

  MeasurementBasis parse_basis(const Line& line, const std::string& value, const std::string& target) {
    if (value == "symbol") return SymbolBasis{};
    if (value.rfind("theta=", 0) == 0) {
      RotatedBasis b{parse_angle(value.substr(6))};
      basis_vectors(scenario_.layout, target, b);
      return b;
    }
    fail(line, "basis must be 'symbol' or 'theta=<radians>'");
  }

  void parse_measure(const Line& line) {
    if (line.tokens.size() < 2 || line.tokens.size() > 3) {
      fail(line, "expected 'measure <label> [basis=...]'");
    }
    MeasureStep step{label(line, line.tokens[1]), SymbolBasis{}};
    if (line.tokens.size() == 3) {
      auto opt = option(line.tokens[2]);
      if (!opt || opt->first != "basis") fail(line, "unexpected token '" + line.tokens[2] + "'");
      step.basis = parse_basis(line, opt->second, step.label);
    }
    add_step(line, std::move(step));
  }

  void parse_escape(const Line& line) {
    if (line.tokens.size() != 2) fail(line, "expected 'escape <label>'");
    add_step(line, EscapeStep{label(line, line.tokens[1])});
  }

  void parse_erase(const Line& line) {
    if (line.tokens.size() != 2) fail(line, "expected 'erase <records|all>'");
    EraseStep step;
    if (line.tokens[1] == "all") {
      step.all = true;
    } else {
      for (const auto& part : split(line.tokens[1], ',')) {
        if (auto dash = part.find('-'); dash != std::string::npos) {
          const auto lo = parse_unsigned(line, part.substr(0, dash));
          const auto hi = parse_unsigned(line, part.substr(dash + 1));
          if (hi < lo) fail(line, "empty record range '" + part + "'");
          for (auto s = lo; s <= hi; ++s) step.seqs.push_back(s);
        } else {
          step.seqs.push_back(parse_unsigned(line, part));
        }
      }
    }
    add_step(line, std::move(step));
  }

  void parse_metric(const Line& line) {
    if (line.tokens.size() < 2) fail(line, "metric needs a kind");
    MetricRequest m;
    m.line = line.number;
    m.after_step = scenario_.script.size();
    const auto& kind = line.tokens[1];
    std::vector<std::string> args(line.tokens.begin() + 2, line.tokens.end());
    for (std::size_t i = 0; i < args.size(); ++i) m.args += (i ? " " : "") + args[i];
    if (kind == "entropy") {
      m.kind = MetricKind::kEntropy;
      if (args.size() != 1) fail(line, "expected 'metric entropy <labels>'");
      m.labels = label_list(line, args[0]);
    } else if (kind == "coherence") {
      m.kind = MetricKind::kCoherence;
      if (args.empty() || args.size() > 2) fail(line, "expected 'metric coherence <labels> [i,j]'");
      m.labels = label_list(line, args[0]);
      std::size_t dim = 1;
      for (const auto& l : m.labels) dim *= scenario_.layout.dim(l);
      if (args.size() == 2) {
        auto ij = split(args[1], ',');
        if (ij.size() != 2) fail(line, "coherence element must be 'i,j'");
        m.row = parse_unsigned(line, ij[0]);
        m.col = parse_unsigned(line, ij[1]);
        if (m.row >= dim || *m.col >= dim) fail(line, "coherence element out of range");
      }
    } else if (kind == "mutualinfo") {
      m.kind = MetricKind::kMutualInfo;
      if (args.size() < 2 || args.size() > 3) {
        fail(line, "expected 'metric mutualinfo <source> <copy> [theta=<radians>]'");
      }
      m.labels = {label(line, args[0])};
      m.other_labels = {label(line, args[1])};
      if (args[0] == args[1]) fail(line, "mutualinfo needs two different subsystems");
      m.basis = SymbolBasis{};
      if (args.size() == 3) m.basis = parse_basis(line, args[2], args[1]);
    } else if (kind == "qmi") {
      m.kind = MetricKind::kQmi;
      if (args.size() != 2) fail(line, "expected 'metric qmi <labels> <labels>'");
      m.labels = label_list(line, args[0]);
      m.other_labels = label_list(line, args[1]);
      for (const auto& l : m.other_labels) {
        if (std::find(m.labels.begin(), m.labels.end(), l) != m.labels.end()) {
          fail(line, "qmi parts overlap on '" + l + "'", ErrorKind::kOverlappingPartitions);
        }
      }
    } else if (kind == "fidelity") {
      m.kind = MetricKind::kFidelity;
      if (args.size() != 1 || args[0] != "initial") fail(line, "expected 'metric fidelity initial'");
    } else {
      fail(line, "unknown metric '" + kind + "'");
    }
    scenario_.metrics.push_back(std::move(m));
  }

  void parse_trials(const Line& line) {
    if (line.tokens.size() != 2) fail(line, "expected 'trials <n>'");
    scenario_.trials = parse_unsigned(line, line.tokens[1]);
    if (scenario_.trials < 1) fail(line, "trials must be at least 1");
  }

  void parse_seed(const Line& line) {
    if (line.tokens.size() != 2) fail(line, "expected 'seed <n>'");
    scenario_.seed = parse_unsigned(line, line.tokens[1]);
  }

  std::vector<Line> lines_;
  Scenario scenario_;
  std::size_t init_line_ = 0;
};

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::kSyntax, "empty complex literal");
  if (text.back() != 'i') return {parse_real(text), 0.0};
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_of = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split_at == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split_at)), imag_of(body.substr(split_at))};
}

double parse_angle(std::string_view text) {
  const auto pi_at = text.find("pi");
  if (pi_at == std::string_view::npos) return parse_real(text);
  double factor = 1.0;
  std::string_view head = text.substr(0, pi_at);
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw Error(ErrorKind::kSyntax, "invalid angle '" + std::string(text) + "'");
    factor = parse_real(head.substr(0, head.size() - 1));
  }
  std::string_view tail = text.substr(pi_at + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw Error(ErrorKind::kSyntax, "invalid angle '" + std::string(text) + "'");
    divisor = parse_real(tail.substr(1));
    if (divisor == 0.0) throw Error(ErrorKind::kSyntax, "angle divides by zero");
  }
  return factor * std::numbers::pi / divisor;
}

StateVector Scenario::initial_state() const {
  if (!initial.assignments.empty()) return make_state(layout, std::span<const LocalAssignment>(initial.assignments));
  return make_state(layout, std::span<const std::complex<double>>(initial.amps));
}

Scenario parse_scenario(std::string_view text) { return Parser(text).parse(); }

}  // namespace copysim
