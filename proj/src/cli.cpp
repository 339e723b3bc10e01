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

#include "copysim/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "copysim/ngram.hpp"
#include "copysim/scenario.hpp"

namespace copysim::cli {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_bits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int run_corpus(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto corpus_bytes = read_file(*cfg.corpus_path);
  if (!corpus_bytes) {
    err << "error: cannot read corpus file '" << *cfg.corpus_path << "'\n";
    return kExitParseError;
  }
  std::optional<std::string> eval_bytes = corpus_bytes;
  if (cfg.evaluate_path) {
    eval_bytes = read_file(*cfg.evaluate_path);
    if (!eval_bytes) {
      err << "error: cannot read text file '" << *cfg.evaluate_path << "'\n";
      return kExitParseError;
    }
  }
  try {
    const Encoding enc = parse_encoding(cfg.encoding);
    const SymbolString corpus = decode_text(*corpus_bytes, enc);
    const SymbolString text = decode_text(*eval_bytes, enc);
    const NGramModel model = build_ngram(corpus, cfg.order);
    out << "observer,order,symbols,bits_per_symbol\n";
    out << "memorized,," << text.size() << ',' << format_bits(memorized_surprisal(corpus, text)) << '\n';
    out << "model," << cfg.order << ',' << text.size() << ','
        << format_bits(observer_surprisal(model, text)) << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }
  return kExitOk;
}

void report_failures(const RunReport& report, std::ostream& err) {
  std::map<std::string, std::size_t> messages;
  for (const auto& t : report.trials) {
    if (t.failure) {
      ++messages["step " + std::to_string(t.failure->step) + ": " +
                 std::string(to_string(t.failure->kind)) + ": " + t.failure->message];
    }
  }
  for (const auto& [msg, n] : messages) err << "trial error (" << n << " trial(s)) " << msg << '\n';
}

}  // namespace

std::string default_metrics_path(const std::string& out_path) {
  constexpr std::string_view kExt = ".csv";
  if (out_path.size() > kExt.size() && out_path.compare(out_path.size() - kExt.size(), kExt.size(), kExt) == 0) {
    return out_path.substr(0, out_path.size() - kExt.size()) + ".metrics.csv";
  }
  return out_path + ".metrics.csv";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  std::string format = "csv";
  CLI::App app{"copysim: simulate copying of information between quantum subsystems"};
  auto* scenario_opt = app.add_option("--scenario", cfg.scenario_path, "Scenario file to run");
  auto* preset_opt = app.add_option("--preset", cfg.preset_name, "Shipped preset to run");
  app.add_option("--seed", cfg.seed_override, "Override the scenario seed");
  app.add_option("--trials", cfg.trials_override, "Override the scenario trial count")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_path, "Output file (default: standard output)");
  app.add_option("--metrics-out", cfg.metrics_out_path,
                 "Metrics CSV file (default: derived from --out)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "text"}));
  app.add_option("--threads", cfg.threads, "Worker threads for trials (0: all cores)");
  auto* list_opt = app.add_flag("--list-presets", cfg.list_presets, "List shipped presets");
  auto* corpus_opt = app.add_option("--corpus", cfg.corpus_path,
                                    "Training text for the observer surprisal demonstration");
  app.add_option("--evaluate", cfg.evaluate_path, "Text to score (default: the corpus)")
      ->needs(corpus_opt);
  app.add_option("--order", cfg.order, "N-gram context length")->needs(corpus_opt);
  app.add_option("--encoding", cfg.encoding, "Corpus encoding: utf8 or bytes")
      ->check(CLI::IsMember({"utf8", "bytes"}))
      ->needs(corpus_opt);
  scenario_opt->excludes(preset_opt)->excludes(list_opt)->excludes(corpus_opt);
  preset_opt->excludes(list_opt)->excludes(corpus_opt);
  list_opt->excludes(corpus_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParseError;
  }
  cfg.format = format == "text" ? Format::kText : Format::kCsv;

  if (cfg.list_presets) {
    for (const auto& name : preset_names()) out << name << '\n';
    return kExitOk;
  }
  if (cfg.corpus_path) return run_corpus(cfg, out, err);
  if (!cfg.scenario_path && !cfg.preset_name) {
    err << "error: one of --scenario, --preset, --corpus or --list-presets is required\n";
    return kExitParseError;
  }

  std::string source_name;
  std::string text;
  if (cfg.scenario_path) {
    source_name = *cfg.scenario_path;
    auto body = read_file(source_name);
    if (!body) {
      err << "error: cannot read scenario file '" << source_name << "'\n";
      return kExitParseError;
    }
    text = std::move(*body);
  } else {
    source_name = "preset:" + *cfg.preset_name;
    auto body = find_preset(*cfg.preset_name);
    if (!body) {
      err << "error: unknown preset '" << *cfg.preset_name << "' (see --list-presets)\n";
      return kExitParseError;
    }
    text = std::string(*body);
  }

  Scenario scenario;
  try {
    scenario = parse_scenario(text);
  } catch (const ScenarioError& e) {
    err << source_name << ":" << e.line() << ": " << to_string(e.kind()) << ": "
        << e.detail() << '\n';
    return kExitParseError;
  }
  if (cfg.seed_override) scenario.seed = *cfg.seed_override;
  if (cfg.trials_override) scenario.trials = *cfg.trials_override;

  const RunReport report = run_scenario(scenario, RunOptions{cfg.threads});
  report_failures(report, err);

  auto emit = [&](std::ostream& main, std::ostream* metrics) {
    if (cfg.format == Format::kText) {
      write_summary(scenario, report, main);
      return;
    }
    write_outcomes_csv(report, main);
    if (metrics) {
      write_metrics_csv(report, *metrics);
    } else {
      main << '\n';
      write_metrics_csv(report, main);
    }
  };

  if (!cfg.out_path) {
    if (cfg.metrics_out_path && cfg.format == Format::kCsv) {
      std::ofstream metrics(*cfg.metrics_out_path, std::ios::binary);
      if (!metrics) {
        err << "error: cannot write '" << *cfg.metrics_out_path << "'\n";
        return kExitParseError;
      }
      emit(out, &metrics);
    } else {
      emit(out, nullptr);
    }
  } else {
    std::ofstream main(*cfg.out_path, std::ios::binary);
    if (!main) {
      err << "error: cannot write '" << *cfg.out_path << "'\n";
      return kExitParseError;
    }
    if (cfg.format == Format::kCsv) {
      const std::string metrics_path = cfg.metrics_out_path.value_or(default_metrics_path(*cfg.out_path));
      std::ofstream metrics(metrics_path, std::ios::binary);
      if (!metrics) {
        err << "error: cannot write '" << metrics_path << "'\n";
        return kExitParseError;
      }
      emit(main, &metrics);
    } else {
      emit(main, nullptr);
    }
  }
  return report.all_trials_failed() ? kExitAllTrialsFailed : kExitOk;
}

}  // namespace copysim::cli
