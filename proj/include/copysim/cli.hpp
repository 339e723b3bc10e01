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
#include <string>

namespace copysim::cli {

enum class Format { kCsv, kText };

struct CliConfig {
  std::optional<std::string> scenario_path;
  std::optional<std::string> preset_name;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> trials_override;
  std::optional<std::string> out_path;
  std::optional<std::string> metrics_out_path;
  Format format = Format::kCsv;
  unsigned threads = 0;
  bool list_presets = false;

  std::optional<std::string> corpus_path;
  std::optional<std::string> evaluate_path;
  std::size_t order = 0;
  std::string encoding = "utf8";
};

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 1;
inline constexpr int kExitAllTrialsFailed = 2;

/// Where the metrics CSV goes when only --out is given: "r.csv" becomes
/// "r.metrics.csv", anything else gets ".metrics.csv" appended.
std::string default_metrics_path(const std::string& out_path);

/// Full command-line front end; `out` stands in for standard output.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace copysim::cli
