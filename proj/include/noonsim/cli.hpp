// Copyright 2026 The noonsim Authors
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

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noonsim/scenarios.hpp"

namespace noonsim::cli {

enum class OutputFormat { kCsv, kJson };
enum class EngineSelection { kOracle, kClosed, kQuadrature, kAll };

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitDeviation = 4;

/// Cross-engine agreement needed for a zero exit status with --engine all.
inline constexpr double kMaxEngineDeviation = 1e-8;

struct RunConfig {
    std::optional<ScenarioName> scenario;
    /// Key = value file describing a network, source and post-selection.
    std::optional<std::string> network_path;
    /// JSON written by an earlier run; reproduces that run.
    std::optional<std::string> replay_path;
    ParameterList overrides;
    EngineSelection engine = EngineSelection::kOracle;
    Precision precision = Precision::kAuto;
    OutputFormat format = OutputFormat::kCsv;
    std::optional<std::string> out_path;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// args excludes the program name. Throws UsageError. Help requests return
/// nullopt after printing to `out`.
std::optional<RunConfig> parse_args(const std::vector<std::string> &args, std::ostream &out);

/// A finished run ready for output. `source` is the scenario name or "network".
struct RunReport {
    std::string source;
    EngineSelection engine = EngineSelection::kOracle;
    Precision precision = Precision::kAuto;
    ScenarioResult result;
};

/// Runs the configured scenario or network. Throws UsageError for bad
/// parameters and propagates engine errors.
RunReport execute(const RunConfig &config);

std::string format_csv(const RunReport &report);
std::string format_json(const RunReport &report);

/// Full front end: parse, run, write. Returns the exit status.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

std::string_view engine_selection_name(EngineSelection engine);

}  // namespace noonsim::cli
