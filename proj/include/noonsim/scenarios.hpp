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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noonsim/engine.hpp"

namespace noonsim {

enum class ScenarioName {
    kFig2PhaseWeight,
    kFig3Noon,
    kFig5Fringes,
    kHomPair,
    kWhichPathProbe,
    kEqualProbeRevival,
    kNegativeResult,
};

/// Command-line name: fig2, fig3, fig5, hom, which-path, equal-probe, negative-result.
std::string_view scenario_cli_name(ScenarioName name);
std::optional<ScenarioName> parse_scenario_name(std::string_view text);
std::vector<ScenarioName> all_scenarios();

using ParameterList = std::vector<std::pair<std::string, std::string>>;

struct ScenarioSpec {
    ScenarioName name = ScenarioName::kFig3Noon;
    /// Applied in order over the scenario defaults; later entries win.
    ParameterList overrides;
};

/// Keys accepted as overrides by a scenario, in the order they are reported.
std::vector<std::string> scenario_parameter_keys(ScenarioName name);

/// Which engines to run and at what precision. Engines that do not cover the
/// scenario's network are skipped with a notice, except that a lone closed
/// form request falls back to the oracle inside the engine.
struct RunOptions {
    std::vector<EngineChoice> engines{EngineChoice::kOracle};
    Precision precision = Precision::kAuto;
};

struct CurvePoint {
    double phi = 0.0;
    double q12_value = 0.0;
};

struct ScenarioResult {
    ScenarioName name = ScenarioName::kFig3Noon;
    /// Every resolved parameter, defaults included, as text that parses back
    /// to the same value.
    ParameterList parameters;
    std::vector<CurvePoint> curve;
    /// One distribution per engine that ran, in run order.
    std::vector<OutcomeDistribution> distributions;
    std::optional<double> noon_fidelity;
    std::optional<double> fringe_visibility;
    std::optional<double> condition_probability;
    /// Scenario-specific figures, e.g. curve extrema.
    std::vector<std::pair<std::string, double>> extra_metrics;
    /// Largest |p_a - p_b| over engine pairs and support points; set when more
    /// than one engine ran.
    std::optional<double> max_cross_engine_deviation;
    std::vector<std::string> notices;

    bool is_curve() const { return distributions.empty(); }
};

/// Resolves overrides against the scenario defaults and runs it. Throws
/// std::invalid_argument for unknown keys or out-of-range values and
/// propagates ImpossiblePostSelection.
ScenarioResult run_scenario(const ScenarioSpec &spec, const RunOptions &options = {});

/// Probe experiment on the fig5 fringe set-up with the given probe taps,
/// conditioned on (m5', m6').
ScenarioResult run_which_path(int m5p, int m6p, std::pair<double, double> taps, const RunOptions &options = {});

/// Arm 5 fully diverted into its probe and no probe click.
ScenarioResult run_negative_result(const RunOptions &options = {});

/// Runs one conditional scan with every requested engine and fills the
/// distribution fields and metrics of a result. Parameters are left empty.
ScenarioResult run_network_scan(const SourceSpec &source, const InterferometerNetwork &network,
                                const OutcomeCounts &condition, DetectorId scan, const RunOptions &options = {});

/// Largest absolute per-point difference across distributions over one support.
double max_pairwise_deviation(const std::vector<OutcomeDistribution> &distributions);

/// Per-point version of max_pairwise_deviation, one entry per support point.
std::vector<double> pointwise_deviation(const std::vector<OutcomeDistribution> &distributions);

}  // namespace noonsim
