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

#include "noonsim/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noonsim {
namespace {

struct Entry {
    ScenarioName name;
    std::string_view cli;
    ParameterList defaults;
};

// Probe experiments borrow the fig5 source and side counts.
ParameterList probe_defaults(const char *tap5, const char *tap6, const char *m5p, const char *m6p) {
    return {{"n_alpha", "40"}, {"n_beta", "40"}, {"m1", "20"},  {"m2", "20"},  {"theta", "0.5"}, {"xi", "0"},
            {"zeta", "0"},     {"tap5", tap5},   {"tap6", tap6}, {"m5p", m5p}, {"m6p", m6p}};
}

const std::vector<Entry> &registry() {
    static const std::vector<Entry> entries = {
        {ScenarioName::kFig2PhaseWeight, "fig2", {{"m1", "52"}, {"m2", "52"}, {"points", "720"}}},
        {ScenarioName::kFig3Noon,
         "fig3",
         {{"n_alpha", "30"}, {"n_beta", "30"}, {"m1", "15"}, {"m2", "15"}, {"theta", "0.5"}, {"xi", "0"}}},
        {ScenarioName::kFig5Fringes,
         "fig5",
         {{"n_alpha", "40"},
          {"n_beta", "40"},
          {"m1", "20"},
          {"m2", "20"},
          {"theta", "0.5"},
          {"xi", "0"},
          {"zeta", "0"}}},
        {ScenarioName::kHomPair, "hom", {{"n_alpha", "1"}, {"n_beta", "1"}}},
        {ScenarioName::kWhichPathProbe, "which-path", probe_defaults("0.2", "0.2", "1", "0")},
        {ScenarioName::kEqualProbeRevival, "equal-probe", probe_defaults("0.2", "0.2", "1", "1")},
        {ScenarioName::kNegativeResult, "negative-result", probe_defaults("1", "0", "0", "0")},
    };
    return entries;
}

const Entry &entry(ScenarioName name) {
    for (const auto &e : registry()) {
        if (e.name == name) {
            return e;
        }
    }
    throw std::logic_error("unregistered scenario");
}

// Resolved scenario parameters with typed, range-checked access.
class Params {
  public:
    Params(ScenarioName name, const ParameterList &overrides) : values_(entry(name).defaults) {
        for (const auto &[key, value] : overrides) {
            auto it = std::find_if(values_.begin(), values_.end(), [&](const auto &kv) { return kv.first == key; });
            if (it == values_.end()) {
                std::string valid;
                for (const auto &kv : values_) {
                    valid += valid.empty() ? kv.first : ", " + kv.first;
                }
                throw std::invalid_argument("scenario " + std::string(scenario_cli_name(name)) +
                                            " has no parameter '" + key + "' (valid: " + valid + ")");
            }
            it->second = value;
        }
    }

    const ParameterList &list() const { return values_; }

    int count(std::string_view key) const {
        const std::string &text = raw(key);
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
            throw std::invalid_argument(std::string(key) + " must be a non-negative integer, got '" + text + "'");
        }
        return value;
    }

    double real(std::string_view key) const {
        const std::string &text = raw(key);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
            throw std::invalid_argument(std::string(key) + " must be a finite number, got '" + text + "'");
        }
        return value;
    }

    Phase phase(std::string_view key) const { return Phase::from_pi_units(real(key)); }

    double tap(std::string_view key) const {
        const double t = real(key);
        if (t < 0.0 || t > 1.0) {
            throw std::invalid_argument(std::string(key) + " must lie in [0, 1]");
        }
        return t;
    }

  private:
    const std::string &raw(std::string_view key) const {
        for (const auto &[k, v] : values_) {
            if (k == key) {
                return v;
            }
        }
        throw std::logic_error("missing scenario parameter " + std::string(key));
    }

    ParameterList values_;
};

SourceSpec source_of(const Params &p) { return {p.count("n_alpha"), p.count("n_beta")}; }

void check_side_counts(const SourceSpec &src, int m1, int m2) {
    if (m1 + m2 > src.total()) {
        throw std::invalid_argument("m1 + m2 = " + std::to_string(m1 + m2) + " exceeds N = " +
                                    std::to_string(src.total()));
    }
}

// Runs the scan once per requested engine and fills the shared fields.
void run_engines(ScenarioResult &result, const SourceSpec &src, const InterferometerNetwork &net,
                 const OutcomeCounts &condition, DetectorId scan, const RunOptions &options) {
    if (options.engines.empty()) {
        throw std::invalid_argument("no engine requested");
    }
    const bool closed_ok = closed_form_applicable(net, scan);
    for (EngineChoice engine : options.engines) {
        if (engine == EngineChoice::kClosedForm && !closed_ok && options.engines.size() > 1) {
            result.notices.emplace_back("closed form does not cover this network; skipped");
            continue;
        }
        OutcomeDistribution d = conditional_distribution(src, net, condition, scan, engine, options.precision);
        for (const auto &n : d.notices) {
            if (std::find(result.notices.begin(), result.notices.end(), n) == result.notices.end()) {
                result.notices.push_back(n);
            }
        }
        result.distributions.push_back(std::move(d));
    }
    const OutcomeDistribution &primary = result.distributions.front();
    result.noon_fidelity = noon_fidelity(primary);
    result.fringe_visibility = fringe_visibility(primary);
    result.condition_probability = primary.condition_probability;
    if (result.distributions.size() > 1) {
        result.max_cross_engine_deviation = max_pairwise_deviation(result.distributions);
    }
}

ScenarioResult run_fig2(const Params &p) {
    ScenarioResult result;
    const int m1 = p.count("m1");
    const int m2 = p.count("m2");
    const int points = p.count("points");
    if (points < 4) {
        throw std::invalid_argument("points must be at least 4");
    }
    if (m1 + m2 == 0) {
        throw std::invalid_argument("m1 + m2 must be positive");
    }
    // Grid over (-pi, pi]: phi_j = -pi + 2 pi j / points, j = 1..points.
    double best_neg = -1.0, best_pos = -1.0;
    CurvePoint neg, pos;
    for (int j = 1; j <= points; ++j) {
        const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * j / points;
        const CurvePoint pt{phi, q12(phi, m1, m2)};
        result.curve.push_back(pt);
        if (phi < 0.0 && std::abs(pt.q12_value) > best_neg) {
            best_neg = std::abs(pt.q12_value);
            neg = pt;
        } else if (phi > 0.0 && std::abs(pt.q12_value) > best_pos) {
            best_pos = std::abs(pt.q12_value);
            pos = pt;
        }
    }
    result.extra_metrics = {{"extremum_negative_phi", neg.phi},
                            {"extremum_negative_value", neg.q12_value},
                            {"extremum_positive_phi", pos.phi},
                            {"extremum_positive_value", pos.q12_value},
                            {"predicted_peak_phi", q12_peak(m1, m2)},
                            {"grid_step", 2.0 * std::numbers::pi / points}};
    return result;
}

ScenarioResult run_fig3(const Params &p, const RunOptions &options) {
    ScenarioResult result;
    const SourceSpec src = source_of(p);
    const int m1 = p.count("m1"), m2 = p.count("m2");
    check_side_counts(src, m1, m2);
    const auto net = build_canonical_network(p.phase("theta"), p.phase("xi"), TerminalPlane::kArms56);
    run_engines(result, src, net, {{DetectorId::k1, m1}, {DetectorId::k2, m2}}, DetectorId::k5, options);
    return result;
}

ScenarioResult run_fig5(const Params &p, const RunOptions &options) {
    ScenarioResult result;
    const SourceSpec src = source_of(p);
    const int m1 = p.count("m1"), m2 = p.count("m2");
    check_side_counts(src, m1, m2);
    const auto net = build_extended_network(p.phase("theta"), p.phase("xi"), p.phase("zeta"), 0.0, 0.0);
    run_engines(result, src, net, {{DetectorId::k1, m1}, {DetectorId::k2, m2}}, DetectorId::k7, options);
    return result;
}

ScenarioResult run_hom(const Params &p, const RunOptions &options) {
    ScenarioResult result;
    const auto net = build_single_splitter_network();
    run_engines(result, source_of(p), net, {}, DetectorId::k1, options);
    return result;
}

ScenarioResult run_probe(const Params &p, const RunOptions &options) {
    ScenarioResult result;
    const SourceSpec src = source_of(p);
    const int m1 = p.count("m1"), m2 = p.count("m2");
    const int m5p = p.count("m5p"), m6p = p.count("m6p");
    check_side_counts(src, m1, m2);
    if (m5p + m6p > src.total() - m1 - m2) {
        throw std::invalid_argument("m5p + m6p exceeds N - m1 - m2");
    }
    const Phase theta = p.phase("theta"), xi = p.phase("xi");
    const auto net = build_extended_network(theta, xi, p.phase("zeta"), p.tap("tap5"), p.tap("tap6"));
    OutcomeCounts condition{{DetectorId::k1, m1}, {DetectorId::k2, m2}};
    if (net.terminal_plane == TerminalPlane::kDetectors78WithProbes) {
        condition[DetectorId::k5Probe] = m5p;
        condition[DetectorId::k6Probe] = m6p;
    } else if (m5p + m6p > 0) {
        throw std::invalid_argument("probe counts need a non-zero probe tap");
    }
    run_engines(result, src, net, condition, DetectorId::k7, options);

    // The side detectors sit upstream of the probes, so P(m1, m2) is the
    // weight of the same side condition on the NOON arms.
    const auto arms = build_canonical_network(theta, xi, TerminalPlane::kArms56);
    const auto side = conditional_distribution(src, arms, {{DetectorId::k1, m1}, {DetectorId::k2, m2}},
                                               DetectorId::k5, EngineChoice::kOracle, options.precision);
    result.extra_metrics.emplace_back("side_probability", *side.condition_probability);
    result.extra_metrics.emplace_back("probe_condition_given_side",
                                      *result.condition_probability / *side.condition_probability);
    return result;
}

}  // namespace

std::string_view scenario_cli_name(ScenarioName name) { return entry(name).cli; }

std::optional<ScenarioName> parse_scenario_name(std::string_view text) {
    for (const auto &e : registry()) {
        if (e.cli == text) {
            return e.name;
        }
    }
    return std::nullopt;
}

std::vector<ScenarioName> all_scenarios() {
    std::vector<ScenarioName> out;
    for (const auto &e : registry()) {
        out.push_back(e.name);
    }
    return out;
}

std::vector<std::string> scenario_parameter_keys(ScenarioName name) {
    std::vector<std::string> keys;
    for (const auto &kv : entry(name).defaults) {
        keys.push_back(kv.first);
    }
    return keys;
}

ScenarioResult run_scenario(const ScenarioSpec &spec, const RunOptions &options) {
    const Params params(spec.name, spec.overrides);
    ScenarioResult result;
    switch (spec.name) {
        case ScenarioName::kFig2PhaseWeight: result = run_fig2(params); break;
        case ScenarioName::kFig3Noon: result = run_fig3(params, options); break;
        case ScenarioName::kFig5Fringes: result = run_fig5(params, options); break;
        case ScenarioName::kHomPair: result = run_hom(params, options); break;
        case ScenarioName::kWhichPathProbe:
        case ScenarioName::kEqualProbeRevival:
        case ScenarioName::kNegativeResult: result = run_probe(params, options); break;
    }
    result.name = spec.name;
    result.parameters = params.list();
    return result;
}

ScenarioResult run_which_path(int m5p, int m6p, std::pair<double, double> taps, const RunOptions &options) {
    ScenarioSpec spec{ScenarioName::kWhichPathProbe,
                      {{"m5p", std::to_string(m5p)},
                       {"m6p", std::to_string(m6p)},
                       {"tap5", format_number(taps.first)},
                       {"tap6", format_number(taps.second)}}};
    return run_scenario(spec, options);
}

ScenarioResult run_negative_result(const RunOptions &options) {
    return run_scenario({ScenarioName::kNegativeResult, {}}, options);
}

ScenarioResult run_network_scan(const SourceSpec &source, const InterferometerNetwork &network,
                                const OutcomeCounts &condition, DetectorId scan, const RunOptions &options) {
    ScenarioResult result;
    run_engines(result, source, network, condition, scan, options);
    return result;
}

std::vector<double> pointwise_deviation(const std::vector<OutcomeDistribution> &distributions) {
    if (distributions.empty()) {
        return {};
    }
    const std::size_t n = distributions.front().support.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t a = 0; a < distributions.size(); ++a) {
        if (distributions[a].support.size() != n) {
            throw std::invalid_argument("distributions have different supports");
        }
        for (std::size_t b = a + 1; b < distributions.size(); ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                out[i] = std::max(out[i], std::abs(distributions[a].support[i].probability -
                                                   distributions[b].support[i].probability));
            }
        }
    }
    return out;
}

double max_pairwise_deviation(const std::vector<OutcomeDistribution> &distributions) {
    const auto dev = pointwise_deviation(distributions);
    return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

}  // namespace noonsim
