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

#include "noonsim/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

namespace noonsim::cli {
namespace {

const std::map<std::string, EngineSelection> kEngines = {{"oracle", EngineSelection::kOracle},
                                                         {"closed", EngineSelection::kClosed},
                                                         {"quadrature", EngineSelection::kQuadrature},
                                                         {"all", EngineSelection::kAll}};
const std::map<std::string, Precision> kPrecisions = {
    {"exact", Precision::kExact}, {"float", Precision::kFloat}, {"auto", Precision::kAuto}};
const std::map<std::string, OutputFormat> kFormats = {{"csv", OutputFormat::kCsv}, {"json", OutputFormat::kJson}};

std::string scenario_list() {
    std::string out;
    for (ScenarioName s : all_scenarios()) {
        out += (out.empty() ? "" : ", ") + std::string(scenario_cli_name(s));
    }
    return out;
}

std::pair<std::string, std::string> split_override(const std::string &text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw UsageError("malformed override '" + text + "', expected KEY=VALUE");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunOptions run_options(EngineSelection engine, Precision precision) {
    RunOptions options;
    options.precision = precision;
    switch (engine) {
        case EngineSelection::kOracle: options.engines = {EngineChoice::kOracle}; break;
        case EngineSelection::kClosed: options.engines = {EngineChoice::kClosedForm}; break;
        case EngineSelection::kQuadrature: options.engines = {EngineChoice::kQuadrature}; break;
        case EngineSelection::kAll:
            options.engines = {EngineChoice::kOracle, EngineChoice::kClosedForm, EngineChoice::kQuadrature};
            break;
    }
    return options;
}

int parse_count(const std::string &key, const std::string &text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
        throw UsageError(key + " must be a non-negative integer, got '" + text + "'");
    }
    return value;
}

DetectorId default_scan(TerminalPlane plane) {
    switch (plane) {
        case TerminalPlane::kArms34: return DetectorId::k3;
        case TerminalPlane::kArms56: return DetectorId::k5;
        case TerminalPlane::kSingleSplitter: return DetectorId::k1;
        default: return DetectorId::k7;
    }
}

// A raw network run: network keys plus n_alpha, n_beta, scan and
// condition.<detector> entries.
ScenarioResult run_raw_network(const ParameterList &entries, const RunOptions &options) {
    NetworkConfig config;
    std::optional<int> n_alpha, n_beta;
    std::optional<DetectorId> scan;
    OutcomeCounts condition;
    for (const auto &[key, value] : entries) {
        try {
            if (set_network_key(config, key, value)) {
                continue;
            }
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        if (key == "n_alpha") {
            n_alpha = parse_count(key, value);
        } else if (key == "n_beta") {
            n_beta = parse_count(key, value);
        } else if (key == "scan") {
            scan = parse_detector(value);
            if (!scan) {
                throw UsageError("unknown scan detector '" + value + "'");
            }
        } else if (key.rfind("condition.", 0) == 0) {
            auto id = parse_detector(key.substr(10));
            if (!id) {
                throw UsageError("unknown detector in '" + key + "'");
            }
            condition[*id] = parse_count(key, value);
        } else {
            throw UsageError("unknown network key '" + key +
                             "' (valid: plane, theta, xi, zeta, tap5, tap6, n_alpha, n_beta, scan, "
                             "condition.<detector>)");
        }
    }
    if (!n_alpha || !n_beta) {
        throw UsageError("a network run needs n_alpha and n_beta");
    }
    InterferometerNetwork net;
    try {
        net = build_network(config);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const DetectorId scan_id = scan.value_or(default_scan(net.terminal_plane));
    if (net.find(scan_id) == nullptr) {
        throw UsageError("scan detector " + std::string(detector_label(scan_id)) + " is not in plane " +
                         std::string(plane_name(net.terminal_plane)));
    }
    std::string missing;
    for (DetectorId id : net.detectors()) {
        if (id != scan_id && id != partner_detector(scan_id) && !condition.contains(id)) {
            missing += " condition." + std::string(detector_label(id));
        }
    }
    if (!missing.empty()) {
        throw UsageError("post-selection must fix:" + missing);
    }
    const SourceSpec source{*n_alpha, *n_beta};
    ScenarioResult result;
    try {
        result = run_network_scan(source, net, condition, scan_id, options);
    } catch (const ImpossiblePostSelection &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }

    // Resolved, re-ingestable parameters.
    const NetworkConfig resolved = net.config();
    result.parameters = {{"plane", std::string(plane_name(resolved.plane))},
                         {"theta", format_number(resolved.theta.pi_units())},
                         {"xi", format_number(resolved.xi.pi_units())},
                         {"zeta", format_number(resolved.zeta.pi_units())},
                         {"tap5", format_number(resolved.tap5)},
                         {"tap6", format_number(resolved.tap6)},
                         {"n_alpha", std::to_string(source.n_alpha)},
                         {"n_beta", std::to_string(source.n_beta)},
                         {"scan", std::string(detector_label(scan_id))}};
    for (const auto &[id, count] : condition) {
        result.parameters.emplace_back("condition." + std::string(detector_label(id)), std::to_string(count));
    }
    return result;
}

template <class Map>
std::string key_of(const Map &map, typename Map::mapped_type value) {
    for (const auto &[k, v] : map) {
        if (v == value) {
            return k;
        }
    }
    return "?";
}

std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::string json_number(double x) { return std::isfinite(x) ? format_number_17(x) : "null"; }

std::string json_optional(const std::optional<double> &x) { return x ? json_number(*x) : "null"; }

}  // namespace

std::string_view engine_selection_name(EngineSelection engine) {
    switch (engine) {
        case EngineSelection::kOracle: return "oracle";
        case EngineSelection::kClosed: return "closed";
        case EngineSelection::kQuadrature: return "quadrature";
        case EngineSelection::kAll: return "all";
    }
    return "?";
}

std::optional<RunConfig> parse_args(const std::vector<std::string> &args, std::ostream &out) {
    CLI::App app{"Two-source Fock-state interferometer simulator", "noonsim"};
    std::string scenario, network, replay, engine = "oracle", precision = "auto", format = "csv", out_path;
    std::vector<std::string> sets;
    app.add_option("--scenario", scenario, "Preset: " + scenario_list());
    app.add_option("--network", network, "Key = value network description file");
    app.add_option("--replay", replay, "JSON output of an earlier run to reproduce");
    app.add_option("--set", sets, "KEY=VALUE override, repeatable")->allow_extra_args(false);
    app.add_option("--engine", engine, "oracle, closed, quadrature or all")
        ->check(CLI::IsMember({"oracle", "closed", "quadrature", "all"}));
    app.add_option("--precision", precision, "exact, float or auto")->check(CLI::IsMember({"exact", "float", "auto"}));
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Output file (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    RunConfig config;
    const int sources = !scenario.empty() + !network.empty() + !replay.empty();
    if (sources == 0) {
        throw UsageError("give one of --scenario, --network or --replay (scenarios: " + scenario_list() + ")");
    }
    if (sources > 1) {
        throw UsageError("--scenario, --network and --replay are mutually exclusive");
    }
    if (!scenario.empty()) {
        config.scenario = parse_scenario_name(scenario);
        if (!config.scenario) {
            throw UsageError("unknown scenario '" + scenario + "' (valid: " + scenario_list() + ")");
        }
    }
    if (!network.empty()) {
        config.network_path = network;
    }
    if (!replay.empty()) {
        config.replay_path = replay;
    }
    for (const auto &s : sets) {
        config.overrides.push_back(split_override(s));
    }
    config.engine = kEngines.at(engine);
    config.precision = kPrecisions.at(precision);
    config.format = kFormats.at(format);
    if (!out_path.empty()) {
        config.out_path = out_path;
    }
    return config;
}

RunReport execute(const RunConfig &config_in) {
    RunConfig config = config_in;
    std::optional<std::string> source;
    ParameterList parameters;

    if (config.replay_path) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(*config.replay_path));
            source = doc.at("source").get<std::string>();
            config.engine = kEngines.at(doc.at("engine").get<std::string>());
            config.precision = kPrecisions.at(doc.at("precision").get<std::string>());
            for (const auto &[key, value] : doc.at("parameters").items()) {
                parameters.emplace_back(key, value.get<std::string>());
            }
        } catch (const nlohmann::json::exception &e) {
            throw UsageError("cannot replay " + *config.replay_path + ": " + e.what());
        } catch (const std::out_of_range &) {
            throw UsageError("cannot replay " + *config.replay_path + ": unknown engine or precision");
        }
        if (*source == "network") {
            config.network_path.reset();
        } else {
            config.scenario = parse_scenario_name(*source);
            if (!config.scenario) {
                throw UsageError("cannot replay unknown scenario '" + *source + "'");
            }
        }
    } else if (config.network_path) {
        source = "network";
        try {
            parameters = parse_key_value_lines(read_file(*config.network_path));
        } catch (const std::invalid_argument &e) {
            throw UsageError(*config.network_path + ": " + e.what());
        }
    } else {
        source = std::string(scenario_cli_name(*config.scenario));
    }
    parameters.insert(parameters.end(), config.overrides.begin(), config.overrides.end());

    RunReport report;
    report.source = *source;
    report.engine = config.engine;
    report.precision = config.precision;
    const RunOptions options = run_options(config.engine, config.precision);
    if (report.source == "network") {
        report.result = run_raw_network(parameters, options);
        return report;
    }
    try {
        report.result = run_scenario({*config.scenario, parameters}, options);
    } catch (const ImpossiblePostSelection &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return report;
}

std::string format_csv(const RunReport &report) {
    const ScenarioResult &r = report.result;
    std::ostringstream out;
    if (r.is_curve()) {
        out << "phi,q12_value\n";
        for (const auto &p : r.curve) {
            out << format_number_17(p.phi) << ',' << format_number_17(p.q12_value) << '\n';
        }
        return out.str();
    }
    const bool with_deviation = report.engine == EngineSelection::kAll;
    out << "scan_variable,probability,engine,precision" << (with_deviation ? ",max_cross_engine_deviation" : "")
        << '\n';
    const auto deviation = pointwise_deviation(r.distributions);
    for (const auto &d : r.distributions) {
        for (std::size_t i = 0; i < d.support.size(); ++i) {
            out << d.scan_value(i) << ',' << format_number_17(d.support[i].probability) << ','
                << engine_name(d.engine) << ',' << precision_name(d.precision);
            if (with_deviation) {
                out << ',' << format_number_17(deviation[i]);
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string format_json(const RunReport &report) {
    const ScenarioResult &r = report.result;
    std::ostringstream out;
    out << "{\n";
    out << "  \"source\": " << json_string(report.source) << ",\n";
    out << "  \"engine\": " << json_string(engine_selection_name(report.engine)) << ",\n";
    out << "  \"precision\": " << json_string(key_of(kPrecisions, report.precision)) << ",\n";
    out << "  \"parameters\": {";
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
        out << (i ? ", " : "") << json_string(r.parameters[i].first) << ": " << json_string(r.parameters[i].second);
    }
    out << "},\n";
    out << "  \"metrics\": {\"noon_fidelity\": " << json_optional(r.noon_fidelity)
        << ", \"fringe_visibility\": " << json_optional(r.fringe_visibility)
        << ", \"condition_probability\": " << json_optional(r.condition_probability);
    for (const auto &[key, value] : r.extra_metrics) {
        out << ", " << json_string(key) << ": " << json_number(value);
    }
    out << "},\n";
    out << "  \"max_cross_engine_deviation\": " << json_optional(r.max_cross_engine_deviation) << ",\n";

    out << "  \"distributions\": [";
    for (std::size_t k = 0; k < r.distributions.size(); ++k) {
        const auto &d = r.distributions[k];
        out << (k ? ",\n    " : "\n    ") << "{\"engine\": " << json_string(engine_name(d.engine))
            << ", \"precision\": " << json_string(precision_name(d.precision))
            << ", \"normalization_domain\": " << json_string(domain_name(d.normalization_domain))
            << ", \"scan_detector\": " << json_string(d.scan_detector ? detector_label(*d.scan_detector) : "")
            << ", \"conditioned_on\": {";
        bool first = true;
        for (const auto &[id, count] : d.conditioned_on) {
            out << (first ? "" : ", ") << json_string(detector_label(id)) << ": " << count;
            first = false;
        }
        out << "}, \"condition_probability\": " << json_optional(d.condition_probability) << "}";
    }
    out << (r.distributions.empty() ? "],\n" : "\n  ],\n");

    out << "  \"rows\": [";
    const bool with_deviation = report.engine == EngineSelection::kAll;
    const auto deviation = pointwise_deviation(r.distributions);
    bool first_row = true;
    for (const auto &d : r.distributions) {
        for (std::size_t i = 0; i < d.support.size(); ++i) {
            out << (first_row ? "\n    " : ",\n    ") << "{\"scan_variable\": " << d.scan_value(i)
                << ", \"probability\": " << json_number(d.support[i].probability)
                << ", \"engine\": " << json_string(engine_name(d.engine))
                << ", \"precision\": " << json_string(precision_name(d.precision));
            if (with_deviation) {
                out << ", \"max_cross_engine_deviation\": " << json_number(deviation[i]);
            }
            out << "}";
            first_row = false;
        }
    }
    for (const auto &p : r.curve) {
        out << (first_row ? "\n    " : ",\n    ") << "{\"phi\": " << json_number(p.phi)
            << ", \"q12_value\": " << json_number(p.q12_value) << "}";
        first_row = false;
    }
    out << (first_row ? "],\n" : "\n  ],\n");

    out << "  \"notices\": [";
    for (std::size_t i = 0; i < r.notices.size(); ++i) {
        out << (i ? ", " : "") << json_string(r.notices[i]);
    }
    out << "]\n}\n";
    return out.str();
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::optional<RunConfig> config;
    RunReport report;
    try {
        config = parse_args(args, out);
        if (!config) {
            return kExitOk;
        }
        report = execute(*config);
    } catch (const UsageError &e) {
        err << "noonsim: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "noonsim: " << e.what() << "\n";
        return kExitRunFailed;
    }

    const std::string text = config->format == OutputFormat::kJson ? format_json(report) : format_csv(report);
    if (config->out_path) {
        std::ofstream file(*config->out_path, std::ios::binary | std::ios::trunc);
        if (!file || !(file << text) || !file.flush()) {
            err << "noonsim: cannot write " << *config->out_path << "\n";
            return kExitIo;
        }
    } else {
        out << text;
    }
    for (const auto &n : report.result.notices) {
        err << "notice: " << n << "\n";
    }
    const auto &dev = report.result.max_cross_engine_deviation;
    if (report.engine == EngineSelection::kAll && dev && !(*dev < kMaxEngineDeviation)) {
        err << "noonsim: engines disagree by " << format_number_17(*dev) << "\n";
        return kExitDeviation;
    }
    return kExitOk;
}

}  // namespace noonsim::cli
