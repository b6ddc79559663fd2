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

#include "noonsim/network.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace noonsim {
namespace {

// Coefficient algebra: floating value plus an exact shadow when available.
struct Amp {
    std::complex<double> v;
    std::optional<SurdComplex> e;
};

Amp operator*(const Amp &a, const Amp &b) {
    Amp out{a.v * b.v, std::nullopt};
    if (a.e && b.e) {
        out.e = *a.e * *b.e;
    }
    return out;
}

Amp operator+(const Amp &a, const Amp &b) {
    Amp out{a.v + b.v, std::nullopt};
    if (a.e && b.e) {
        out.e = *a.e + *b.e;
    }
    return out;
}

Amp operator-(const Amp &a) {
    Amp out{-a.v, std::nullopt};
    if (a.e) {
        out.e = -*a.e;
    }
    return out;
}

Amp constant(long re, long im, long den) {
    return {std::complex<double>(static_cast<double>(re) / den, static_cast<double>(im) / den),
            SurdComplex(GaussianRational(re, im, den))};
}

Amp half() { return constant(1, 0, 2); }
Amp imag_unit() { return constant(0, 1, 1); }
Amp zero_amp() { return constant(0, 0, 1); }

Amp inv_sqrt2() {
    return {std::complex<double>(1.0 / std::numbers::sqrt2, 0.0),
            SurdComplex(GaussianRational(0), GaussianRational(1, 0, 2))};
}

Amp phase_amp(Phase p) {
    Amp out{p.unit(), std::nullopt};
    if (auto u = p.exact_unit()) {
        out.e = SurdComplex(*u);
    }
    return out;
}

// sqrt(t) for a splitting ratio; exact for t in {0, 1/2, 1}.
Amp sqrt_ratio(double t) {
    if (t == 0.0) {
        return zero_amp();
    }
    if (t == 1.0) {
        return constant(1, 0, 1);
    }
    if (t == 0.5) {
        return inv_sqrt2();
    }
    return {std::complex<double>(std::sqrt(t), 0.0), std::nullopt};
}

struct Row {
    Amp alpha;
    Amp beta;
};

Row scale(const Amp &c, const Row &r) { return {c * r.alpha, c * r.beta}; }
Row add(const Row &a, const Row &b) { return {a.alpha + b.alpha, a.beta + b.beta}; }

DetectorCoefficients to_entry(DetectorId id, const Row &r) {
    return {id, Coefficient{r.alpha.v, r.alpha.e}, Coefficient{r.beta.v, r.beta.e}};
}

void check_phase(Phase p, const char *name) {
    if (!std::isfinite(p.pi_units())) {
        throw std::invalid_argument(std::string("phase ") + name + " must be finite");
    }
}

void check_tap(double t, const char *name) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

// Rows of the canonical network, shared by the extended builder.
Row row_a1(Phase theta) { return {half() * imag_unit() * phase_amp(theta), -half()}; }
Row row_a2(Phase theta) { return {-(half() * phase_amp(theta)), half() * imag_unit()}; }
Row row_a5(Phase xi) { return {-(half() * imag_unit() * phase_amp(xi)), -half()}; }
Row row_a6(Phase xi) { return {-(half() * phase_amp(xi)), -(half() * imag_unit())}; }

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const char *first = value.data();
    const char *last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("malformed number for '" + std::string(key) + "': '" + std::string(value) + "'");
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const char *ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

constexpr std::array<std::pair<DetectorId, std::string_view>, 10> kDetectorLabels{{
    {DetectorId::k1, "1"},
    {DetectorId::k2, "2"},
    {DetectorId::k3, "3"},
    {DetectorId::k4, "4"},
    {DetectorId::k5, "5"},
    {DetectorId::k6, "6"},
    {DetectorId::k7, "7"},
    {DetectorId::k8, "8"},
    {DetectorId::k5Probe, "5'"},
    {DetectorId::k6Probe, "6'"},
}};

constexpr std::array<std::pair<TerminalPlane, std::string_view>, 5> kPlaneNames{{
    {TerminalPlane::kArms34, "arms_3_4"},
    {TerminalPlane::kArms56, "arms_5_6"},
    {TerminalPlane::kDetectors78, "detectors_7_8"},
    {TerminalPlane::kDetectors78WithProbes, "detectors_7_8_with_probes"},
    {TerminalPlane::kSingleSplitter, "single_splitter"},
}};

}  // namespace

void SourceSpec::validate() const {
    if (n_alpha < 0 || n_beta < 0) {
        throw std::invalid_argument("source particle numbers must be non-negative");
    }
}

std::string_view detector_label(DetectorId id) {
    for (const auto &[d, label] : kDetectorLabels) {
        if (d == id) {
            return label;
        }
    }
    return "?";
}

std::optional<DetectorId> parse_detector(std::string_view text) {
    text = trim(text);
    if (text == "5p") {
        return DetectorId::k5Probe;
    }
    if (text == "6p") {
        return DetectorId::k6Probe;
    }
    for (const auto &[d, label] : kDetectorLabels) {
        if (label == text) {
            return d;
        }
    }
    return std::nullopt;
}

DetectorId partner_detector(DetectorId id) {
    switch (id) {
        case DetectorId::k1: return DetectorId::k2;
        case DetectorId::k2: return DetectorId::k1;
        case DetectorId::k3: return DetectorId::k4;
        case DetectorId::k4: return DetectorId::k3;
        case DetectorId::k5: return DetectorId::k6;
        case DetectorId::k6: return DetectorId::k5;
        case DetectorId::k7: return DetectorId::k8;
        case DetectorId::k8: return DetectorId::k7;
        case DetectorId::k5Probe: return DetectorId::k6Probe;
        case DetectorId::k6Probe: return DetectorId::k5Probe;
    }
    return id;
}

std::string_view plane_name(TerminalPlane plane) {
    for (const auto &[p, name] : kPlaneNames) {
        if (p == plane) {
            return name;
        }
    }
    return "?";
}

std::optional<TerminalPlane> parse_plane(std::string_view text) {
    text = trim(text);
    for (const auto &[p, name] : kPlaneNames) {
        if (name == text) {
            return p;
        }
    }
    return std::nullopt;
}

double Phase::radians() const { return units_ * std::numbers::pi; }

bool Phase::is_quarter_turn() const {
    double twice = units_ * 2.0;
    return std::isfinite(twice) && twice == std::round(twice);
}

std::complex<double> Phase::unit() const {
    if (is_quarter_turn()) {
        return exact_unit()->to_complex();
    }
    return std::polar(1.0, radians());
}

std::optional<GaussianRational> Phase::exact_unit() const {
    if (!is_quarter_turn()) {
        return std::nullopt;
    }
    auto quarter = static_cast<long long>(std::llround(units_ * 2.0)) % 4;
    if (quarter < 0) {
        quarter += 4;
    }
    switch (quarter) {
        case 0: return GaussianRational(1, 0);
        case 1: return GaussianRational(0, 1);
        case 2: return GaussianRational(-1, 0);
        default: return GaussianRational(0, -1);
    }
}

bool InterferometerNetwork::exact_capable() const {
    return std::all_of(coefficient_table.begin(), coefficient_table.end(), [](const DetectorCoefficients &d) {
        return d.v_alpha.exact.has_value() && d.v_beta.exact.has_value();
    });
}

const DetectorCoefficients *InterferometerNetwork::find(DetectorId id) const {
    for (const auto &d : coefficient_table) {
        if (d.detector_id == id) {
            return &d;
        }
    }
    return nullptr;
}

std::vector<DetectorId> InterferometerNetwork::detectors() const {
    std::vector<DetectorId> out;
    out.reserve(coefficient_table.size());
    for (const auto &d : coefficient_table) {
        out.push_back(d.detector_id);
    }
    return out;
}

NetworkConfig InterferometerNetwork::config() const {
    return {terminal_plane, phase_theta, phase_xi, phase_zeta, probe_tap_5, probe_tap_6};
}

InterferometerNetwork build_canonical_network(Phase theta, Phase xi, TerminalPlane plane) {
    if (plane != TerminalPlane::kArms34 && plane != TerminalPlane::kArms56) {
        throw std::invalid_argument("build_canonical_network: plane " + std::string(plane_name(plane)) +
                                    " needs the extended network");
    }
    check_phase(theta, "theta");
    check_phase(xi, "xi");
    InterferometerNetwork net;
    net.phase_theta = theta;
    net.phase_xi = xi;
    net.terminal_plane = plane;
    net.coefficient_table.push_back(to_entry(DetectorId::k1, row_a1(theta)));
    net.coefficient_table.push_back(to_entry(DetectorId::k2, row_a2(theta)));
    if (plane == TerminalPlane::kArms56) {
        net.coefficient_table.push_back(to_entry(DetectorId::k5, row_a5(xi)));
        net.coefficient_table.push_back(to_entry(DetectorId::k6, row_a6(xi)));
    } else {
        net.coefficient_table.push_back(to_entry(DetectorId::k3, {inv_sqrt2(), zero_amp()}));
        net.coefficient_table.push_back(to_entry(DetectorId::k4, {zero_amp(), inv_sqrt2()}));
    }
    return net;
}

InterferometerNetwork build_extended_network(Phase theta, Phase xi, Phase zeta, double probe_tap_5,
                                             double probe_tap_6) {
    check_phase(theta, "theta");
    check_phase(xi, "xi");
    check_phase(zeta, "zeta");
    check_tap(probe_tap_5, "probe_tap_5");
    check_tap(probe_tap_6, "probe_tap_6");

    const bool probes = probe_tap_5 > 0.0 || probe_tap_6 > 0.0;
    InterferometerNetwork net;
    net.phase_theta = theta;
    net.phase_xi = xi;
    net.phase_zeta = zeta;
    net.probe_tap_5 = probe_tap_5;
    net.probe_tap_6 = probe_tap_6;
    net.terminal_plane = probes ? TerminalPlane::kDetectors78WithProbes : TerminalPlane::kDetectors78;

    const Row a5 = row_a5(xi);
    const Row a6 = row_a6(xi);
    const Amp s5 = sqrt_ratio(1.0 - probe_tap_5);
    const Amp s6 = sqrt_ratio(1.0 - probe_tap_6);
    const Amp rot = phase_amp(zeta);
    const Amp i = imag_unit();

    const Row a7 = scale(inv_sqrt2(), add(scale(i * rot * s5, a5), scale(s6, a6)));
    const Row a8 = scale(inv_sqrt2(), add(scale(rot * s5, a5), scale(i * s6, a6)));

    net.coefficient_table.push_back(to_entry(DetectorId::k1, row_a1(theta)));
    net.coefficient_table.push_back(to_entry(DetectorId::k2, row_a2(theta)));
    net.coefficient_table.push_back(to_entry(DetectorId::k7, a7));
    net.coefficient_table.push_back(to_entry(DetectorId::k8, a8));
    if (probes) {
        net.coefficient_table.push_back(to_entry(DetectorId::k5Probe, scale(i * sqrt_ratio(probe_tap_5), a5)));
        net.coefficient_table.push_back(to_entry(DetectorId::k6Probe, scale(i * sqrt_ratio(probe_tap_6), a6)));
    }
    return net;
}

InterferometerNetwork build_single_splitter_network() {
    InterferometerNetwork net;
    net.terminal_plane = TerminalPlane::kSingleSplitter;
    const Amp i = imag_unit();
    net.coefficient_table.push_back(to_entry(DetectorId::k1, {inv_sqrt2(), inv_sqrt2() * i}));
    net.coefficient_table.push_back(to_entry(DetectorId::k2, {inv_sqrt2() * i, inv_sqrt2()}));
    return net;
}

InterferometerNetwork build_network(const NetworkConfig &config) {
    switch (config.plane) {
        case TerminalPlane::kArms34:
        case TerminalPlane::kArms56:
            if (config.tap5 != 0.0 || config.tap6 != 0.0) {
                throw std::invalid_argument("probe taps need plane detectors_7_8");
            }
            return build_canonical_network(config.theta, config.xi, config.plane);
        case TerminalPlane::kDetectors78:
        case TerminalPlane::kDetectors78WithProbes:
            return build_extended_network(config.theta, config.xi, config.zeta, config.tap5, config.tap6);
        case TerminalPlane::kSingleSplitter:
            return build_single_splitter_network();
    }
    throw std::invalid_argument("unknown terminal plane");
}

UnitarityReport verify_unitarity(const InterferometerNetwork &network, double tolerance) {
    UnitarityReport report;
    for (const auto &d : network.coefficient_table) {
        report.alpha_sum += std::conj(d.v_alpha.value) * d.v_alpha.value;
        report.beta_sum += std::conj(d.v_beta.value) * d.v_beta.value;
        report.cross_sum += std::conj(d.v_alpha.value) * d.v_beta.value;
    }
    report.max_deviation = std::max({std::abs(report.alpha_sum - 1.0), std::abs(report.beta_sum - 1.0),
                                     std::abs(report.cross_sum)});
    report.ok = report.max_deviation <= tolerance;
    return report;
}

std::vector<std::pair<std::string, std::string>> parse_key_value_lines(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": empty key");
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

bool set_network_key(NetworkConfig &config, std::string_view key, std::string_view value) {
    if (key == "plane") {
        auto plane = parse_plane(value);
        if (!plane) {
            throw std::invalid_argument("unknown plane '" + std::string(value) +
                                        "' (arms_3_4, arms_5_6, detectors_7_8, "
                                        "detectors_7_8_with_probes, single_splitter)");
        }
        config.plane = *plane;
    } else if (key == "theta") {
        config.theta = Phase::from_pi_units(parse_double(key, value));
    } else if (key == "xi") {
        config.xi = Phase::from_pi_units(parse_double(key, value));
    } else if (key == "zeta") {
        config.zeta = Phase::from_pi_units(parse_double(key, value));
    } else if (key == "tap5") {
        config.tap5 = parse_double(key, value);
        check_tap(config.tap5, "tap5");
    } else if (key == "tap6") {
        config.tap6 = parse_double(key, value);
        check_tap(config.tap6, "tap6");
    } else {
        return false;
    }
    return true;
}

std::string format_network_config(const NetworkConfig &config) {
    std::ostringstream out;
    out << "plane = " << plane_name(config.plane) << "\n";
    out << "theta = " << format_number(config.theta.pi_units()) << "\n";
    out << "xi = " << format_number(config.xi.pi_units()) << "\n";
    out << "zeta = " << format_number(config.zeta.pi_units()) << "\n";
    out << "tap5 = " << format_number(config.tap5) << "\n";
    out << "tap6 = " << format_number(config.tap6) << "\n";
    return out.str();
}

NetworkConfig parse_network_config(std::string_view text) {
    NetworkConfig config;
    for (const auto &[key, value] : parse_key_value_lines(text)) {
        if (!set_network_key(config, key, value)) {
            throw std::invalid_argument("unknown network key '" + key + "'");
        }
    }
    return config;
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_number_17(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), ptr);
}

}  // namespace noonsim
