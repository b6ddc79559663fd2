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

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noonsim/exact.hpp"

namespace noonsim {

/// Particle numbers of the two Fock-state sources.
struct SourceSpec {
    int n_alpha = 0;
    int n_beta = 0;

    int total() const { return n_alpha + n_beta; }
    /// Throws std::invalid_argument for negative counts.
    void validate() const;
};

enum class DetectorId { k1, k2, k3, k4, k5, k6, k7, k8, k5Probe, k6Probe };

/// "1".."8", "5'" and "6'".
std::string_view detector_label(DetectorId id);
/// Accepts the labels above plus "5p" / "6p".
std::optional<DetectorId> parse_detector(std::string_view text);
/// Detector sharing the same output splitter (1<->2, 3<->4, 5<->6, 7<->8, 5'<->6').
DetectorId partner_detector(DetectorId id);

enum class TerminalPlane { kArms34, kArms56, kDetectors78, kDetectors78WithProbes, kSingleSplitter };

std::string_view plane_name(TerminalPlane plane);
std::optional<TerminalPlane> parse_plane(std::string_view text);

/// Angle stored as a multiple of pi so quarter turns are recognised exactly.
class Phase {
  public:
    constexpr Phase() = default;
    static constexpr Phase from_pi_units(double units) { return Phase(units); }

    constexpr double pi_units() const { return units_; }
    double radians() const;
    bool is_quarter_turn() const;
    /// e^{i phase}; exact components for quarter turns.
    std::complex<double> unit() const;
    /// e^{i phase} as an exact Gaussian integer, only for quarter turns.
    std::optional<GaussianRational> exact_unit() const;

    friend constexpr bool operator==(Phase a, Phase b) { return a.units_ == b.units_; }

  private:
    constexpr explicit Phase(double units) : units_(units) {}
    double units_ = 0.0;
};

/// A detector coefficient in floating point, plus its exact value when the
/// network admits one.
struct Coefficient {
    std::complex<double> value;
    std::optional<SurdComplex> exact;
};

/// a_d = v_alpha a_alpha + v_beta a_beta for one detector.
struct DetectorCoefficients {
    DetectorId detector_id;
    Coefficient v_alpha;
    Coefficient v_beta;
};

/// Parameters of a network as they appear in a plain-text config.
struct NetworkConfig {
    TerminalPlane plane = TerminalPlane::kArms56;
    Phase theta = Phase::from_pi_units(0.5);
    Phase xi;
    Phase zeta;
    double tap5 = 0.0;
    double tap6 = 0.0;
};

/// Interferometer with the derived per-detector coefficient table. Immutable
/// after construction.
struct InterferometerNetwork {
    Phase phase_theta;
    Phase phase_xi;
    Phase phase_zeta;
    // Fixed at 50-50: the side-detector coefficients below are pinned to the
    // half-amplitude form and are not parameterised.
    double side_tap_1 = 0.5;
    double side_tap_2 = 0.5;
    double probe_tap_5 = 0.0;
    double probe_tap_6 = 0.0;
    TerminalPlane terminal_plane = TerminalPlane::kArms56;
    std::vector<DetectorCoefficients> coefficient_table;

    /// True iff every coefficient carries an exact value.
    bool exact_capable() const;
    const DetectorCoefficients *find(DetectorId id) const;
    std::vector<DetectorId> detectors() const;
    NetworkConfig config() const;
};

/// Side detectors 1, 2 plus either the arms 3, 4 ahead of the middle splitter
/// or the outputs 5, 6 behind it.
///
///   a1 = (i e^{i theta} a_alpha - a_beta) / 2     a2 = (-e^{i theta} a_alpha + i a_beta) / 2
///   a5 = (-i e^{i xi} a_alpha - a_beta) / 2       a6 = (-e^{i xi} a_alpha - i a_beta) / 2
///   a3 = a_alpha / sqrt2                          a4 = a_beta / sqrt2
///
/// Throws std::invalid_argument for planes that need zeta.
InterferometerNetwork build_canonical_network(Phase theta, Phase xi, TerminalPlane plane);

/// Adds the final splitter (phase zeta on arm 5) feeding detectors 7, 8 and
/// optional probe taps on arms 5 and 6. A tap t transmits sqrt(1-t) towards
/// the final splitter and diverts i*sqrt(t) into the probe detector 5' / 6'.
///
///   a7 = (i e^{i zeta} s5 a5 + s6 a6) / sqrt2     a8 = (e^{i zeta} s5 a5 + i s6 a6) / sqrt2
///   a5' = i sqrt(t5) a5                           a6' = i sqrt(t6) a6
///
/// with s5 = sqrt(1 - t5), s6 = sqrt(1 - t6). With zero taps this equals
/// a7 = (u e^{i xi} a_alpha + v a_beta) / (2 sqrt2), a8 = (v e^{i xi} a_alpha - u a_beta) / (2 sqrt2),
/// u = e^{i zeta} - 1, v = -i (e^{i zeta} + 1). Probe detectors are present
/// only when a tap is non-zero.
InterferometerNetwork build_extended_network(Phase theta, Phase xi, Phase zeta, double probe_tap_5,
                                             double probe_tap_6);

/// One 50-50 splitter with outputs 1 and 2:
/// a1 = (a_alpha + i a_beta) / sqrt2, a2 = (i a_alpha + a_beta) / sqrt2.
InterferometerNetwork build_single_splitter_network();

InterferometerNetwork build_network(const NetworkConfig &config);

struct UnitarityReport {
    std::complex<double> alpha_sum;
    std::complex<double> beta_sum;
    std::complex<double> cross_sum;
    double max_deviation = 0.0;
    bool ok = true;
};

/// Sums sum_d |v_da|^2, sum_d |v_db|^2 and sum_d conj(v_da) v_db; ok iff they
/// are (1, 1, 0) within the tolerance.
UnitarityReport verify_unitarity(const InterferometerNetwork &network, double tolerance = 1e-12);

/// Splits "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Throws std::invalid_argument on a line without '='.
std::vector<std::pair<std::string, std::string>> parse_key_value_lines(std::string_view text);

/// Applies one config key (plane, theta, xi, zeta, tap5, tap6). Returns false
/// for keys it does not own; throws std::invalid_argument for bad values.
/// Phases are in units of pi.
bool set_network_key(NetworkConfig &config, std::string_view key, std::string_view value);

std::string format_network_config(const NetworkConfig &config);
NetworkConfig parse_network_config(std::string_view text);

/// Shortest text that parses back to the same double.
std::string format_number(double value);
/// 17 significant digits.
std::string format_number_17(double value);

}  // namespace noonsim
