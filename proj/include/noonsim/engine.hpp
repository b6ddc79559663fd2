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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noonsim/exact.hpp"
#include "noonsim/network.hpp"
#include "noonsim/numerics.hpp"

namespace noonsim {

/// Detector counts of one outcome. Detectors absent from the map count zero.
using OutcomeCounts = std::map<DetectorId, int>;

int total_count(const OutcomeCounts &counts);

enum class EngineChoice { kOracle, kClosedForm, kQuadrature };
enum class Precision { kExact, kFloat, kAuto };
enum class NormalizationDomain { kJoint, kConditional };

std::string_view engine_name(EngineChoice engine);
std::string_view precision_name(Precision precision);
std::string_view domain_name(NormalizationDomain domain);

/// Why a floating amplitude came out zero.
enum class ZeroKind {
    kNonZero,
    kStructural,  ///< no term contributes (particle conservation, empty support)
    kCancelled,   ///< terms existed but cancelled below the rounding floor
};

/// A detection amplitude, carried exactly or in log space.
///
/// Exact form: sqrt(prefactor_squared) * coefficient, where prefactor_squared
/// is the factorial ratio N_alpha! N_beta! / prod m_d! and coefficient lies in
/// Q(i, sqrt2). The square root is only taken when a probability is formed.
class AmplitudeValue {
  public:
    /// A zero coefficient is reported as kCancelled unless zero_kind says otherwise.
    static AmplitudeValue exact(BigRational prefactor_squared, SurdComplex coefficient,
                                ZeroKind zero_kind = ZeroKind::kNonZero);
    static AmplitudeValue approximate(LogComplex value, ZeroKind zero_kind);

    bool is_exact() const { return exact_.has_value(); }
    LogComplex value() const;
    double probability() const;
    /// ln |amplitude|^2, -inf for zero.
    double log_probability() const;
    std::optional<SurdReal> exact_probability() const;
    ZeroKind zero_kind() const;

    const std::vector<std::string> &notices() const { return notices_; }
    void add_notice(std::string notice) { notices_.push_back(std::move(notice)); }

  private:
    struct Exact {
        BigRational prefactor_squared;
        SurdComplex coefficient;
    };
    std::optional<Exact> exact_;
    LogComplex approx_;
    ZeroKind zero_kind_ = ZeroKind::kNonZero;
    std::vector<std::string> notices_;
};

/// Raised when a post-selection leaves no outcome with non-zero weight.
class ImpossiblePostSelection : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Amplitude <0| prod_d a_d^{m_d} |N_alpha N_beta> / sqrt(prod_d m_d!) by
/// direct expansion of prod_d (v_da x + v_db y)^{m_d}. Counts must name only
/// detectors of the network. Precision kAuto picks the exact route when the
/// network admits it.
AmplitudeValue amplitude_oracle(const SourceSpec &source, const InterferometerNetwork &network,
                                const OutcomeCounts &outcome, Precision precision = Precision::kAuto);

/// Same amplitude via the phase-state integral, evaluated by the trapezoid rule
/// on `nodes` uniform points (default 4(N+1)). Always floating point. Adds a
/// notice when nodes < N+1, where the rule aliases.
AmplitudeValue phase_quadrature_amplitude(const SourceSpec &source, const InterferometerNetwork &network,
                                          const OutcomeCounts &outcome, int nodes = 0);

/// Closed-form weight, unnormalised. log_value is -inf for zero.
struct ClosedFormValue {
    double log_value = 0.0;
    std::optional<BigRational> exact;

    double value() const;
};

/// NOON-arm weight m5! m6! |S|^2 with the triple sum over p, q, r of
///   e^{-i(p+q)(xi + pi/2)} (-1)^{p+r} /
///   [p!(m1-p)! q!(m2-q)! r!(m5-r)! (Na-p-q-r)! (p+q+r+m6-Na)!],
/// m6 = N - m1 - m2 - m5 and theta = pi/2. Reciprocal factorials of negative
/// integers are zero. Exact when xi is a quarter turn and precision allows;
/// the floating route sums in binary128.
ClosedFormValue prob_noon_closed(const SourceSpec &source, int m1, int m2, int m5, Phase xi,
                                 Precision precision = Precision::kAuto);

/// Constant K turning prob_noon_closed into the joint probability:
/// K = Na! Nb! m1! m2! / 4^N.
BigRational noon_closed_scale(const SourceSpec &source, int m1, int m2);

/// Fringe weight |S|^2 / (m7! m8!) with
///   S = sum_p (-1)^p / [p!(m1-p)!(Na-p-m8)!(m2+m8-Na+p)!],
/// m8 = N - m1 - m2 - m7, at theta = pi/2, xi = 0, zeta = 0, no taps. The
/// floating route sums in binary128.
ClosedFormValue prob_fringe_closed(const SourceSpec &source, int m1, int m2, int m7,
                                   Precision precision = Precision::kAuto);

/// K = Na! Nb! m1! m2! / 2^(N+M), M = m1 + m2.
BigRational fringe_closed_scale(const SourceSpec &source, int m1, int m2);

/// Q12(phi) = cos(phi/2)^m1 sin(phi/2)^m2, signed, evaluated in log space.
double q12(double phi, int m1, int m2);

/// argmax of Q12 over (0, pi), found by bisecting the sign of d/dphi ln Q12.
/// Stationarity gives tan^2(phi0/2) = m2/m1. Returns 0 when m2 = 0 and pi
/// when m1 = 0.
double q12_peak(int m1, int m2);

/// Phase-state weight e^{-i Nb phi} (1 + e^{i phi})^m1 (1 - e^{i phi})^m2.
struct PhaseWeight {
    int m1 = 0;
    int m2 = 0;
    int n_beta = 0;

    std::complex<double> evaluate(double phi) const;
};

struct OutcomeEntry {
    OutcomeCounts counts;
    double probability = 0.0;
    std::optional<SurdReal> exact_probability;
};

struct OutcomeDistribution {
    NormalizationDomain normalization_domain = NormalizationDomain::kConditional;
    OutcomeCounts conditioned_on;
    std::optional<DetectorId> scan_detector;
    std::optional<DetectorId> partner_detector;
    std::vector<OutcomeEntry> support;
    EngineChoice engine = EngineChoice::kOracle;
    /// kExact or kFloat after resolution.
    Precision precision = Precision::kFloat;
    /// Joint probability of the conditioned counts (sum of unnormalised weights).
    std::optional<double> condition_probability;
    std::vector<std::string> notices;

    /// Count at the scan detector for support entry i.
    int scan_value(std::size_t i) const;
    std::vector<double> probabilities() const;
};

/// True when the closed form for the chosen scan covers this network.
bool closed_form_applicable(const InterferometerNetwork &network, DetectorId scan_detector);

/// Post-selected distribution: the condition fixes every detector except the
/// scan detector and its partner; the scan runs over 0..N - sum(condition).
/// CLOSED_FORM falls back to ORACLE with a notice when it does not apply.
/// Throws ImpossiblePostSelection if every weight is zero and
/// std::invalid_argument for malformed conditions.
OutcomeDistribution conditional_distribution(const SourceSpec &source, const InterferometerNetwork &network,
                                             const OutcomeCounts &condition, DetectorId scan_detector,
                                             EngineChoice engine, Precision precision = Precision::kAuto);

/// Every outcome over all network detectors with sum N, normalised over the
/// full lattice.
OutcomeDistribution joint_distribution(const SourceSpec &source, const InterferometerNetwork &network,
                                       EngineChoice engine, Precision precision = Precision::kAuto);

/// P(scan = 0) + P(scan = max).
double noon_fidelity(const OutcomeDistribution &dist);

/// |sum_even - sum_odd| / (sum_even + sum_odd) over the scan count parity.
double fringe_visibility(const OutcomeDistribution &dist);

/// Half the L1 distance between two scans over the same support.
double total_variation_distance(const OutcomeDistribution &a, const OutcomeDistribution &b);

}  // namespace noonsim
