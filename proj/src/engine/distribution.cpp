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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "noonsim/engine.hpp"
#include "parallel.hpp"

namespace noonsim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Unnormalised weight of one outcome: exact when the route allows it,
// otherwise its natural log.
struct Weight {
    std::optional<SurdReal> exact;
    double log_value = kNegInf;
    std::vector<std::string> notices;
};

enum class ClosedKind { kNone, kNoon, kFringe };

bool phase_is(Phase p, long re, long im) {
    auto u = p.exact_unit();
    return u && *u == GaussianRational(re, im);
}

ClosedKind closed_kind(const InterferometerNetwork &network) {
    if (!phase_is(network.phase_theta, 0, 1)) {
        return ClosedKind::kNone;
    }
    if (network.terminal_plane == TerminalPlane::kArms56) {
        return ClosedKind::kNoon;
    }
    if (network.terminal_plane == TerminalPlane::kDetectors78 && phase_is(network.phase_xi, 1, 0) &&
        phase_is(network.phase_zeta, 1, 0)) {
        return ClosedKind::kFringe;
    }
    return ClosedKind::kNone;
}

int count_at(const OutcomeCounts &counts, DetectorId id) {
    auto it = counts.find(id);
    return it == counts.end() ? 0 : it->second;
}

Weight weight_from_closed(const ClosedFormValue &v, const BigRational &scale) {
    Weight w;
    if (v.exact) {
        w.exact = SurdReal(*v.exact * scale);
        w.log_value = log_abs(*w.exact);
    } else {
        w.log_value = std::isinf(v.log_value) ? kNegInf : v.log_value + log_abs(scale);
    }
    return w;
}

Weight outcome_weight(const SourceSpec &source, const InterferometerNetwork &network, const OutcomeCounts &counts,
                      EngineChoice engine, Precision precision) {
    Weight w;
    switch (engine) {
        case EngineChoice::kOracle: {
            AmplitudeValue a = amplitude_oracle(source, network, counts, precision);
            w.exact = a.exact_probability();
            w.log_value = a.log_probability();
            w.notices = a.notices();
            return w;
        }
        case EngineChoice::kQuadrature: {
            AmplitudeValue a = phase_quadrature_amplitude(source, network, counts);
            w.log_value = a.log_probability();
            w.notices = a.notices();
            return w;
        }
        case EngineChoice::kClosedForm: {
            const int m1 = count_at(counts, DetectorId::k1);
            const int m2 = count_at(counts, DetectorId::k2);
            if (closed_kind(network) == ClosedKind::kNoon) {
                ClosedFormValue v =
                    prob_noon_closed(source, m1, m2, count_at(counts, DetectorId::k5), network.phase_xi, precision);
                return weight_from_closed(v, noon_closed_scale(source, m1, m2));
            }
            ClosedFormValue v = prob_fringe_closed(source, m1, m2, count_at(counts, DetectorId::k7), precision);
            return weight_from_closed(v, fringe_closed_scale(source, m1, m2));
        }
    }
    return w;
}

// Resolves the engine and precision for a run and records any fallback.
std::pair<EngineChoice, Precision> resolve_run(const InterferometerNetwork &network, bool closed_ok,
                                               EngineChoice engine, Precision precision,
                                               std::vector<std::string> &notices) {
    if (engine == EngineChoice::kClosedForm && !closed_ok) {
        notices.emplace_back("closed form does not cover this network; fell back to oracle");
        engine = EngineChoice::kOracle;
    }
    if (engine == EngineChoice::kQuadrature) {
        if (precision == Precision::kExact) {
            notices.emplace_back("quadrature is floating point only; precision set to float");
        }
        return {engine, Precision::kFloat};
    }
    if (precision == Precision::kAuto) {
        precision = network.exact_capable() ? Precision::kExact : Precision::kFloat;
    } else if (precision == Precision::kExact && !network.exact_capable()) {
        throw std::invalid_argument("exact precision needs quarter-turn phases and taps in {0, 1/2, 1}");
    }
    return {engine, precision};
}

void merge_notices(std::vector<std::string> &into, const std::vector<std::string> &from) {
    for (const auto &n : from) {
        if (std::find(into.begin(), into.end(), n) == into.end()) {
            into.push_back(n);
        }
    }
}

void enumerate_compositions(std::size_t slot, int remaining, const std::vector<DetectorId> &detectors,
                            OutcomeCounts &current, std::vector<OutcomeCounts> &out) {
    if (slot + 1 == detectors.size()) {
        current[detectors[slot]] = remaining;
        out.push_back(current);
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        current[detectors[slot]] = c;
        enumerate_compositions(slot + 1, remaining - c, detectors, current, out);
    }
}

}  // namespace

std::string_view engine_name(EngineChoice engine) {
    switch (engine) {
        case EngineChoice::kOracle: return "oracle";
        case EngineChoice::kClosedForm: return "closed";
        case EngineChoice::kQuadrature: return "quadrature";
    }
    return "?";
}

std::string_view precision_name(Precision precision) {
    switch (precision) {
        case Precision::kExact: return "exact";
        case Precision::kFloat: return "float";
        case Precision::kAuto: return "auto";
    }
    return "?";
}

std::string_view domain_name(NormalizationDomain domain) {
    return domain == NormalizationDomain::kJoint ? "JOINT" : "CONDITIONAL";
}

int OutcomeDistribution::scan_value(std::size_t i) const {
    if (!scan_detector) {
        throw std::logic_error("distribution has no scan detector");
    }
    return count_at(support.at(i).counts, *scan_detector);
}

std::vector<double> OutcomeDistribution::probabilities() const {
    std::vector<double> out;
    out.reserve(support.size());
    for (const auto &e : support) {
        out.push_back(e.probability);
    }
    return out;
}

bool closed_form_applicable(const InterferometerNetwork &network, DetectorId scan_detector) {
    switch (closed_kind(network)) {
        case ClosedKind::kNoon: return scan_detector == DetectorId::k5 || scan_detector == DetectorId::k6;
        case ClosedKind::kFringe: return scan_detector == DetectorId::k7 || scan_detector == DetectorId::k8;
        case ClosedKind::kNone: return false;
    }
    return false;
}

OutcomeDistribution conditional_distribution(const SourceSpec &source, const InterferometerNetwork &network,
                                             const OutcomeCounts &condition, DetectorId scan_detector,
                                             EngineChoice engine, Precision precision) {
    source.validate();
    const DetectorId partner = partner_detector(scan_detector);
    if (network.find(scan_detector) == nullptr || network.find(partner) == nullptr) {
        throw std::invalid_argument("scan detector " + std::string(detector_label(scan_detector)) +
                                    " and its partner must both be in the network");
    }
    for (const auto &[id, count] : condition) {
        if (id == scan_detector || id == partner) {
            throw std::invalid_argument("condition may not fix the scan detector or its partner");
        }
        if (network.find(id) == nullptr) {
            throw std::invalid_argument("condition names detector " + std::string(detector_label(id)) +
                                        " which is not in the network");
        }
        if (count < 0) {
            throw std::invalid_argument("condition counts must be non-negative");
        }
    }
    for (DetectorId id : network.detectors()) {
        if (id != scan_detector && id != partner && !condition.contains(id)) {
            throw std::invalid_argument("condition must fix detector " + std::string(detector_label(id)));
        }
    }

    OutcomeDistribution dist;
    dist.normalization_domain = NormalizationDomain::kConditional;
    dist.conditioned_on = condition;
    dist.scan_detector = scan_detector;
    dist.partner_detector = partner;
    std::tie(dist.engine, dist.precision) =
        resolve_run(network, closed_form_applicable(network, scan_detector), engine, precision, dist.notices);

    const int remaining = source.total() - total_count(condition);
    if (remaining < 0) {
        throw ImpossiblePostSelection("impossible post-selection: condition holds " +
                                      std::to_string(total_count(condition)) + " particles but N = " +
                                      std::to_string(source.total()));
    }

    for (int s = 0; s <= remaining; ++s) {
        OutcomeCounts counts = condition;
        counts[scan_detector] = s;
        counts[partner] = remaining - s;
        dist.support.push_back({std::move(counts), 0.0, std::nullopt});
    }
    const auto weights = detail::parallel_map(dist.support.size(), [&](std::size_t i) {
        return outcome_weight(source, network, dist.support[i].counts, dist.engine, dist.precision);
    });
    for (const auto &w : weights) {
        merge_notices(dist.notices, w.notices);
    }

    if (dist.precision == Precision::kExact) {
        SurdReal total;
        for (const auto &w : weights) {
            total += *w.exact;
        }
        if (is_zero(total)) {
            throw ImpossiblePostSelection("impossible post-selection: every outcome has zero probability");
        }
        for (std::size_t i = 0; i < weights.size(); ++i) {
            SurdReal p = *weights[i].exact / total;
            dist.support[i].probability = to_double(p);
            dist.support[i].exact_probability = std::move(p);
        }
        dist.condition_probability = to_double(total);
        return dist;
    }

    double top = kNegInf;
    for (const auto &w : weights) {
        top = std::max(top, w.log_value);
    }
    if (std::isinf(top)) {
        throw ImpossiblePostSelection("impossible post-selection: every outcome has zero probability");
    }
    CompensatedSum total;
    std::vector<double> scaled(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        scaled[i] = std::exp(weights[i].log_value - top);
        total.add(scaled[i]);
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        dist.support[i].probability = scaled[i] / total.value();
    }
    dist.condition_probability = std::exp(top) * total.value();
    return dist;
}

OutcomeDistribution joint_distribution(const SourceSpec &source, const InterferometerNetwork &network,
                                       EngineChoice engine, Precision precision) {
    source.validate();
    const std::vector<DetectorId> detectors = network.detectors();
    if (detectors.empty()) {
        throw std::invalid_argument("network has no detectors");
    }
    OutcomeDistribution dist;
    dist.normalization_domain = NormalizationDomain::kJoint;
    const ClosedKind kind = closed_kind(network);
    std::tie(dist.engine, dist.precision) =
        resolve_run(network, kind != ClosedKind::kNone, engine, precision, dist.notices);

    std::vector<OutcomeCounts> outcomes;
    OutcomeCounts current;
    enumerate_compositions(0, source.total(), detectors, current, outcomes);
    const auto weights = detail::parallel_map(outcomes.size(), [&](std::size_t i) {
        return outcome_weight(source, network, outcomes[i], dist.engine, dist.precision);
    });

    // Joint probabilities are physical already; they are reported as computed
    // and their total is kept for the completeness check.
    CompensatedSum total;
    SurdReal exact_total;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        merge_notices(dist.notices, weights[i].notices);
        OutcomeEntry entry{std::move(outcomes[i]), 0.0, weights[i].exact};
        if (entry.exact_probability) {
            entry.probability = to_double(*entry.exact_probability);
            exact_total += *entry.exact_probability;
        } else {
            entry.probability = std::isinf(weights[i].log_value) ? 0.0 : std::exp(weights[i].log_value);
        }
        total.add(entry.probability);
        dist.support.push_back(std::move(entry));
    }
    dist.condition_probability = dist.precision == Precision::kExact ? to_double(exact_total) : total.value();
    return dist;
}

double noon_fidelity(const OutcomeDistribution &dist) {
    if (dist.support.empty()) {
        return 0.0;
    }
    int top = 0;
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        top = std::max(top, dist.scan_value(i));
    }
    double f = 0.0;
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        const int v = dist.scan_value(i);
        if (v == 0 || v == top) {
            f += dist.support[i].probability;
        }
    }
    return f;
}

double fringe_visibility(const OutcomeDistribution &dist) {
    CompensatedSum even, odd;
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        if (dist.scan_value(i) % 2 == 0) {
            even.add(dist.support[i].probability);
        } else {
            odd.add(dist.support[i].probability);
        }
    }
    const double total = even.value() + odd.value();
    return total > 0.0 ? std::abs(even.value() - odd.value()) / total : 0.0;
}

double total_variation_distance(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    if (a.support.size() != b.support.size()) {
        throw std::invalid_argument("total_variation_distance: supports differ in size");
    }
    CompensatedSum l1;
    for (std::size_t i = 0; i < a.support.size(); ++i) {
        l1.add(std::abs(a.support[i].probability - b.support[i].probability));
    }
    return 0.5 * l1.value();
}

}  // namespace noonsim
