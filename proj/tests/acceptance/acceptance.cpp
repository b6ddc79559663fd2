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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "noonsim/scenarios.hpp"

namespace {

using namespace noonsim;

// Relative agreement for probabilities. A value that is exactly zero on the
// exact route must come out below kZeroFloor on a floating route.
constexpr double kCrossEngineRel = 1e-10;
constexpr double kZeroFloor = 1e-15;
constexpr double kCrossEngineSeconds = 10.0;
constexpr double kFig3Seconds = 5.0;
constexpr double kFig5VisibilityMin = 0.9;
// Regression values frozen from the first oracle run.
constexpr double kFig5VisibilityFrozen = 1.0;
constexpr double kFig5VisibilityFrozenTol = 1e-12;
constexpr double kRuinedVisibilityMax = 0.1;
constexpr double kProbe10VisibilityFrozenMax = 1e-9;
constexpr double kProbe40VisibilityFrozenMax = 1e-3;
constexpr double kRevivedVisibilityFrozenMin = 0.999;
constexpr double kNegativeVisibilityFrozenMax = 1e-9;
constexpr double kRevivalFactor = 5.0;
constexpr double kNormalizationTol = 1e-10;
constexpr double kUnitarityTol = 1e-12;
constexpr int kUnitaritySamples = 1000;
constexpr double kStressRel = 1e-8;
constexpr double kStressSupportMin = 1e-12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Relative deviation of b from the reference a, or a zero check when a == 0.
bool agrees(double a, double b, double rel, double &worst) {
    if (a == 0.0) {
        return std::abs(b) <= kZeroFloor;
    }
    const double d = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    worst = std::max(worst, d);
    return d <= rel;
}

std::vector<OutcomeCounts> compositions(const std::vector<DetectorId> &detectors, int n) {
    std::vector<OutcomeCounts> out;
    std::vector<int> c(detectors.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
        if (slot + 1 == detectors.size()) {
            c[slot] = left;
            OutcomeCounts oc;
            for (std::size_t k = 0; k < detectors.size(); ++k) {
                oc[detectors[k]] = c[k];
            }
            out.push_back(std::move(oc));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[slot] = v;
            rec(slot + 1, left - v);
        }
    };
    rec(0, n);
    return out;
}

Outcome cross_engine_equality() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto net = build_canonical_network(Phase::from_pi_units(0.5), Phase(), TerminalPlane::kArms56);
    Outcome out;
    double worst = 0.0;
    long tuples = 0, failures = 0;
    for (int n = 0; n <= 8; ++n) {
        for (int na = 0; na <= n; ++na) {
            const SourceSpec src{na, n - na};
            for (const auto &counts : compositions(net.detectors(), n)) {
                const int m1 = counts.at(DetectorId::k1), m2 = counts.at(DetectorId::k2);
                const double oracle = amplitude_oracle(src, net, counts).probability();
                const auto cf = prob_noon_closed(src, m1, m2, counts.at(DetectorId::k5), Phase());
                const double closed = to_double(SurdReal(*cf.exact * noon_closed_scale(src, m1, m2)));
                const double quad = phase_quadrature_amplitude(src, net, counts).probability();
                double w = 0.0;
                const bool ok = agrees(oracle, closed, kCrossEngineRel, w) && agrees(oracle, quad, kCrossEngineRel, w) &&
                                agrees(closed, quad, kCrossEngineRel, w);
                worst = std::max(worst, w);
                failures += !ok;
                ++tuples;
            }
        }
    }
    const double secs = seconds_since(t0);
    out.pass = failures == 0 && secs < kCrossEngineSeconds;
    out.detail = std::to_string(tuples) + " tuples, " + std::to_string(failures) + " disagreements, max rel " +
                 fmt(worst) + ", " + fmt(secs) + " s";
    return out;
}

// Global maxima exactly at both ends and nowhere else.
bool bimodal_at_extremes(const OutcomeDistribution &d) {
    const auto &s = d.support;
    const SurdReal &lo = *s.front().exact_probability;
    const SurdReal &hi = *s.back().exact_probability;
    if (!(lo == hi)) {
        return false;
    }
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (!(*s[i].exact_probability < lo)) {
            return false;
        }
    }
    return true;
}

Outcome fig3_reproduction() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto solid = run_scenario({ScenarioName::kFig3Noon, {}});
    const auto dotted = run_scenario({ScenarioName::kFig3Noon, {{"m1", "18"}, {"m2", "12"}}});
    const double secs = seconds_since(t0);
    const auto &d = solid.distributions.front();
    Outcome out;
    bool exact = d.precision == Precision::kExact && d.support.size() == 31;
    bool symmetric = exact;
    for (std::size_t i = 0; exact && i < d.support.size(); ++i) {
        symmetric = symmetric && *d.support[i].exact_probability == *d.support[30 - i].exact_probability;
    }
    const bool peaks = exact && bimodal_at_extremes(d);
    const bool dotted_bimodal = bimodal_at_extremes(dotted.distributions.front());
    const bool fidelity = *solid.noon_fidelity > *dotted.noon_fidelity;
    out.pass = exact && symmetric && peaks && dotted_bimodal && fidelity && secs < kFig3Seconds;
    out.detail = std::string("maxima at 0 and 30: ") + (peaks ? "yes" : "no") +
                 ", symmetric: " + (symmetric ? "yes" : "no") + ", fidelity " + fmt(*solid.noon_fidelity) + " vs " +
                 fmt(*dotted.noon_fidelity) + " (m1=18, m2=12, bimodal: " + (dotted_bimodal ? "yes" : "no") + "), " +
                 fmt(secs) + " s";
    return out;
}

double metric(const ScenarioResult &r, const std::string &key) {
    for (const auto &[k, v] : r.extra_metrics) {
        if (k == key) {
            return v;
        }
    }
    return std::nan("");
}

Outcome fig2_reproduction() {
    const auto even = run_scenario({ScenarioName::kFig2PhaseWeight, {}});
    const auto odd = run_scenario({ScenarioName::kFig2PhaseWeight, {{"m2", "51"}}});
    const double step = metric(even, "grid_step");
    const double half = std::numbers::pi / 2;
    const double neg_phi = metric(even, "extremum_negative_phi");
    const double pos_phi = metric(even, "extremum_positive_phi");
    const bool located = std::abs(neg_phi + half) <= step && std::abs(pos_phi - half) <= step;
    const bool even_positive = metric(even, "extremum_negative_value") > 0 && metric(even, "extremum_positive_value") > 0;
    const bool odd_opposite = metric(odd, "extremum_negative_value") * metric(odd, "extremum_positive_value") < 0;
    Outcome out;
    out.pass = located && even_positive && odd_opposite;
    out.detail = "extrema at " + fmt(neg_phi) + ", " + fmt(pos_phi) + " (grid step " + fmt(step) +
                 "), both positive: " + (even_positive ? "yes" : "no") +
                 ", m2=51 opposite signs: " + (odd_opposite ? "yes" : "no");
    return out;
}

Outcome fig5_reproduction() {
    RunOptions both{{EngineChoice::kOracle, EngineChoice::kClosedForm}, Precision::kExact};
    const auto r = run_scenario({ScenarioName::kFig5Fringes, {}}, both);
    const auto &oracle = r.distributions[0];
    const auto &closed = r.distributions[1];
    Outcome out;
    bool oscillating = true;
    for (std::size_t i = 0; i < oracle.support.size(); ++i) {
        const bool zero = is_zero(*oracle.support[i].exact_probability);
        oscillating = oscillating && zero == (oracle.scan_value(i) % 2 != 0);
    }
    // Closed form in float against the exact oracle.
    const SourceSpec src{40, 40};
    double total = 0.0;
    std::vector<double> closed_float;
    for (int m7 = 0; m7 <= 40; ++m7) {
        closed_float.push_back(prob_fringe_closed(src, 20, 20, m7, Precision::kFloat).value());
        total += closed_float.back();
    }
    double worst = 0.0;
    bool agree = closed.engine == EngineChoice::kClosedForm;
    for (std::size_t i = 0; i < oracle.support.size(); ++i) {
        agree = agree && *oracle.support[i].exact_probability == *closed.support[i].exact_probability;
        agree = agree && agrees(oracle.support[i].probability, closed_float[i] / total, kCrossEngineRel, worst);
    }
    const double vis = *r.fringe_visibility;
    const bool frozen = std::abs(vis - kFig5VisibilityFrozen) <= kFig5VisibilityFrozenTol;
    out.pass = oscillating && vis > kFig5VisibilityMin && frozen && agree;
    out.detail = "visibility " + fmt(vis) + ", odd m7 vanish: " + (oscillating ? "yes" : "no") +
                 ", closed form vs oracle max rel " + fmt(worst) + (agree ? "" : " (MISMATCH)");
    return out;
}

Outcome decoherence_suite() {
    Outcome out;
    std::ostringstream detail;
    for (double tap : {0.2, 0.05, 0.5}) {
        const double v10 = *run_which_path(1, 0, {tap, tap}).fringe_visibility;
        const double v40 = *run_which_path(4, 0, {tap, tap}).fringe_visibility;
        const double v11 = *run_which_path(1, 1, {tap, tap}).fringe_visibility;
        const double v22 = *run_which_path(2, 2, {tap, tap}).fringe_visibility;
        bool ok = v10 < kRuinedVisibilityMax && v40 < kRuinedVisibilityMax && v11 >= kRevivalFactor * v10 &&
                  v22 >= kRevivalFactor * v10;
        if (tap == 0.2) {
            ok = ok && v10 <= kProbe10VisibilityFrozenMax && v40 <= kProbe40VisibilityFrozenMax &&
                 v11 >= kRevivedVisibilityFrozenMin && v22 >= kRevivedVisibilityFrozenMin;
            detail << "tap 0.2: (1,0) " << fmt(v10) << ", (4,0) " << fmt(v40) << ", (1,1) " << fmt(v11) << ", (2,2) "
                   << fmt(v22);
        }
        out.pass = out.pass && ok;
        if (!ok) {
            detail << "; ordering fails at tap " << tap;
        }
    }
    const auto neg = run_negative_result();
    const double vneg = *neg.fringe_visibility;
    out.pass = out.pass && vneg < kRuinedVisibilityMax && vneg <= kNegativeVisibilityFrozenMax;
    detail << "; negative result " << fmt(vneg) << ", P(m5'=0 | m1,m2) " << fmt(metric(neg, "probe_condition_given_side"));
    out.detail = detail.str();
    return out;
}

Outcome hom_check() {
    const auto r = run_scenario({ScenarioName::kHomPair, {}}, {{EngineChoice::kOracle}, Precision::kExact});
    const auto &s = r.distributions.front().support;
    const SurdReal half(BigRational(1, 2));
    Outcome out;
    out.pass = s.size() == 3 && *s[0].exact_probability == half && is_zero(*s[1].exact_probability) &&
               *s[2].exact_probability == half;
    out.detail = "P(0,2) = " + to_string(*s[0].exact_probability) + ", P(1,1) = " + to_string(*s[1].exact_probability) +
                 ", P(2,0) = " + to_string(*s[2].exact_probability);
    return out;
}

Outcome normalization_and_unitarity() {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> phase(-1.0, 1.0);
    std::uniform_real_distribution<double> tap(0.0, 1.0);
    std::uniform_int_distribution<int> plane(0, 4);
    std::uniform_int_distribution<int> count(0, 4);
    double worst_unitarity = 0.0;
    for (int k = 0; k < kUnitaritySamples; ++k) {
        NetworkConfig c;
        c.theta = Phase::from_pi_units(phase(rng));
        c.xi = Phase::from_pi_units(phase(rng));
        c.zeta = Phase::from_pi_units(phase(rng));
        switch (plane(rng)) {
            case 0: c.plane = TerminalPlane::kArms34; break;
            case 1: c.plane = TerminalPlane::kArms56; break;
            case 2: c.plane = TerminalPlane::kDetectors78; break;
            case 3: c.plane = TerminalPlane::kSingleSplitter; break;
            default:
                c.plane = TerminalPlane::kDetectors78WithProbes;
                c.tap5 = tap(rng);
                c.tap6 = tap(rng);
        }
        worst_unitarity = std::max(worst_unitarity, verify_unitarity(build_network(c), kUnitarityTol).max_deviation);
    }

    // Joint distributions over random networks, engines and sources, plus
    // every exact-capable preset network.
    double worst_sum = 0.0;
    int joints = 0;
    std::uniform_int_distribution<int> engine_pick(0, 1);
    for (int k = 0; k < 60; ++k) {
        const auto net = build_extended_network(Phase::from_pi_units(phase(rng)), Phase::from_pi_units(phase(rng)),
                                                Phase::from_pi_units(phase(rng)), tap(rng), tap(rng));
        const SourceSpec src{count(rng), count(rng)};
        const EngineChoice e = engine_pick(rng) ? EngineChoice::kOracle : EngineChoice::kQuadrature;
        worst_sum = std::max(worst_sum, std::abs(*joint_distribution(src, net, e).condition_probability - 1.0));
        ++joints;
    }
    for (const auto &net : {build_canonical_network(Phase::from_pi_units(0.5), Phase(), TerminalPlane::kArms56),
                            build_canonical_network(Phase::from_pi_units(0.5), Phase(), TerminalPlane::kArms34),
                            build_extended_network(Phase::from_pi_units(0.5), Phase(), Phase(), 0, 0),
                            build_extended_network(Phase::from_pi_units(0.5), Phase(), Phase(), 1, 0),
                            build_extended_network(Phase::from_pi_units(0.5), Phase(), Phase(), 0.5, 0.5),
                            build_single_splitter_network()}) {
        for (const SourceSpec src : {SourceSpec{1, 1}, SourceSpec{3, 2}, SourceSpec{4, 4}}) {
            for (EngineChoice e : {EngineChoice::kOracle, EngineChoice::kClosedForm, EngineChoice::kQuadrature}) {
                worst_sum = std::max(worst_sum, std::abs(*joint_distribution(src, net, e).condition_probability - 1.0));
                ++joints;
            }
        }
    }
    Outcome out;
    out.pass = worst_unitarity <= kUnitarityTol && worst_sum <= kNormalizationTol;
    out.detail = std::to_string(joints) + " joint distributions, max |sum - 1| " + fmt(worst_sum) + "; " +
                 std::to_string(kUnitaritySamples) + " networks, max closure deviation " + fmt(worst_unitarity);
    return out;
}

Outcome stability_stress() {
    const SourceSpec src{40, 40};
    double worst = 0.0;
    long points = 0;
    bool ok = true;
    for (int m1 = 0; m1 <= 40; m1 += 4) {
        for (int m2 = 0; m2 <= 40; m2 += 4) {
            std::vector<BigRational> exact;
            BigRational total = 0;
            for (int m7 = 0; m7 <= 80 - m1 - m2; ++m7) {
                exact.push_back(*prob_fringe_closed(src, m1, m2, m7, Precision::kExact).exact);
                total += exact.back();
            }
            if (total == 0) {
                continue;
            }
            for (int m7 = 0; m7 <= 80 - m1 - m2; ++m7) {
                const BigRational p = exact[m7] / total;
                if (p.get_d() <= kStressSupportMin) {
                    continue;
                }
                const auto f = prob_fringe_closed(src, m1, m2, m7, Precision::kFloat);
                const double rel = std::abs(std::expm1(f.log_value - log_abs(exact[m7])));
                worst = std::max(worst, rel);
                ok = ok && rel <= kStressRel;
                ++points;
            }
        }
    }
    Outcome out;
    out.pass = ok && points > 0;
    out.detail = std::to_string(points) + " support points, max float/exact rel " + fmt(worst);
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char *id;
        const char *name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"AC1", "cross-engine equality, N <= 8", cross_engine_equality},
        {"AC2", "NOON distribution (N=30+30, m1=m2=15)", fig3_reproduction},
        {"AC3", "phase weight extrema (m1=m2=52)", fig2_reproduction},
        {"AC4", "fringes (N=40+40, m1=m2=20)", fig5_reproduction},
        {"AC5", "which-path decoherence and revival", decoherence_suite},
        {"AC6", "two-particle splitter", hom_check},
        {"AC7", "normalization and unitarity", normalization_and_unitarity},
        {"AC8", "float vs exact closed form at 80!", stability_stress},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
