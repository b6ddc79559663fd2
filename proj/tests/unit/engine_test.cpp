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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "noonsim/engine.hpp"
#include "test_oracles.hpp"

namespace noonsim {
namespace {

using testing::cd;
using testing::close;

const Phase kHalf = Phase::from_pi_units(0.5);

InterferometerNetwork canonical(double xi = 0.0) {
    return build_canonical_network(kHalf, Phase::from_pi_units(xi), TerminalPlane::kArms56);
}

TEST(Amplitude, HongOuMandel) {
    const auto net = build_single_splitter_network();
    const SourceSpec src{1, 1};
    const auto p11 = amplitude_oracle(src, net, {{DetectorId::k1, 1}, {DetectorId::k2, 1}}, Precision::kExact);
    ASSERT_TRUE(p11.is_exact());
    EXPECT_TRUE(is_zero(*p11.exact_probability()));
    const auto p20 = amplitude_oracle(src, net, {{DetectorId::k1, 2}}, Precision::kExact);
    EXPECT_EQ(*p20.exact_probability(), SurdReal(BigRational(1, 2)));
    const auto p02 = amplitude_oracle(src, net, {{DetectorId::k2, 2}}, Precision::kExact);
    EXPECT_EQ(*p02.exact_probability(), SurdReal(BigRational(1, 2)));
}

TEST(Amplitude, OracleMatchesPermanentOnRandomNetworks) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> phase(-1.0, 1.0);
    std::uniform_real_distribution<double> tap(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const auto net = build_extended_network(Phase::from_pi_units(phase(rng)), Phase::from_pi_units(phase(rng)),
                                                Phase::from_pi_units(phase(rng)), tap(rng), tap(rng));
        const SourceSpec src{trial % 4, 1 + trial % 3};
        for (const auto &counts : testing::compositions(net.detectors(), src.total())) {
            const cd ref = testing::permanent_amplitude(src, net, counts);
            const auto got = amplitude_oracle(src, net, counts, Precision::kFloat);
            EXPECT_NEAR(std::abs(got.value().to_complex() - ref), 0.0, 1e-12);
        }
    }
}

TEST(Amplitude, ExactAndFloatRoutesAgree) {
    const auto net = build_extended_network(kHalf, Phase(), Phase::from_pi_units(0.5), 0.5, 0.0);
    ASSERT_TRUE(net.exact_capable());
    const SourceSpec src{2, 3};
    for (const auto &counts : testing::compositions(net.detectors(), src.total())) {
        const auto e = amplitude_oracle(src, net, counts, Precision::kExact);
        const auto f = amplitude_oracle(src, net, counts, Precision::kFloat);
        ASSERT_TRUE(e.is_exact());
        EXPECT_TRUE(close(e.probability(), f.probability(), 1e-12, 1e-15));
        EXPECT_TRUE(close(e.probability(), std::norm(testing::permanent_amplitude(src, net, counts)), 1e-12, 1e-15));
    }
}

TEST(Amplitude, ConservationAndZeroKinds) {
    const auto net = canonical();
    const SourceSpec src{2, 2};
    const auto wrong_total = amplitude_oracle(src, net, {{DetectorId::k1, 3}}, Precision::kFloat);
    EXPECT_EQ(wrong_total.probability(), 0.0);
    EXPECT_EQ(wrong_total.zero_kind(), ZeroKind::kStructural);
    EXPECT_THROW(amplitude_oracle(src, net, {{DetectorId::k7, 4}}), std::invalid_argument);
    EXPECT_THROW(amplitude_oracle(src, net, {{DetectorId::k1, -1}}), std::invalid_argument);
    // HOM-type cancellation is reported as cancelled, not structural.
    const auto hom = amplitude_oracle({1, 1}, build_single_splitter_network(),
                                      {{DetectorId::k1, 1}, {DetectorId::k2, 1}}, Precision::kFloat);
    EXPECT_EQ(hom.probability(), 0.0);
    EXPECT_EQ(hom.zero_kind(), ZeroKind::kCancelled);
}

TEST(Amplitude, ExactRequiresQuarterTurns) {
    const auto net = canonical(0.3);
    EXPECT_THROW(amplitude_oracle({1, 1}, net, {{DetectorId::k5, 2}}, Precision::kExact), std::invalid_argument);
    EXPECT_FALSE(amplitude_oracle({1, 1}, net, {{DetectorId::k5, 2}}).is_exact());
}

TEST(Quadrature, MatchesOracleOnCanonicalNetworks) {
    for (double xi : {0.0, 0.5, 0.2}) {
        const auto net = canonical(xi);
        for (int na = 0; na <= 4; ++na) {
            for (int nb = 0; nb <= 4 - na; ++nb) {
                const SourceSpec src{na, nb};
                for (const auto &counts : testing::compositions(net.detectors(), src.total())) {
                    const double a = amplitude_oracle(src, net, counts, Precision::kFloat).probability();
                    const double q = phase_quadrature_amplitude(src, net, counts).probability();
                    EXPECT_TRUE(close(a, q, 1e-10, 1e-15)) << a << " vs " << q;
                }
            }
        }
    }
}

TEST(Quadrature, AliasingNotice) {
    const auto net = canonical();
    const SourceSpec src{3, 3};
    const OutcomeCounts counts{{DetectorId::k1, 2}, {DetectorId::k5, 4}};
    EXPECT_TRUE(phase_quadrature_amplitude(src, net, counts).notices().empty());
    EXPECT_FALSE(phase_quadrature_amplitude(src, net, counts, 3).notices().empty());
}

TEST(ClosedForm, NoonMatchesOracleAtQuarterAndGenericXi) {
    for (double xi : {0.0, 0.5, -0.5, 1.0, 0.3}) {
        const auto net = canonical(xi);
        const Phase xp = Phase::from_pi_units(xi);
        for (int na = 0; na <= 4; ++na) {
            for (int nb = 0; nb <= 4; ++nb) {
                const SourceSpec src{na, nb};
                for (const auto &counts : testing::compositions(net.detectors(), src.total())) {
                    const int m1 = counts.at(DetectorId::k1), m2 = counts.at(DetectorId::k2);
                    const double oracle = amplitude_oracle(src, net, counts, Precision::kFloat).probability();
                    const auto cf = prob_noon_closed(src, m1, m2, counts.at(DetectorId::k5), xp, Precision::kFloat);
                    const double k = noon_closed_scale(src, m1, m2).get_d();
                    EXPECT_TRUE(close(k * cf.value(), oracle, 1e-10, 1e-15)) << xi << " " << k * cf.value() << " " << oracle;
                    if (xp.is_quarter_turn()) {
                        const auto ce = prob_noon_closed(src, m1, m2, counts.at(DetectorId::k5), xp, Precision::kExact);
                        const auto oe = amplitude_oracle(src, net, counts, Precision::kExact).exact_probability();
                        ASSERT_TRUE(ce.exact.has_value());
                        EXPECT_EQ(SurdReal(*ce.exact * noon_closed_scale(src, m1, m2)), *oe);
                    }
                }
            }
        }
    }
}

TEST(ClosedForm, FringeMatchesOracle) {
    const auto net = build_extended_network(kHalf, Phase(), Phase(), 0, 0);
    for (int na = 0; na <= 4; ++na) {
        for (int nb = 0; nb <= 4; ++nb) {
            const SourceSpec src{na, nb};
            for (const auto &counts : testing::compositions(net.detectors(), src.total())) {
                const int m1 = counts.at(DetectorId::k1), m2 = counts.at(DetectorId::k2);
                const auto oe = amplitude_oracle(src, net, counts, Precision::kExact).exact_probability();
                const auto ce = prob_fringe_closed(src, m1, m2, counts.at(DetectorId::k7), Precision::kExact);
                EXPECT_EQ(SurdReal(*ce.exact * fringe_closed_scale(src, m1, m2)), *oe);
                const auto cf = prob_fringe_closed(src, m1, m2, counts.at(DetectorId::k7), Precision::kFloat);
                EXPECT_TRUE(close(cf.value() * fringe_closed_scale(src, m1, m2).get_d(), to_double(*oe), 1e-12, 1e-15));
            }
        }
    }
}

TEST(ClosedForm, ScaleConstants) {
    EXPECT_EQ(noon_closed_scale({1, 1}, 0, 0), BigRational(1, 16));
    EXPECT_EQ(noon_closed_scale({2, 1}, 1, 1), BigRational(1, 32));
    EXPECT_EQ(fringe_closed_scale({1, 1}, 1, 0), BigRational(1, 8));
}

TEST(ClosedForm, FloatTracksExactAtLargeN) {
    const SourceSpec src{40, 40};
    for (int m7 = 0; m7 <= 40; m7 += 3) {
        const auto e = prob_fringe_closed(src, 20, 20, m7, Precision::kExact);
        const auto f = prob_fringe_closed(src, 20, 20, m7, Precision::kFloat);
        if (*e.exact == 0) {
            EXPECT_EQ(f.value(), 0.0) << m7;
        } else {
            EXPECT_NEAR(f.log_value, e.log_value, 1e-9) << m7;
        }
    }
    // The NOON sum cancels by a factor of ~4e4 even at the peaks and far more
    // between them, so the float route is checked relative to the peak weight.
    const double peak = prob_noon_closed({30, 30}, 15, 15, 0, Phase(), Precision::kExact).value();
    for (int m5 = 0; m5 <= 30; ++m5) {
        const auto e = prob_noon_closed({30, 30}, 15, 15, m5, Phase(), Precision::kExact);
        const auto f = prob_noon_closed({30, 30}, 15, 15, m5, Phase(), Precision::kFloat);
        EXPECT_NEAR(f.value() / peak, e.value() / peak, 1e-10) << m5;
    }
}

TEST(ClosedForm, NegativeCountsGiveZero) {
    EXPECT_EQ(prob_noon_closed({2, 2}, 3, 3, 0, Phase()).value(), 0.0);
    EXPECT_EQ(prob_fringe_closed({2, 2}, 3, 3, 0).value(), 0.0);
}

TEST(Q12, SignAndValues) {
    EXPECT_NEAR(q12(std::numbers::pi / 2, 2, 2), 0.25, 1e-15);
    EXPECT_NEAR(q12(-std::numbers::pi / 2, 2, 1), -std::pow(std::sqrt(0.5), 3), 1e-15);
    EXPECT_NEAR(q12(std::numbers::pi, 3, 0), 0.0, 1e-40);
    EXPECT_EQ(q12(0.0, 0, 0), 1.0);
    EXPECT_EQ(q12(0.0, 0, 2), 0.0);
    // Deep in the tails the log-space route stays finite and positive.
    EXPECT_GT(q12(0.01, 52, 52), 0.0);
}

// Golden-section search on ln Q12, independent of the derivative used by q12_peak.
double golden_peak(int m1, int m2) {
    auto f = [&](double phi) { return m1 * std::log(std::cos(phi / 2)) + m2 * std::log(std::sin(phi / 2)); };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 1e-12, b = std::numbers::pi - 1e-12;
    for (int k = 0; k < 200; ++k) {
        const double c = b - g * (b - a), d = a + g * (b - a);
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
    }
    return 0.5 * (a + b);
}

TEST(Q12, PeakMatchesIndependentSearch) {
    for (int m1 = 1; m1 <= 60; m1 += 3) {
        for (int m2 = 1; m2 <= 60; m2 += 4) {
            const double peak = q12_peak(m1, m2);
            EXPECT_NEAR(peak, golden_peak(m1, m2), 1e-7) << m1 << "," << m2;
            EXPECT_NEAR(peak, 2.0 * std::atan(std::sqrt(static_cast<double>(m2) / m1)), 1e-12);
        }
    }
    EXPECT_NEAR(q12_peak(52, 52), std::numbers::pi / 2, 1e-14);
    EXPECT_EQ(q12_peak(5, 0), 0.0);
    EXPECT_EQ(q12_peak(0, 5), std::numbers::pi);
    EXPECT_THROW(q12_peak(0, 0), std::invalid_argument);
}

TEST(Q12, PhaseWeightMagnitude) {
    // |PhaseWeight| = 2^(m1+m2) |Q12|.
    for (double phi : {-2.0, -0.3, 0.7, 2.9}) {
        const PhaseWeight w{7, 4, 3};
        EXPECT_NEAR(std::abs(w.evaluate(phi)), std::pow(2.0, 11) * std::abs(q12(phi, 7, 4)), 1e-10);
    }
}

}  // namespace
}  // namespace noonsim
