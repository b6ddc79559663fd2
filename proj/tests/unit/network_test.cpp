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

#include "noonsim/network.hpp"
#include "test_oracles.hpp"

namespace noonsim {
namespace {

using testing::cd;

constexpr double kPi = std::numbers::pi;

void expect_coeff(const InterferometerNetwork &net, DetectorId id, cd alpha, cd beta, double tol = 1e-15) {
    const DetectorCoefficients *d = net.find(id);
    ASSERT_NE(d, nullptr) << detector_label(id);
    EXPECT_NEAR(std::abs(d->v_alpha.value - alpha), 0.0, tol) << detector_label(id);
    EXPECT_NEAR(std::abs(d->v_beta.value - beta), 0.0, tol) << detector_label(id);
}

TEST(Network, CanonicalRowsMatchHandWrittenOperators) {
    for (double theta : {0.5, 0.0, 0.25, -0.7}) {
        for (double xi : {0.0, 0.5, 1.0, 0.3}) {
            const auto net = build_canonical_network(Phase::from_pi_units(theta), Phase::from_pi_units(xi),
                                                     TerminalPlane::kArms56);
            const auto r = testing::arm_rows(theta * kPi, xi * kPi);
            expect_coeff(net, DetectorId::k1, r.a1_alpha, r.a1_beta);
            expect_coeff(net, DetectorId::k2, r.a2_alpha, r.a2_beta);
            expect_coeff(net, DetectorId::k5, r.a5_alpha, r.a5_beta);
            expect_coeff(net, DetectorId::k6, r.a6_alpha, r.a6_beta);
        }
    }
}

TEST(Network, CanonicalAtHalfTurnIsExact) {
    const auto net = build_canonical_network(Phase::from_pi_units(0.5), Phase(), TerminalPlane::kArms56);
    ASSERT_TRUE(net.exact_capable());
    // a1 = (i e^{i pi/2} a_alpha - a_beta)/2 = (-a_alpha - a_beta)/2.
    const auto &e = *net.find(DetectorId::k1)->v_alpha.exact;
    EXPECT_EQ(e, SurdComplex(GaussianRational(BigInt(-1), BigInt(0), BigInt(2))));
    EXPECT_FALSE(build_canonical_network(Phase::from_pi_units(0.3), Phase(), TerminalPlane::kArms56).exact_capable());
}

TEST(Network, FinalSplitterMatchesUVForm) {
    for (double xi : {0.0, 0.5, -0.25}) {
        for (double zeta : {0.0, 0.5, 1.0, 0.37}) {
            const auto net =
                build_extended_network(Phase::from_pi_units(0.5), Phase::from_pi_units(xi), Phase::from_pi_units(zeta), 0, 0);
            EXPECT_EQ(net.terminal_plane, TerminalPlane::kDetectors78);
            EXPECT_EQ(net.coefficient_table.size(), 4u);
            const auto [a7, a8] = testing::final_rows(xi * kPi, zeta * kPi);
            expect_coeff(net, DetectorId::k7, a7.first, a7.second);
            expect_coeff(net, DetectorId::k8, a8.first, a8.second);
        }
    }
}

TEST(Network, DetectorEightAtZeroZeta) {
    const auto net = build_extended_network(Phase::from_pi_units(0.5), Phase(), Phase(), 0, 0);
    const double h = 1.0 / std::numbers::sqrt2;
    expect_coeff(net, DetectorId::k8, cd(0.0, -h), 0.0);
    expect_coeff(net, DetectorId::k7, 0.0, cd(0.0, -h));
    ASSERT_TRUE(net.exact_capable());
    EXPECT_TRUE(is_zero(*net.find(DetectorId::k8)->v_beta.exact));
}

TEST(Network, FullTapRoutesArmFiveToProbe) {
    const auto net = build_extended_network(Phase::from_pi_units(0.5), Phase(), Phase(), 1.0, 0.0);
    EXPECT_EQ(net.terminal_plane, TerminalPlane::kDetectors78WithProbes);
    ASSERT_TRUE(net.exact_capable());
    const auto r = testing::arm_rows(kPi / 2, 0.0);
    const cd i(0.0, 1.0);
    expect_coeff(net, DetectorId::k5Probe, i * r.a5_alpha, i * r.a5_beta);
    expect_coeff(net, DetectorId::k6Probe, 0.0, 0.0);
    // With arm 5 blocked only arm 6 reaches 7 and 8.
    const double h = 1.0 / std::numbers::sqrt2;
    expect_coeff(net, DetectorId::k7, h * r.a6_alpha, h * r.a6_beta);
    expect_coeff(net, DetectorId::k8, i * h * r.a6_alpha, i * h * r.a6_beta);
}

TEST(Network, UnitarityOnRandomParameters) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> phase(-1.0, 1.0);
    std::uniform_real_distribution<double> tap(0.0, 1.0);
    std::uniform_int_distribution<int> plane(0, 3);
    for (int k = 0; k < 1000; ++k) {
        NetworkConfig c;
        c.theta = Phase::from_pi_units(phase(rng));
        c.xi = Phase::from_pi_units(phase(rng));
        c.zeta = Phase::from_pi_units(phase(rng));
        switch (plane(rng)) {
            case 0: c.plane = TerminalPlane::kArms34; break;
            case 1: c.plane = TerminalPlane::kArms56; break;
            case 2: c.plane = TerminalPlane::kDetectors78; break;
            default:
                c.plane = TerminalPlane::kDetectors78WithProbes;
                c.tap5 = tap(rng);
                c.tap6 = tap(rng);
        }
        const auto report = verify_unitarity(build_network(c), 1e-12);
        EXPECT_TRUE(report.ok) << k << " deviation " << report.max_deviation;
    }
    EXPECT_TRUE(verify_unitarity(build_single_splitter_network()).ok);
}

TEST(Network, DeletedDetectorBreaksClosure) {
    auto net = build_canonical_network(Phase::from_pi_units(0.5), Phase(), TerminalPlane::kArms56);
    net.coefficient_table.pop_back();
    const auto report = verify_unitarity(net);
    EXPECT_FALSE(report.ok);
    EXPECT_NEAR(report.max_deviation, 0.25, 1e-15);
}

TEST(Network, RejectsBadParameters) {
    EXPECT_THROW(build_canonical_network(Phase(), Phase(), TerminalPlane::kDetectors78), std::invalid_argument);
    EXPECT_THROW(build_extended_network(Phase(), Phase(), Phase(), 1.5, 0), std::invalid_argument);
    EXPECT_THROW(build_extended_network(Phase(), Phase(), Phase(), -0.1, 0), std::invalid_argument);
    EXPECT_THROW(build_canonical_network(Phase::from_pi_units(std::nan("")), Phase(), TerminalPlane::kArms56),
                 std::invalid_argument);
    NetworkConfig c;
    c.tap5 = 0.5;
    EXPECT_THROW(build_network(c), std::invalid_argument);
}

TEST(Network, DetectorLabelsAndPartners) {
    for (auto id : {DetectorId::k1, DetectorId::k2, DetectorId::k3, DetectorId::k4, DetectorId::k5, DetectorId::k6,
                    DetectorId::k7, DetectorId::k8, DetectorId::k5Probe, DetectorId::k6Probe}) {
        EXPECT_EQ(parse_detector(detector_label(id)), id);
        EXPECT_EQ(partner_detector(partner_detector(id)), id);
        EXPECT_NE(partner_detector(id), id);
    }
    EXPECT_EQ(parse_detector("5p"), DetectorId::k5Probe);
    EXPECT_FALSE(parse_detector("9").has_value());
}

TEST(NetworkConfig, TextRoundTrip) {
    NetworkConfig c;
    c.plane = TerminalPlane::kDetectors78WithProbes;
    c.theta = Phase::from_pi_units(0.5);
    c.xi = Phase::from_pi_units(-0.125);
    c.zeta = Phase::from_pi_units(0.1);
    c.tap5 = 0.2;
    c.tap6 = 0.3;
    const NetworkConfig back = parse_network_config(format_network_config(c));
    EXPECT_EQ(back.plane, c.plane);
    EXPECT_EQ(back.theta, c.theta);
    EXPECT_EQ(back.xi, c.xi);
    EXPECT_EQ(back.zeta, c.zeta);
    EXPECT_EQ(back.tap5, c.tap5);
    EXPECT_EQ(back.tap6, c.tap6);
    EXPECT_EQ(build_network(back).config().tap6, 0.3);
}

TEST(NetworkConfig, ParseErrors) {
    EXPECT_THROW(parse_network_config("plane = sideways\n"), std::invalid_argument);
    EXPECT_THROW(parse_network_config("colour = red\n"), std::invalid_argument);
    EXPECT_THROW(parse_network_config("theta 0.5\n"), std::invalid_argument);
    EXPECT_THROW(parse_network_config("theta = half\n"), std::invalid_argument);
    const auto c = parse_network_config("# comment\n\n theta = 0.25  # trailing\n");
    EXPECT_EQ(c.theta, Phase::from_pi_units(0.25));
}

}  // namespace
}  // namespace noonsim
