// Copyright 2026 The cvqss Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvqss/optics.hpp"

using namespace cvqss;

namespace {

constexpr double kTight = 1e-12;

TEST(LinearForm, ArithmeticDropsExactZeros) {
    auto f = LinearForm::axis(3, 2.0) + LinearForm::axis(5, 1.0);
    f += LinearForm::constant(4.0);
    EXPECT_EQ(f.mean, 4.0);
    EXPECT_EQ(f.coeff(3), 2.0);
    f -= LinearForm::axis(3, 2.0);
    EXPECT_EQ(f.coeffs.count(3), 0u);
    EXPECT_EQ(f.coeff(7), 0.0);
    auto g = 0.0 * f;
    EXPECT_TRUE(g.coeffs.empty());
    EXPECT_EQ(g.mean, 0.0);
    auto h = -f;
    EXPECT_EQ(h.coeff(5), -1.0);
    EXPECT_EQ(h.mean, -4.0);
}

TEST(AxisRegistry, QuantumPairsArePartnered) {
    AxisRegistry reg;
    auto [x, y] = reg.add_quantum_pair(0.5, 2.0, "s");
    EXPECT_EQ(reg.at(x).partner, y);
    EXPECT_EQ(reg.at(y).partner, x);
    EXPECT_EQ(reg.at(x).label, "s.plus");
    EXPECT_EQ(reg.at(y).quadrature, Quadrature::minus);
    auto c = reg.add_classical(3.0, "n");
    EXPECT_EQ(reg.at(c).kind, AxisKind::classical);
    EXPECT_EQ(reg.size(), 3u);
    EXPECT_THROW(reg.at(9), std::out_of_range);
}

TEST(AxisRegistry, RejectsUnphysicalPairs) {
    AxisRegistry reg;
    EXPECT_THROW(reg.add_quantum_pair(0.5, 1.5, "bad"), std::invalid_argument);
    EXPECT_THROW(reg.add_quantum_pair(0.0, 1e9, "bad"), std::invalid_argument);
    EXPECT_THROW(reg.add_quantum_pair(-1.0, -1.0, "bad"), std::invalid_argument);
    EXPECT_THROW(reg.add_classical(-0.1, "bad"), std::invalid_argument);
    EXPECT_NO_THROW(reg.add_quantum_pair(0.5, 2.0, "edge"));
}

TEST(AxisRegistry, MomentsAndCommutator) {
    AnalyticBackend net;
    auto v = new_vacuum(net);
    auto n = net.classical_noise(4.0, "n");
    const auto& reg = net.registry();
    EXPECT_DOUBLE_EQ(variance(reg, v.plus), 1.0);
    EXPECT_DOUBLE_EQ(commutator_weight(reg, v), 1.0);
    EXPECT_DOUBLE_EQ(commutator(reg, v.minus, v.plus), -1.0);
    EXPECT_DOUBLE_EQ(variance(reg, n.value), 4.0);
    EXPECT_DOUBLE_EQ(commutator(reg, n.value, v.minus), 0.0);
    EXPECT_DOUBLE_EQ(covariance(reg, v.plus + n.value, v.plus), 1.0);
}

TEST(States, SqueezedValidation) {
    AnalyticBackend net;
    EXPECT_THROW(new_squeezed(net, 1.5, 1.0, Quadrature::plus), std::invalid_argument);
    EXPECT_THROW(new_squeezed(net, 0.0, 1.0, Quadrature::plus), std::invalid_argument);
    EXPECT_THROW(new_squeezed(net, 0.5, 1.9, Quadrature::plus), std::invalid_argument);
    auto s = new_squeezed(net, 0.5, 3.0, Quadrature::minus);
    EXPECT_DOUBLE_EQ(variance(net.registry(), s.minus), 0.5);
    EXPECT_DOUBLE_EQ(variance(net.registry(), s.plus), 3.0);
    auto c = new_coherent(net, 2.0, -1.0);
    EXPECT_EQ(c.plus.mean, 2.0);
    EXPECT_EQ(c.minus.mean, -1.0);
}

TEST(Optics, BeamSplitterEndpointsAndInvolution) {
    AnalyticBackend net;
    auto a = new_squeezed(net, 0.3, 4.0, Quadrature::plus, "a");
    auto b = new_coherent(net, 1.0, 2.0, "b");
    auto [c0, d0] = beam_splitter(net, a, b, 0.0);
    EXPECT_EQ(c0.plus.coeffs, b.plus.coeffs);
    EXPECT_EQ(d0.minus.coeffs, a.minus.coeffs);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double R = u(rng);
        auto [c, d] = beam_splitter(net, a, b, R);
        auto [a2, b2] = beam_splitter(net, c, d, R);
        for (auto q : {Quadrature::plus, Quadrature::minus}) {
            auto da = a2[q] - a[q];
            auto db = b2[q] - b[q];
            EXPECT_NEAR(da.mean, 0.0, kTight);
            EXPECT_NEAR(db.mean, 0.0, kTight);
            for (const auto& [id, x] : da.coeffs) EXPECT_NEAR(x, 0.0, kTight);
            for (const auto& [id, x] : db.coeffs) EXPECT_NEAR(x, 0.0, kTight);
        }
    }
    EXPECT_THROW(beam_splitter(net, a, b, 1.2), std::invalid_argument);
}

TEST(Optics, BeamSplitterKeepsModesIndependent) {
    AnalyticBackend net;
    auto a = new_squeezed(net, 0.3, 4.0, Quadrature::plus, "a");
    auto b = new_vacuum(net, "b");
    auto [c, d] = beam_splitter(net, a, b, 0.37);
    const auto& reg = net.registry();
    EXPECT_NEAR(commutator_weight(reg, c), 1.0, kTight);
    EXPECT_NEAR(commutator_weight(reg, d), 1.0, kTight);
    EXPECT_NEAR(commutator(reg, c.plus, d.minus), 0.0, kTight);
    EXPECT_NEAR(commutator(reg, c.minus, d.plus), 0.0, kTight);
    EXPECT_NEAR(variance(reg, c.plus) + variance(reg, d.plus), 0.3 + 1.0, kTight);
}

TEST(Optics, PhaseShiftQuarterTurnsAreExact) {
    AnalyticBackend net;
    auto s = new_squeezed(net, 0.25, 4.0, Quadrature::plus);
    auto r = phase_shift(net, s, std::numbers::pi / 2);
    EXPECT_EQ(r.plus.coeffs.size(), 1u);
    EXPECT_EQ(r.plus.coeff(s.minus.coeffs.begin()->first), -1.0);
    EXPECT_DOUBLE_EQ(variance(net.registry(), r.minus), 0.25);
    auto full = phase_shift(net, s, 2 * std::numbers::pi);
    EXPECT_EQ(full.plus.coeffs, s.plus.coeffs);
    auto pi = phase_shift(net, s, std::numbers::pi);
    EXPECT_EQ(pi.minus.coeffs.begin()->second, -1.0);
}

TEST(Optics, Amplifiers) {
    AnalyticBackend net;
    const auto& reg = net.registry();
    auto in = new_coherent(net, 1.0, 1.0, "in");
    auto idler = new_vacuum(net, "idler");
    auto out = phase_insensitive_amp(net, in, idler, 3.0);
    EXPECT_NEAR(variance(reg, out.plus), 5.0, kTight);  // 2G - 1
    EXPECT_NEAR(out.plus.mean, std::sqrt(3.0), kTight);
    EXPECT_NEAR(commutator_weight(reg, out), 1.0, kTight);
    EXPECT_THROW(phase_insensitive_amp(net, in, idler, 0.5), std::invalid_argument);

    auto psa = phase_sensitive_amp(net, in, 4.0);
    EXPECT_NEAR(variance(reg, psa.plus), 4.0, kTight);
    EXPECT_NEAR(variance(reg, psa.minus), 0.25, kTight);
    EXPECT_NEAR(commutator_weight(reg, psa), 1.0, kTight);
    EXPECT_THROW(phase_sensitive_amp(net, in, 0.0), std::invalid_argument);
}

TEST(Optics, Loss) {
    AnalyticBackend net;
    const auto& reg = net.registry();
    auto s = new_squeezed(net, 0.2, 5.0, Quadrature::plus);
    auto l = loss(net, s, 0.8);
    EXPECT_NEAR(variance(reg, l.plus), 0.8 * 0.2 + 0.2, kTight);
    EXPECT_NEAR(variance(reg, l.minus), 0.8 * 5.0 + 0.2, kTight);
    EXPECT_NEAR(commutator_weight(reg, l), 1.0, kTight);
    const auto before = reg.size();
    auto same = loss(net, s, 1.0);
    EXPECT_EQ(reg.size(), before);
    EXPECT_EQ(same.plus.coeffs, s.plus.coeffs);
    EXPECT_THROW(loss(net, s, 1.5), std::invalid_argument);
}

TEST(Optics, HomodyneConsumesAndAddsDetectorNoise) {
    AnalyticBackend net;
    const auto& reg = net.registry();
    auto s = new_squeezed(net, 0.5, 2.0, Quadrature::plus);
    auto sig = homodyne(net, s, Quadrature::plus, DetectorSpec::with_dark_db(0.9, -10.0));
    EXPECT_NEAR(variance(reg, sig.value), 0.9 * 0.5 + 0.1 + 0.1, kTight);
    EXPECT_TRUE(net.is_consumed(s));
    EXPECT_THROW(homodyne(net, s, Quadrature::minus), MeasuredModeReuse);
    EXPECT_THROW(loss(net, s, 0.5), MeasuredModeReuse);
    EXPECT_THROW((void)homodyne(net, new_vacuum(net), Quadrature::plus, DetectorSpec{0.0, 0.0}), std::invalid_argument);
}

TEST(Optics, DisplacementThroughMirror) {
    AnalyticBackend net;
    const auto& reg = net.registry();
    auto target = new_vacuum(net, "t");
    auto probe = new_coherent(net, 2.0, 0.0, "p");
    auto sig = homodyne(net, probe, Quadrature::plus);
    auto direct = displace(net, target, Quadrature::plus, sig, 0.5);
    EXPECT_NEAR(direct.plus.mean, 1.0, kTight);
    EXPECT_NEAR(commutator_weight(reg, direct), 1.0, kTight);
    const double Rm = 50.0 / 51.0;
    auto lo = lo_displace(net, target, Quadrature::plus, sig, 0.5, Rm);
    EXPECT_NEAR(lo.plus.mean, 1.0 * lo_kick_efficiency(Rm), kTight);
    EXPECT_NEAR(lo.plus.coeff(target.plus.coeffs.begin()->first), lo_target_transmission(Rm), kTight);
    EXPECT_NEAR(commutator_weight(reg, lo), 1.0, kTight);
    EXPECT_THROW(lo_displace(net, target, Quadrature::plus, sig, 1.0, 1.0), std::invalid_argument);
}

TEST(Optics, EprPairCorrelations) {
    AnalyticBackend net;
    const auto& reg = net.registry();
    const double v = 0.3, a = 1 / 0.3;
    auto [e1, e2] = epr_pair(net, new_squeezed(net, v, a, Quadrature::minus), new_squeezed(net, v, a, Quadrature::plus));
    EXPECT_NEAR(variance(reg, e1.plus), (v + a) / 2, kTight);
    EXPECT_NEAR(variance(reg, e1.plus + e2.plus) / 2, a, kTight);
    EXPECT_NEAR(variance(reg, e1.plus - e2.plus) / 2, v, kTight);
    EXPECT_NEAR(variance(reg, e1.minus + e2.minus) / 2, v, kTight);
}

// Two squeezers squeezed on the same quadrature, one turned by a quarter
// wave before the splitter, give the same second moments.
TEST(Optics, EprPairFromRotatedSqueezerMatches) {
    AnalyticBackend net;
    const auto& reg = net.registry();
    const double v = 0.4, a = 3.0;
    auto [e1, e2] = epr_pair(net, new_squeezed(net, v, a, Quadrature::minus), new_squeezed(net, v, a, Quadrature::plus));
    auto s1 = new_squeezed(net, v, a, Quadrature::minus);
    auto s2 = phase_shift(net, new_squeezed(net, v, a, Quadrature::minus), std::numbers::pi / 2);
    auto [f1, f2] = epr_pair(net, s1, s2);
    for (auto q : {Quadrature::plus, Quadrature::minus}) {
        EXPECT_NEAR(variance(reg, e1[q]), variance(reg, f1[q]), kTight);
        EXPECT_NEAR(variance(reg, e2[q]), variance(reg, f2[q]), kTight);
        EXPECT_NEAR(covariance(reg, e1[q], e2[q]), covariance(reg, f1[q], f2[q]), kTight);
    }
}

}  // namespace
