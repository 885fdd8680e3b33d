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

// Reconstruct a secret with each unity-gain protocol and print its metrics.

#include <cstdio>

#include "cvqss/metrics.hpp"
#include "cvqss/protocols.hpp"

using namespace cvqss;

int main() {
    AnalyticBackend net;
    DealerConfig cfg;
    cfg.v_sq = db_to_linear(-4.5);
    cfg.v_anti = 1 / cfg.v_sq;
    auto s = dealer_encode(net, cfg);
    const auto& reg = net.registry();

    auto report = [&](const char* name, const Mode& out) {
        auto g = optical_gains(reg, s.secret, out);
        auto m = evaluate(reg, s.secret, out, classical_bounds(g.plus, g.minus));
        std::printf("%-10s g+ %.4f  g- %.4f  V+ %.4f  F %.4f  T %.4f  V %.4f\n", name, g.plus, g.minus,
                    variance(reg, out.plus), m.fidelity, m.signal_transfer, m.noise_product);
    };
    auto who = ShareChoice::player2;
    report("mz", reconstruct_mz(net, s));
    report("pia", reconstruct_pia(net, s, who, kPiaUnityGain));
    report("two_opa", reconstruct_two_opa(net, s, who, kTwoOpaUnityGain));
    report("single_ff", parametric_correction(net, reconstruct_single_ff(net, s, who, SingleFFParams{}).output));
    report("double_ff", reconstruct_double_ff(net, s, who, DoubleFFParams{}).output);
}
