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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cvqss/harness/config.hpp"

namespace cvqss::harness {

struct Preset {
    std::string name;
    std::string description;
    std::string text;
};

namespace detail {
// Measured efficiencies and detector noise of the experimental setup. The
// +3.5 dB of added noise enters as decoherence on the anti-squeezed
// quadratures of both squeezers (dealer.anti_excess_db).
inline constexpr const char* kLabOptics = R"(dealer.eta = 0.97
optics.eta_mz = 0.99
optics.eta_bs = 0.97
optics.eta_lo = 0.96
optics.mirror = 50:1
optics.eta_ff = 0.93
optics.dark_db = -13
optics.eta_hom = 0.89
)";

inline constexpr const char* kRegionGrid = R"(sweep.R.from = 0
sweep.R.to = 1
sweep.R.steps = 61
sweep.gain.from = 0
sweep.gain.to = 5.65685424949238
sweep.gain.steps = 41
)";
}  // namespace detail

inline const std::vector<Preset>& presets() {
    using namespace std::string_literals;
    static const std::vector<Preset> all{
        {"fig2a", "single feed-forward (T, V) regions, no squeezing, V_N in {0, 0.25, 1.13, 3.06}",
         "name = fig2a\nprotocol = single_ff\nplayer = 2\nsweep.v_N.values = 0, 0.25, 1.13, 3.06\n"s +
             detail::kRegionGrid},
        {"fig2b", "single feed-forward (T, V) regions, squeezing 0, -3, -6, -9 dB, no added noise",
         "name = fig2b\nprotocol = single_ff\nplayer = 2\nsweep.v_sq_db.values = 0, -3, -6, -9\n"s +
             detail::kRegionGrid},
        {"fig3a", "single feed-forward fidelity against gain, no squeezing, lab optics",
         "name = fig3a\nprotocol = single_ff\nplayer = 2\nprotocol.R = 2:1\n"
         "sweep.gain.from = 0\nsweep.gain.to = 48\nsweep.gain.steps = 81\n"s +
             detail::kLabOptics},
        {"fig3b", "single feed-forward fidelity against gain, -4.5 dB squeezing, +3.5 dB anti-squeezing noise, lab optics",
         "name = fig3b\nprotocol = single_ff\nplayer = 2\nprotocol.R = 2:1\n"
         "dealer.v_sq_db = -4.5\ndealer.anti_excess_db = 3.5\n"
         "sweep.gain.from = 0\nsweep.gain.to = 48\nsweep.gain.steps = 81\n"s +
             detail::kLabOptics},
        {"fig4a-classical", "single feed-forward (R, gain) grid with a classical dealer, ideal optics",
         "name = fig4a-classical\nprotocol = single_ff\nplayer = 2\n"
         "sweep.R.from = 0\nsweep.R.to = 1\nsweep.R.steps = 41\n"
         "sweep.gain.from = 0\nsweep.gain.to = 5.65685424949238\nsweep.gain.steps = 41\n"},
        {"fig4b", "single feed-forward (T, V) against gain, -4.5 dB squeezing, +3.5 dB anti-squeezing noise, lab optics",
         "name = fig4b\nprotocol = single_ff\nplayer = 2\nprotocol.R = 2:1\n"
         "dealer.v_sq_db = -4.5\ndealer.anti_excess_db = 3.5\n"
         "sweep.gain.from = 0\nsweep.gain.to = 48\nsweep.gain.steps = 81\n"s +
             detail::kLabOptics},
        {"fig5-adversary", "adversary {1} (T, V) against added noise at -4.5 dB squeezing",
         "name = fig5-adversary\nprotocol = adversary_1\ndealer.v_sq_db = -4.5\n"
         "sweep.v_N.from = 0\nsweep.v_N.to = 100\nsweep.v_N.steps = 41\n"},
        {"lab-summary", "headline F, T, V and EPR figures at -4.5 dB squeezing, +3.5 dB anti-squeezing noise, lab optics",
         "name = lab-summary\nprotocol = summary\nplayer = 2\nprotocol.R = 2:1\n"
         "dealer.v_sq_db = -4.5\ndealer.anti_excess_db = 3.5\n"s +
             detail::kLabOptics},
        {"ideal-summary", "headline figures at -4.5 dB pure squeezing, no noise, ideal optics",
         "name = ideal-summary\nprotocol = summary\nplayer = 2\ndealer.v_sq_db = -4.5\n"},
    };
    return all;
}

inline const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace cvqss::harness
