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

// Replay a lossy feed-forward reconstruction on sampled shots and compare
// the sampled moments with the analytic ones.

#include <cstdio>

#include "cvqss/monte_carlo.hpp"
#include "cvqss/protocols.hpp"

using namespace cvqss;

int main() {
    DealerConfig cfg;
    cfg.v_sq = db_to_linear(-4.5);
    cfg.v_anti = 1 / cfg.v_sq + db_to_linear(3.5);
    SingleFFParams p;
    p.detector = DetectorSpec::with_dark_db(0.93, -13);
    p.lo = LoSpec{50.0 / 51.0, 0.96};

    auto rep = oracle_check(
        [&](auto& net) {
            auto s = dealer_encode(net, cfg);
            return std::vector{s.secret, reconstruct_single_ff(net, s, ShareChoice::player2, p).output};
        },
        OracleSettings{.shots = 1'000'000});
    std::printf("%zu shots, %zu checks, max z %.2f at %s: %s\n", rep.shots, rep.checks, rep.max_z,
                rep.worst.quantity.c_str(), rep.pass ? "pass" : "FAIL");
    return rep.pass ? 0 : 1;
}
