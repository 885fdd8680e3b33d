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

#include <cmath>
#include <stdexcept>

namespace cvqss {

/// Limits reachable without squeezing, for a reconstruction with optical
/// gains (g+, g-).
struct ClassicalBounds {
    double fidelity_max;         // after ideal amplification to unity gain
    double signal_transfer_max;  // T <= sum 1/(1 + |1/g^2 - 1|)
    double noise_product_min;    // V >= |1 - g+ g-|^2
};

/// The fidelity bound is derived for equal quadrature gains. Unequal gains are
/// first equalised by a noiseless parametric operation, which leaves the
/// product g+ g- unchanged, so g^2 is taken to be g+ g-. A non-positive
/// product cannot be brought to unity gain and its bound is 0.
inline ClassicalBounds classical_bounds(double g_plus, double g_minus) {
    ClassicalBounds b{};
    const double g2 = g_plus * g_minus;
    b.fidelity_max = g2 > 0.0 ? 1.0 / (1.0 + std::abs((1.0 - g2) / g2)) : 0.0;
    auto transfer = [](double g) { return g == 0.0 ? 0.0 : 1.0 / (1.0 + std::abs(1.0 / (g * g) - 1.0)); };
    b.signal_transfer_max = transfer(g_plus) + transfer(g_minus);
    b.noise_product_min = (1.0 - g2) * (1.0 - g2);
    return b;
}

/// Average classical fidelity of a (k, n) threshold sharing scheme.
inline double classical_avg_fidelity(int k, int n) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    return static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace cvqss
