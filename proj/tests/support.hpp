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
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "cvqss/protocols.hpp"

namespace cvqss::testing {

/// Expected coefficients of one output quadrature on the dealer's axes.
struct Coeffs {
    double in = 0.0;
    double sqz1 = 0.0;
    double sqz2 = 0.0;
    double noise = 0.0;
};

struct Expected {
    Coeffs plus;
    Coeffs minus;
};

inline Coeffs actual(const LinearForm& f, const ShareAxes& ax, Quadrature q) {
    const bool p = q == Quadrature::plus;
    return {f.coeff(p ? ax.secret_plus : ax.secret_minus), f.coeff(p ? ax.sqz1_plus : ax.sqz1_minus),
            f.coeff(p ? ax.sqz2_plus : ax.sqz2_minus), f.coeff(p ? ax.noise_plus : ax.noise_minus)};
}

// Closed forms for player 1 with ideal optics. Player 2 follows by negating
// the sqz1, sqz2 and noise columns.

inline Expected pia_closed_form(double G) {
    const double a = std::sqrt(G), n = std::sqrt(G - 1.0), r2 = std::numbers::sqrt2;
    return {{a / r2, a / 2 - n / r2, a / 2 + n / r2, a / r2 - n}, {a / r2, a / 2 + n / r2, a / 2 - n / r2, a / r2 - n}};
}

inline Expected two_opa_closed_form(double G) {
    const double A = (std::sqrt(G) + 1 / std::sqrt(G)) / 2, B = (std::sqrt(G) - 1 / std::sqrt(G)) / 2;
    const double r2 = std::numbers::sqrt2;
    return {{A / r2, A / 2 - B / r2, A / 2 + B / r2, A / r2 - B}, {A / r2, A / 2 + B / r2, A / 2 - B / r2, A / r2 - B}};
}

inline Expected single_ff_closed_form(double R, double G) {
    const double r = std::sqrt(R), t = std::sqrt(1 - R), r2 = std::numbers::sqrt2;
    const double k = r + G * t;  // weight of share A on X+
    const double p = t - G * r;  // weight of share 3 on X+
    return {{k / r2, k / 2 + p / r2, k / 2 - p / r2, k / r2 + p}, {r / r2, r / 2 + t / r2, r / 2 - t / r2, r / r2 - t}};
}

/// Balanced first splitter, optical gain target g on both quadratures.
inline Expected double_ff_closed_form(double g) {
    const double r2 = std::numbers::sqrt2;
    return {{g, (1 - g) / r2, (3 * g - 1) / r2, 1 - g}, {g, (3 * g - 1) / r2, (1 - g) / r2, 1 - g}};
}

inline Expected for_player2(Expected e) {
    for (auto* c : {&e.plus, &e.minus}) {
        c->sqz1 = -c->sqz1;
        c->sqz2 = -c->sqz2;
        c->noise = -c->noise;
    }
    return e;
}

inline DealerConfig random_dealer(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DealerConfig c;
    c.v_sq = 0.05 + 0.95 * u(rng);
    c.v_anti = 1.0 / c.v_sq + 3.0 * u(rng);
    c.v_noise = 20.0 * u(rng);
    c.secret_plus = -5.0 + 10.0 * u(rng);
    c.secret_minus = -5.0 + 10.0 * u(rng);
    return c;
}

inline DealerConfig pure_dealer(double v_sq_db, double v_noise = 0.0) {
    DealerConfig c;
    c.v_sq = db_to_linear(v_sq_db);
    c.v_anti = 1.0 / c.v_sq;
    c.v_noise = v_noise;
    return c;
}

}  // namespace cvqss::testing
