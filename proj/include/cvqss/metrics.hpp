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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvqss/backend.hpp"
#include "cvqss/bounds.hpp"

namespace cvqss {

/// Gaussian overlap of a coherent secret with a reconstruction of optical
/// gains g and quadrature variances V:
///     F = 2 exp(-(k+ + k-)/4) / sqrt((1 + V+)(1 + V-)),
///     k = <X_in>^2 (1 - g)^2 / (1 + V).
inline double fidelity(double mean_plus, double mean_minus, double g_plus, double g_minus, double v_out_plus,
                       double v_out_minus) {
    if (!(v_out_plus >= 0.0) || !(v_out_minus >= 0.0)) throw std::invalid_argument("output variances must be >= 0");
    const double kp = mean_plus * mean_plus * (1.0 - g_plus) * (1.0 - g_plus) / (1.0 + v_out_plus);
    const double km = mean_minus * mean_minus * (1.0 - g_minus) * (1.0 - g_minus) / (1.0 + v_out_minus);
    return 2.0 * std::exp(-(kp + km) / 4.0) / std::sqrt((1.0 + v_out_plus) * (1.0 + v_out_minus));
}

inline bool is_coherent(const AxisRegistry& reg, const Mode& m, double tol = 1e-12) {
    return std::abs(variance(reg, m.plus) - 1.0) <= tol && std::abs(variance(reg, m.minus) - 1.0) <= tol &&
           std::abs(covariance(reg, m.plus, m.minus)) <= tol && std::abs(commutator_weight(reg, m) - 1.0) <= tol;
}

inline void require_coherent(const AxisRegistry& reg, const Mode& secret) {
    if (!is_coherent(reg, secret)) throw std::invalid_argument("fidelity is only defined here for coherent secrets");
}

struct Gains {
    double plus;
    double minus;
    double product() const { return plus * minus; }
};

/// g = <dX_in dX_out> / V_in on each quadrature.
inline Gains optical_gains(const AxisRegistry& reg, const Mode& secret, const Mode& out) {
    return {covariance(reg, secret.plus, out.plus) / variance(reg, secret.plus),
            covariance(reg, secret.minus, out.minus) / variance(reg, secret.minus)};
}

inline double fidelity(const AxisRegistry& reg, const Mode& secret, const Mode& out) {
    require_coherent(reg, secret);
    auto g = optical_gains(reg, secret, out);
    return fidelity(secret.plus.mean, secret.minus.mean, g.plus, g.minus, variance(reg, out.plus),
                    variance(reg, out.minus));
}

struct SignalTransfer {
    double plus;
    double minus;
    double total() const { return plus + minus; }
};

/// Ratio of output to input signal-to-noise, R = <X>^2 / V, per quadrature.
inline SignalTransfer signal_transfer(const AxisRegistry& reg, const Mode& secret, const Mode& out) {
    if (secret.plus.mean == 0.0 || secret.minus.mean == 0.0)
        throw std::invalid_argument("signal transfer needs a non-zero secret amplitude on both quadratures");
    auto ratio = [&](Quadrature q) {
        const double v_out = variance(reg, out[q]);
        if (!(v_out > 0.0)) throw std::invalid_argument("signal transfer undefined for a noiseless output");
        const double snr_in = secret[q].mean * secret[q].mean / variance(reg, secret[q]);
        const double snr_out = out[q].mean * out[q].mean / v_out;
        return snr_out / snr_in;
    };
    return {ratio(Quadrature::plus), ratio(Quadrature::minus)};
}

struct ConditionalVariance {
    double coherent_form = 0.0;    // V_out - g^2
    double regression_form = 0.0;  // V_in - |<dX_in dX_out>|^2 / V_out
    bool degenerate = false;       // V_out == 0; regression_form falls back to V_in
};

inline ConditionalVariance conditional_variance(const AxisRegistry& reg, const Mode& secret, const Mode& out,
                                                Quadrature q) {
    ConditionalVariance cv;
    const double v_in = variance(reg, secret[q]);
    const double v_out = variance(reg, out[q]);
    const double cov = covariance(reg, secret[q], out[q]);
    const double g = cov / v_in;
    cv.coherent_form = v_out - g * g;
    if (v_out > 0.0) {
        cv.regression_form = v_in - cov * cov / v_out;
    } else {
        cv.regression_form = v_in;
        cv.degenerate = true;
    }
    return cv;
}

/// V = V+_in|out V-_in|out, using the coherent-secret conditional variance.
inline double additional_noise_product(const AxisRegistry& reg, const Mode& secret, const Mode& out) {
    return conditional_variance(reg, secret, out, Quadrature::plus).coherent_form *
           conditional_variance(reg, secret, out, Quadrature::minus).coherent_form;
}

/// sqrt(V+_{a+-b} V-_{a-+b}) with each variance normalised by 2 so that two
/// vacua give 1. Both sign pairings are tried and the smaller is returned.
inline double duan_inseparability(const AxisRegistry& reg, const Mode& a, const Mode& b) {
    const double plus_sum = variance(reg, a.plus + b.plus) / 2.0;
    const double plus_diff = variance(reg, a.plus - b.plus) / 2.0;
    const double minus_sum = variance(reg, a.minus + b.minus) / 2.0;
    const double minus_diff = variance(reg, a.minus - b.minus) / 2.0;
    return std::sqrt(std::min(plus_sum * minus_diff, plus_diff * minus_sum));
}

/// Product of the conditional variances of a given b.
inline double reid_epr(const AxisRegistry& reg, const Mode& a, const Mode& b) {
    double product = 1.0;
    for (auto q : {Quadrature::plus, Quadrature::minus}) {
        const double vb = variance(reg, b[q]);
        const double cov = covariance(reg, a[q], b[q]);
        product *= variance(reg, a[q]) - (vb > 0.0 ? cov * cov / vb : 0.0);
    }
    return product;
}

/// Undo detection loss on a measured variance: V = 1 + (V_meas - 1)/eta.
inline double infer_homodyne(double measured_variance, double eta_hom) {
    if (!(eta_hom > 0.0) || eta_hom > 1.0) throw std::invalid_argument("homodyne efficiency must lie in (0, 1]");
    return 1.0 + (measured_variance - 1.0) / eta_hom;
}

struct MetricsReport {
    double fidelity = 0.0;
    Gains gains{0.0, 0.0};
    double gain_product = 0.0;
    SignalTransfer transfer{0.0, 0.0};
    double signal_transfer = 0.0;
    ConditionalVariance cond_plus, cond_minus;
    double noise_product = 0.0;
    bool exceeds_classical_fidelity = false;
    bool outside_classical_region = false;  // T above or V below the classical limits
};

inline MetricsReport evaluate(const AxisRegistry& reg, const Mode& secret, const Mode& out,
                              const ClassicalBounds& limits) {
    MetricsReport r;
    r.fidelity = fidelity(reg, secret, out);
    r.gains = optical_gains(reg, secret, out);
    r.gain_product = r.gains.product();
    r.transfer = signal_transfer(reg, secret, out);
    r.signal_transfer = r.transfer.total();
    r.cond_plus = conditional_variance(reg, secret, out, Quadrature::plus);
    r.cond_minus = conditional_variance(reg, secret, out, Quadrature::minus);
    r.noise_product = r.cond_plus.coherent_form * r.cond_minus.coherent_form;
    r.exceeds_classical_fidelity = r.fidelity > limits.fidelity_max;
    r.outside_classical_region =
        r.signal_transfer > limits.signal_transfer_max || r.noise_product < limits.noise_product_min;
    return r;
}

}  // namespace cvqss
