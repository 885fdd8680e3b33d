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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>


#include "cvqss/harness/experiment.hpp"

namespace cvqss::harness {

/// Duan value of the dealer's EPR pair after loss eta on both beams. The
/// matching sum and difference quadratures each carry one squeezed input.
inline double epr_duan(double v_sq, double /*v_anti*/, double eta = 1.0) { return eta * v_sq + 1.0 - eta; }

/// Reid value of the same pair: product of the two conditional variances.
inline double epr_reid(double v_sq, double v_anti, double eta = 1.0) {
    const double v = eta * (v_sq + v_anti) / 2.0 + 1.0 - eta;
    const double c = eta * (v_anti - v_sq) / 2.0;
    const double cond = v - c * c / v;
    return cond * cond;
}

/// Loss on both EPR beams that brings the Duan value to `target`. Empty when
/// the target lies outside [Duan(eta = 1), 1].
inline std::optional<double> fit_epr_loss(double v_sq, double /*v_anti*/, double target) {
    if (!(v_sq < 1.0) || target < v_sq || target > 1.0) return std::nullopt;
    return (1.0 - target) / (1.0 - v_sq);
}

struct SummaryEntry {
    std::string quantity;
    double value = 0.0;
};

struct SummaryResult {
    std::vector<SummaryEntry> entries;
    double oracle_max_z = kNaN;
    std::string oracle_worst;
    std::size_t classical_violations = 0;

    double at(const std::string& q) const {
        for (const auto& e : entries)
            if (e.quantity == q) return e.value;
        throw std::out_of_range("no summary entry '" + q + "'");
    }
};

inline constexpr double kMeasuredDuan = 0.44;

/// Headline numbers of the (2,3) scheme for one dealer and optics setting:
/// {1,2} via Mach-Zehnder, {2,3} via single feed-forward (unity gain after the
/// parametric correction, plus best T and lowest V over the gain sweep),
/// adversary {1} and {3}, and the EPR criteria.
inline SummaryResult run_summary(const ExperimentConfig& base) {
    SummaryResult out;
    auto add = [&](std::string q, double v) { out.entries.push_back({std::move(q), v}); };
    auto track = [&](const SweepRow& r) {
        if (!std::isnan(r.oracle_max_z) && (std::isnan(out.oracle_max_z) || r.oracle_max_z > out.oracle_max_z)) {
            out.oracle_max_z = r.oracle_max_z;
            out.oracle_worst = r.oracle_worst;
        }
        if (r.classical_dealer && exceeds_classical(r).any()) ++out.classical_violations;
    };
    auto with = [&](Protocol p) {
        ExperimentConfig c = base;
        c.protocol = p;
        c.sweep.clear();
        return c;
    };
    const GridPoint here{kNaN, base.dealer.v_noise, kNaN, kNaN};

    auto c12 = with(Protocol::mz);
    c12.gain.reset();
    const auto r12 = evaluate_point(c12, here, 0);
    track(r12);

    auto c23 = with(Protocol::single_ff);
    c23.gain.reset();
    const auto r23 = evaluate_point(c23, here, 1);
    track(r23);
    if (!r23.reachable) throw ConfigError("single feed-forward cannot reach unity gain with these settings");

    // Best signal transfer and lowest added noise over the electronic gain at fixed R.
    auto sweep_cfg = c23;
    Range gains{0.0, 2.0 * r23.point.gain, 81, {}};
    if (auto it = base.sweep.find(SweepAxis::gain); it != base.sweep.end()) gains = it->second;
    sweep_cfg.sweep[SweepAxis::gain] = gains;
    sweep_cfg.oracle = false;
    const auto swept = run_sweep(sweep_cfg);
    for (const auto& r : swept.rows) track(r);

    auto c1 = with(Protocol::adversary_1);
    c1.gain.reset();
    const auto r1 = evaluate_point(c1, here, 2);
    track(r1);
    c1.gain = std::sqrt(2.0);
    const auto r1amp = evaluate_point(c1, here, 3);
    track(r1amp);
    const auto r3 = evaluate_point(with(Protocol::adversary_3), here, 4);
    track(r3);

    add("F_12", r12.F_raw);
    add("g_product_12", r12.g_product);
    add("T_12", r12.T);
    add("V_12", r12.V);
    add("F_23", r23.F_sym);
    add("g_product_23", r23.g_product);
    add("G_unity_23", r23.point.gain);
    add("T_23_unity", r23.T);
    add("V_23_unity", r23.V);
    add("T_23", swept.rows[*swept.summary.best_T].T);
    add("V_23", swept.rows[*swept.summary.min_V].V);
    add("F_avg", (r12.F_raw + 2.0 * r23.F_sym) / 3.0);
    add("F_avg_classical", classical_avg_fidelity(2, 3));
    add("F_1", r1.F_raw);
    add("F_1_amp", r1amp.F_raw);
    add("T_1", r1.T);
    add("V_1", r1.V);
    add("F_3", r3.F_unity);
    add("T_3", r3.T);
    const double v_sq = base.dealer.v_sq, v_anti = base.dealer.v_anti;
    add("duan", epr_duan(v_sq, v_anti));
    add("reid", epr_reid(v_sq, v_anti));
    const auto eta = fit_epr_loss(v_sq, v_anti, kMeasuredDuan);
    add("eta_fit_duan_0.44", eta.value_or(kNaN));
    add("reid_at_fit", eta ? epr_reid(v_sq, v_anti, *eta) : kNaN);
    return out;
}

}  // namespace cvqss::harness
